"""The curve family gamma(t) = (cos t, sin t) + eps (cos nt, sin nt).

All evaluators are vectorised: ``t`` may be a scalar or an array and the
result has shape ``(2,) + np.shape(t)``, so ``x, y = evaluate(p, t)`` works
for both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NonConvexCurve

TWO_PI = 2.0 * math.pi


class Point2(NamedTuple):
    x: float
    y: float


def convexity_margin(n: int, eps: float) -> float:
    """Minimum over t of [gamma', gamma''] (attained where cos((n-1)t) = -1).

    Equals (1 - n eps)(1 - n^2 eps).
    """
    return 1.0 + eps * eps * n**3 - eps * n * (n + 1)


@dataclass(frozen=True)
class CurveParams:
    """Harmonic index ``n`` and amplitude ``eps`` of the curve.

    Construction rejects nonconvex parameters unless ``strict=False``; the
    lenient form exists so that :func:`is_convex` can be asked about any pair.
    """

    n: int
    eps: float
    strict: bool = True

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if not (self.eps >= 0.0 and math.isfinite(self.eps)):
            raise ValueError(f"eps must be finite and >= 0, got {self.eps!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "eps", float(self.eps))
        if self.strict and not self.convex:
            raise NonConvexCurve(
                f"curve with n={self.n}, eps={self.eps} is not strictly convex "
                f"(margin {self.margin:.6g})"
            )

    @property
    def margin(self) -> float:
        return convexity_margin(self.n, self.eps)

    @property
    def convex(self) -> bool:
        # A positive margin alone also holds for eps > 1/n, where the tangent
        # turns n times and the curve is only locally convex.
        return self.margin > 0.0 and self.n * self.eps < 1.0

    @property
    def area(self) -> float:
        """Enclosed area, pi (1 + eps^2 n) by Green's theorem."""
        return math.pi * (1.0 + self.eps**2 * self.n)


# k-th derivatives of cos and sin as callables, k = 0..3
_DCOS = (np.cos, lambda u: -np.sin(u), lambda u: -np.cos(u), np.sin)
_DSIN = (np.sin, np.cos, lambda u: -np.sin(u), lambda u: -np.cos(u))


def _jet(params: CurveParams, t, order: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    n, eps = params.n, params.eps
    scale = eps * float(n) ** order
    nt = n * t
    return np.stack(
        [_DCOS[order](t) + scale * _DCOS[order](nt), _DSIN[order](t) + scale * _DSIN[order](nt)]
    )


def evaluate(params: CurveParams, t) -> np.ndarray:
    """gamma(t)."""
    return _jet(params, t, 0)


def derivative(params: CurveParams, t, order: int = 1) -> np.ndarray:
    """Analytic derivative of gamma of the given order (1, 2 or 3)."""
    if order not in (1, 2, 3):
        raise ValueError(f"unsupported derivative order {order!r}; expected 1, 2 or 3")
    return _jet(params, t, order)


def bracket(a, b):
    """Determinant [a, b] = a.x b.y - a.y b.x (broadcasts over trailing axes)."""
    return a[0] * b[1] - a[1] * b[0]


def curvature_bracket(params: CurveParams, t):
    """[gamma'(t), gamma''(t)] = 1 + eps^2 n^3 + eps n (n+1) cos((n-1) t)."""
    n, eps = params.n, params.eps
    return 1.0 + eps * eps * n**3 + eps * n * (n + 1) * np.cos((n - 1) * np.asarray(t, dtype=float))


def curvature_bracket_derivative(params: CurveParams, t):
    """d/dt of :func:`curvature_bracket`, equal to [gamma', gamma''']."""
    n, eps = params.n, params.eps
    return -eps * n * (n + 1) * (n - 1) * np.sin((n - 1) * np.asarray(t, dtype=float))


def is_convex(params: CurveParams) -> bool:
    return params.convex


def offset_point(params: CurveParams, t, r) -> np.ndarray:
    """gamma_r(t) = gamma(t) + r gamma'(t), the candidate invariant curve."""
    if np.any(np.asarray(r) <= 0):
        raise ValueError("offset r must be positive")
    return evaluate(params, t) + r * derivative(params, t, 1)
