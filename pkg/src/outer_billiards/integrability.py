"""Total-integrability test integral over the annulus between two invariant curves.

In (t, s) coordinates the annulus is Pi = {t in [0, 2pi], s - t in [2 x1, 2 x2]}
and the area form is -S12 dt ds.  A totally integrable map would satisfy

    I = integral over Pi of (S11 + 2 S12 + S22) S12 dt ds <= 0,

so a positive I rules total integrability out.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .curve import CurveParams
from .errors import InvalidAnnulus
from .generating_function import second_derivs


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    t_nodes: int
    u_nodes: int


class Verdict(enum.Enum):
    NOT_TOTALLY_INTEGRABLE = "NotTotallyIntegrable"
    INCONCLUSIVE = "Inconclusive"


def _roots(x1, x2):
    x1 = float(getattr(x1, "x", x1))
    x2 = float(getattr(x2, "x", x2))
    if not x1 < x2:
        raise InvalidAnnulus(f"need x1 < x2, got {x1} and {x2}")
    if not (0.0 < x1 and x2 < math.pi / 2):
        raise InvalidAnnulus("roots must lie in (0, pi/2)")
    return x1, x2


def _integrate(params, x1, x2, t_nodes, u_nodes, form):
    # periodic trapezoid in t, Gauss-Legendre in u = s - t
    t = 2.0 * math.pi * np.arange(t_nodes) / t_nodes
    xg, wg = np.polynomial.legendre.leggauss(u_nodes)
    u = (x1 + x2) + (x2 - x1) * xg
    w = wg * (x2 - x1)
    T, U = np.meshgrid(t, u, indexing="ij")
    d = second_derivs(params, T, T + U)
    if form == "test":
        f = d.integrand_factor * d.s12
    else:
        f = d.integrand_factor * (-d.s12)
    rows = (f * w).sum(axis=1)
    return math.fsum(rows) * (2.0 * math.pi / t_nodes)


def integrability_integral(
    params: CurveParams, x1, x2, t_nodes: int = 256, u_nodes: int = 64
) -> QuadratureResult:
    """I = integral of (S11 + 2 S12 + S22) S12 dt ds over the annulus.

    ``error_estimate`` is the change against the same rule with half the nodes.
    """
    x1, x2 = _roots(x1, x2)
    if t_nodes < 8 or u_nodes < 8:
        raise ValueError("need at least 8 nodes in each direction")
    value = _integrate(params, x1, x2, t_nodes, u_nodes, "test")
    coarse = _integrate(params, x1, x2, t_nodes // 2, u_nodes // 2, "test")
    return QuadratureResult(value, abs(value - coarse), t_nodes, u_nodes)


def area_form_integral(params: CurveParams, x1, x2, t_nodes: int = 256, u_nodes: int = 64) -> float:
    """Integral of (S11 + 2 S12 + S22) d(Area) with d(Area) = -S12 dt ds; equals -I."""
    x1, x2 = _roots(x1, x2)
    return _integrate(params, x1, x2, t_nodes, u_nodes, "area")


def verdict(result: QuadratureResult, margin: float = 0.0) -> Verdict:
    """Positive I beyond its error estimate contradicts total integrability; nothing else is decided."""
    if result.value - result.error_estimate > margin:
        return Verdict.NOT_TOTALLY_INTEGRABLE
    return Verdict.INCONCLUSIVE
