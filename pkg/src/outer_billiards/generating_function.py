"""Generating function S(t, s) of T and its partial derivatives.

S is the area of the convex hull of the curve and the intersection point
M(t, s) of the tangent lines at t and s.  The production path uses closed
forms for the derivatives only; :func:`cap_area` evaluates S itself and is
kept as an independent check of signs and factors.

Parameters are lifted: s = t + u with u in (0, 2 pi).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .billiard_map import PARALLEL_TOL
from .curve import (
    CurveParams,
    bracket,
    curvature_bracket,
    curvature_bracket_derivative,
    derivative,
    evaluate,
)
from .errors import ParallelTangents


@dataclass(frozen=True)
class SecondDerivs:
    s11: np.ndarray
    s12: np.ndarray
    s22: np.ndarray

    @property
    def integrand_factor(self):
        """S11 + 2 S12 + S22."""
        return self.s11 + 2.0 * self.s12 + self.s22


class _Geometry:
    """Brackets shared by the first- and second-derivative formulas."""

    def __init__(self, params: CurveParams, t, s):
        t = np.asarray(t, dtype=float)
        s = np.asarray(s, dtype=float)
        self.gt, self.gs = evaluate(params, t), evaluate(params, s)
        self.g1t, self.g1s = derivative(params, t, 1), derivative(params, s, 1)
        self.g2t, self.g2s = derivative(params, t, 2), derivative(params, s, 2)
        self.d = self.gs - self.gt
        self.B = bracket(self.g1t, self.g1s)
        if np.any(np.abs(self.B) < PARALLEL_TOL):
            raise ParallelTangents("tangent lines at t and s are parallel")
        self.A = bracket(self.d, self.g1s)
        self.C = bracket(self.g1t, self.d)  # = [gamma(t) - gamma(s), gamma'(t)]
        self.lam = self.A / self.B
        self.mu = self.C / self.B
        self.P = curvature_bracket(params, t)
        self.Q = curvature_bracket(params, s)
        self.dP = curvature_bracket_derivative(params, t)
        self.dQ = curvature_bracket_derivative(params, s)

    def lambda_partials(self):
        B2 = self.B * self.B
        lam_t = (-self.B * self.B - self.A * bracket(self.g2t, self.g1s)) / B2
        lam_s = (bracket(self.d, self.g2s) * self.B - self.A * bracket(self.g1t, self.g2s)) / B2
        return lam_t, lam_s

    def mu_partials(self):
        B2 = self.B * self.B
        # C = [gamma'(t), gamma(s) - gamma(t)]
        mu_t = (bracket(self.g2t, self.d) * self.B - self.C * bracket(self.g2t, self.g1s)) / B2
        mu_s = (self.B * self.B - self.C * bracket(self.g1t, self.g2s)) / B2
        return mu_t, mu_s


def first_derivs(params: CurveParams, t, s):
    """(S_1, S_2) = (-[g'(t), g''(t)] lambda^2 / 2, [g'(s), g''(s)] mu^2 / 2)."""
    g = _Geometry(params, t, s)
    return -g.P * g.lam**2 / 2.0, g.Q * g.mu**2 / 2.0


def second_derivs(params: CurveParams, t, s) -> SecondDerivs:
    g = _Geometry(params, t, s)
    lam_t, lam_s = g.lambda_partials()
    _, mu_s = g.mu_partials()
    s11 = -g.dP * g.lam**2 / 2.0 - g.P * g.lam * lam_t
    s12 = -g.P * g.lam * lam_s
    s22 = g.dQ * g.mu**2 / 2.0 + g.Q * g.mu * mu_s
    return SecondDerivs(s11, s12, s22)


def mixed_partial_routes(params: CurveParams, t, s):
    """S12 computed as d/ds of S_1 and as d/dt of S_2; equal for a true generating function."""
    g = _Geometry(params, t, s)
    _, lam_s = g.lambda_partials()
    mu_t, _ = g.mu_partials()
    return -g.P * g.lam * lam_s, g.Q * g.mu * mu_t


def cap_area(params: CurveParams, t: float, s: float, arc_quad_points: int = 2048) -> float:
    """S(t, s) by Green's formula: Area(gamma) plus the cap cut off by the two tangents."""
    g = _Geometry(params, t, s)
    M = g.gt + g.lam * g.g1t
    m = arc_quad_points + (arc_quad_points % 2)
    u = np.linspace(s, t, m + 1)
    integrand = 0.5 * bracket(evaluate(params, u), derivative(params, u, 1))
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    arc = float(w @ integrand) * (t - s) / (3.0 * m)
    triangle = 0.5 * (bracket(g.gt, M) + bracket(M, g.gs))
    return params.area + float(triangle) + arc


@dataclass(frozen=True)
class TwistReport:
    max_s12: float
    points: int

    @property
    def passed(self) -> bool:
        return self.max_s12 < 0.0


def twist_check(params: CurveParams, x1, x2, grid: int | tuple[int, int] = (256, 64)) -> TwistReport:
    """Largest S12 on a grid over {t in [0, 2pi), s - t in [2 x1, 2 x2]}."""
    x1 = getattr(x1, "x", x1)
    x2 = getattr(x2, "x", x2)
    if not x1 < x2:
        raise ValueError("need x1 < x2")
    nt, nu = (grid, grid) if isinstance(grid, int) else grid
    t = np.linspace(0.0, 2 * np.pi, nt, endpoint=False)
    u = np.linspace(2 * x1, 2 * x2, nu) if nu > 1 else np.array([2 * x1])
    T, U = np.meshgrid(t, u, indexing="ij")
    d = second_derivs(params, T, T + U)
    return TwistReport(float(np.max(d.s12)), int(T.size))
