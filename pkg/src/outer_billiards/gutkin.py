"""Roots of tan(nx) = n tan(x) and the invariant curves they produce.

For a root x in (0, pi/2) the offset curve gamma_r with r = tan x is invariant
and T acts on it as the shift t -> t + 2x.  This module finds the roots and
checks that claim, and the underlying trigonometric identity, numerically.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .billiard_map import DEFAULT_CONFIG, TangencySolverConfig, lambda_mu, tangency_params
from .curve import CurveParams, bracket, derivative, evaluate, offset_point

log = logging.getLogger(__name__)

SCAN_SAMPLES = 100_000
EDGE = 1e-9
# F has a triple zero at the origin, F ~ n (1 - n^2) x^3 / 3; brackets this
# close to 0 come from rounding noise, not from genuine roots.
ORIGIN_EXCLUSION = 1e-6
GRAZING_SLOPE = 1e-8


@dataclass(frozen=True)
class GutkinRoot:
    x: float

    @property
    def r(self) -> float:
        return math.tan(self.x)

    @property
    def shift(self) -> float:
        return 2.0 * self.x


def gutkin_residual(n: int, x):
    """F(x) = n tan x cos nx - sin nx; on (0, pi/2) its zeros are the roots of tan nx = n tan x."""
    x = np.asarray(x, dtype=float)
    return n * np.tan(x) * np.cos(n * x) - np.sin(n * x)


def _gutkin_slope(n: int, x):
    return n / np.cos(x) ** 2 * np.cos(n * x) - n * n * np.tan(x) * np.sin(n * x) - n * np.cos(n * x)


def solve_gutkin(n: int, tol: float = 1e-12, samples: int = SCAN_SAMPLES) -> list[GutkinRoot]:
    """All roots of tan(nx) = n tan(x) in (0, pi/2), ascending."""
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    xs = np.linspace(EDGE, math.pi / 2 - EDGE, samples)
    fs = gutkin_residual(n, xs)
    idx = np.nonzero(np.signbit(fs[:-1]) != np.signbit(fs[1:]))[0]
    a, b = xs[idx], xs[idx + 1]
    fa = fs[idx]
    # vectorised bisection down to adjacent floats
    for _ in range(80):
        mid = 0.5 * (a + b)
        fm = gutkin_residual(n, mid)
        left = np.signbit(fm) == np.signbit(fa)
        a = np.where(left, mid, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, mid)
    fa_abs = np.abs(gutkin_residual(n, a))
    fb_abs = np.abs(gutkin_residual(n, b))
    best = np.where(fa_abs <= fb_abs, a, b)

    roots = []
    for x in best[best > ORIGIN_EXCLUSION]:
        res = abs(float(gutkin_residual(n, x)))
        if res >= tol:
            log.warning("root %.17g of n=%d has residual %.3g above tol %.3g", x, n, res, tol)
            continue
        if abs(float(_gutkin_slope(n, x))) < GRAZING_SLOPE:
            log.warning("root %.17g of n=%d looks grazing (|F'| < %g)", x, n, GRAZING_SLOPE)
        roots.append(GutkinRoot(float(x)))
    return roots


@dataclass(frozen=True)
class InvariantCurveReport:
    max_position_error: float
    max_mu_deviation: float

    def passed(self, tol: float) -> bool:
        return self.max_position_error < tol and self.max_mu_deviation < tol


def verify_invariant_curve(
    params: CurveParams,
    root: GutkinRoot | float,
    samples: int = 1000,
    cfg: TangencySolverConfig = DEFAULT_CONFIG,
) -> InvariantCurveReport:
    """Compare T(gamma_r(t)) with gamma_r(t + 2x) on a uniform t-grid.

    Also measures mu at each sample from the solved forward tangency; on an
    invariant offset curve it must equal r.
    """
    if not params.convex:
        raise ValueError("invariant-curve verification needs a convex curve")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    x = root.x if isinstance(root, GutkinRoot) else float(root)
    r = math.tan(x)
    ts = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    pos_err = 0.0
    mu_err = 0.0
    for t in ts:
        M = offset_point(params, t, r)
        pair = tangency_params(params, M, cfg)
        image = 2.0 * evaluate(params, pair.s_fwd) - M
        expected = offset_point(params, t + 2 * x, r)
        pos_err = max(pos_err, float(np.hypot(*(image - expected))))
        _, mu = lambda_mu(params, pair.t_back, pair.s_fwd)
        mu_err = max(mu_err, abs(float(mu) - r))
    return InvariantCurveReport(pos_err, mu_err)


def identity_residual(params: CurveParams, x, t):
    """P1 + P2 tan x with s = t + 2x, P1 = [gamma(t) - gamma(s), gamma'(s)], P2 = [gamma'(t), gamma'(s)]."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    s = t + 2 * x
    ds = derivative(params, s, 1)
    p1 = bracket(evaluate(params, t) - evaluate(params, s), ds)
    p2 = bracket(derivative(params, t, 1), ds)
    return p1 + p2 * np.tan(x)


def identity_eps_coefficients(n: int, x, t, h: float = 0.1):
    """Coefficients (c0, c1, c2) of the residual as a quadratic polynomial in eps.

    Each determinant entry is affine in eps, so three samples at eps = 0, h, 2h
    determine the polynomial exactly.
    """
    eps_nodes = np.array([0.0, h, 2 * h])
    vals = np.stack([identity_residual(CurveParams(n, e, strict=False), x, t) for e in eps_nodes])
    vander = np.vander(eps_nodes, 3, increasing=True)
    coeffs = np.linalg.solve(vander, vals.reshape(3, -1)).reshape(vals.shape)
    return coeffs[0], coeffs[1], coeffs[2]
