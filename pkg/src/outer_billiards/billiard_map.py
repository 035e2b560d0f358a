"""The outer billiard map T, its inverse, and orbit iteration.

A point M outside the curve is sent to 2 gamma(s) - M, where gamma(s) is the
point of tangency of the forward tangent line from M.  Coordinates (t, lambda)
with M = gamma(t) + lambda gamma'(t) use the backward tangency t; the same
point is gamma(s) - mu gamma'(s) from the forward side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import _backend
from .curve import CurveParams, Point2, bracket, curvature_bracket, derivative, evaluate
from .errors import InteriorPoint, NoConvergence, OnCurve, ParallelTangents

PARALLEL_TOL = 1e-12
DEFAULT_ESCAPE_RADIUS = 100.0


@dataclass(frozen=True)
class TangencySolverConfig:
    scan_samples: int = 256
    root_tol: float = 1e-13
    max_refine_iters: int = 100

    def __post_init__(self):
        if self.scan_samples < 64:
            raise ValueError("scan_samples must be >= 64")
        if not self.root_tol > 0:
            raise ValueError("root_tol must be positive")
        if self.max_refine_iters < 1:
            raise ValueError("max_refine_iters must be >= 1")


DEFAULT_CONFIG = TangencySolverConfig()


class TangencyPair(NamedTuple):
    t_back: float
    s_fwd: float


@dataclass
class Orbit:
    """Iterates T(M0), T^2(M0), ... stored as rows of ``points``.

    ``tangencies[k]`` is the forward tangency parameter used to produce
    ``points[k]``.  An escaped orbit keeps only the points inside the escape
    radius; ``escape_index`` is the number of steps taken before escaping.
    ``error`` carries a solver failure message when a batch run caught one.
    """

    initial: Point2
    points: np.ndarray
    escaped: bool = False
    escape_index: Optional[int] = None
    tangencies: np.ndarray = field(default_factory=lambda: np.empty(0))
    error: Optional[str] = None

    def __len__(self):
        return len(self.points)


def _status_error(status: int, M) -> Exception:
    k = _backend.kernel
    where = f"at ({M[0]:.17g}, {M[1]:.17g})"
    if status == k.INTERIOR:
        return InteriorPoint(f"point {where} is inside the curve")
    if status == k.ON_CURVE:
        return OnCurve(f"point {where} lies on the curve (double tangency)")
    return NoConvergence(f"tangency refinement failed {where}")


def tangency_params(params: CurveParams, M, cfg: TangencySolverConfig = DEFAULT_CONFIG) -> TangencyPair:
    """Backward and forward tangency parameters of the tangent lines from M."""
    mx, my = float(M[0]), float(M[1])
    status, t_back, s_fwd = _backend.kernel.tangency(
        params.n, params.eps, mx, my, cfg.scan_samples, cfg.root_tol, cfg.max_refine_iters
    )
    if status != 0:
        raise _status_error(status, (mx, my))
    return TangencyPair(t_back, s_fwd)


def tangency_residual(params: CurveParams, M, s):
    """f(s) = [gamma'(s), M - gamma(s)]; zero exactly at the tangencies."""
    M = np.asarray(M, dtype=float)
    g = evaluate(params, s)
    d = M.reshape((2,) + (1,) * (g.ndim - 1)) - g
    return bracket(derivative(params, s, 1), d)


def step(params: CurveParams, M, cfg: TangencySolverConfig = DEFAULT_CONFIG) -> np.ndarray:
    """T(M) = 2 gamma(s_fwd) - M."""
    s = tangency_params(params, M, cfg).s_fwd
    return 2.0 * evaluate(params, s) - np.asarray(M, dtype=float)


def step_inverse(params: CurveParams, M, cfg: TangencySolverConfig = DEFAULT_CONFIG) -> np.ndarray:
    """T^{-1}(M) = 2 gamma(t_back) - M."""
    t = tangency_params(params, M, cfg).t_back
    return 2.0 * evaluate(params, t) - np.asarray(M, dtype=float)


def lambda_mu(params: CurveParams, t, s):
    """Tangent lengths (lambda, mu) of M = gamma(t) + lambda gamma'(t) = gamma(s) - mu gamma'(s)."""
    gt, gs = evaluate(params, t), evaluate(params, s)
    dt, ds = derivative(params, t, 1), derivative(params, s, 1)
    den = bracket(dt, ds)
    if np.any(np.abs(den) < PARALLEL_TOL):
        raise ParallelTangents("tangent lines at t and s are parallel")
    lam = bracket(gs - gt, ds) / den
    mu = bracket(gt - gs, dt) / den
    return lam, mu


def symplectic_p(params: CurveParams, t, lam):
    """Momentum p = [gamma', gamma''] lambda^2 / 2 conjugate to t."""
    if np.any(np.asarray(lam) <= 0):
        raise ValueError("lambda must be positive")
    return curvature_bracket(params, t) * np.square(lam) / 2.0


def jacobian(params: CurveParams, M, cfg: TangencySolverConfig = DEFAULT_CONFIG, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of T at M."""
    if not h > 0:
        raise ValueError("finite-difference step h must be positive")
    M = np.asarray(M, dtype=float)
    J = np.empty((2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = h
        J[:, j] = (step(params, M + e, cfg) - step(params, M - e, cfg)) / (2.0 * h)
    return J


def jacobian_det(params: CurveParams, M, cfg: TangencySolverConfig = DEFAULT_CONFIG, h: float = 1e-6) -> float:
    return float(np.linalg.det(jacobian(params, M, cfg, h)))


def orbit(
    params: CurveParams,
    M0,
    n_iters: int,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
    cfg: TangencySolverConfig = DEFAULT_CONFIG,
) -> Orbit:
    """Iterate T from M0; solver failures raise."""
    if n_iters < 0:
        raise ValueError("n_iters must be >= 0")
    x0, y0 = float(M0[0]), float(M0[1])
    k = _backend.kernel
    xy = np.empty((max(n_iters, 1), 2))
    s = np.empty(max(n_iters, 1))
    if n_iters == 0:
        tangency_params(params, (x0, y0), cfg)
        count, status = 0, k.OK
    else:
        count, status = k.iterate(
            params.n, params.eps, x0, y0, n_iters, escape_radius,
            cfg.scan_samples, cfg.root_tol, cfg.max_refine_iters, xy, s,
        )
    if status not in (k.OK, k.ESCAPED):
        at = (x0, y0) if count == 0 else tuple(xy[count - 1])
        raise _status_error(status, at)
    escaped = status == k.ESCAPED
    return Orbit(
        initial=Point2(x0, y0),
        points=xy[:count].copy(),
        escaped=escaped,
        escape_index=count if escaped else None,
        tangencies=s[:count].copy(),
    )


def mu_along_orbit(params: CurveParams, orb: Orbit) -> np.ndarray:
    """mu of every point that was stepped: the initial point and all but the last iterate."""
    if len(orb) == 0:
        return np.empty(0)
    pre = np.vstack([np.asarray(orb.initial, dtype=float)[None, :], orb.points[:-1]])
    s = orb.tangencies
    g = evaluate(params, s).T
    d = derivative(params, s, 1).T
    return np.linalg.norm(g - pre, axis=1) / np.linalg.norm(d, axis=1)


def circle_rotation_angle(radius: float) -> float:
    """Rotation angle 2 arccos(1/R) of T on the circle of radius R around the unit circle."""
    return 2.0 * math.acos(1.0 / radius)
