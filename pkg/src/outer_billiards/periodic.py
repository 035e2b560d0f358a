"""Symmetry-constructed periodic points E_k, H_k and their stability.

The curve has the dihedral symmetry of order n - 1.  Tangent lines at the
farthest points t_k = 2 pi k / (n - 1) and at the nearest points
s_k = pi / (n - 1) + 2 pi k / (n - 1), taken two apart, meet at periodic points
of T: E_k (elliptic) and H_k (hyperbolic).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .billiard_map import DEFAULT_CONFIG, TangencySolverConfig, jacobian, step
from .curve import CurveParams, Point2, derivative, evaluate
from .errors import ParallelTangents

PARABOLIC_BAND = 1e-6


class Stability(enum.Enum):
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC = "Parabolic"


@dataclass(frozen=True)
class PeriodicOrbitReport:
    seed_point: Point2
    detected_period: int
    orbit_points: np.ndarray
    monodromy: np.ndarray
    classification: Stability

    @property
    def monodromy_trace(self) -> float:
        return float(np.trace(self.monodromy))

    @property
    def monodromy_det(self) -> float:
        return float(np.linalg.det(self.monodromy))


def symmetry_points(params: CurveParams):
    """Parameters (t_k, s_k), k = 0..n-2, of the farthest and nearest curve points."""
    n = params.n
    if n < 3:
        raise ValueError("symmetry points need n >= 3")
    k = np.arange(n - 1)
    t = 2 * math.pi * k / (n - 1)
    return t, t + math.pi / (n - 1)


def tangent_intersection(params: CurveParams, t1: float, t2: float) -> Point2:
    """Intersection of the tangent lines to the curve at t1 and t2."""
    d1 = derivative(params, t1, 1)
    d2 = derivative(params, t2, 1)
    A = np.column_stack([d1, -d2])
    if abs(np.linalg.det(A)) < 1e-12:
        raise ParallelTangents(f"tangents at {t1} and {t2} are parallel")
    g1 = evaluate(params, t1)
    a, _ = np.linalg.solve(A, evaluate(params, t2) - g1)
    p = g1 + a * d1
    return Point2(float(p[0]), float(p[1]))


def elliptic_hyperbolic_seeds(params: CurveParams):
    """Lists (E_k, H_k) of tangent intersections at symmetry points two steps apart."""
    t, s = symmetry_points(params)
    m = len(t)
    E = [tangent_intersection(params, t[k], t[(k + 2) % m] + (2 * math.pi if k + 2 >= m else 0.0)) for k in range(m)]
    H = [tangent_intersection(params, s[k], s[(k + 2) % m] + (2 * math.pi if k + 2 >= m else 0.0)) for k in range(m)]
    return E, H


def detect_period(
    params: CurveParams,
    M,
    max_period: int = 50,
    tol: float = 1e-8,
    cfg: TangencySolverConfig = DEFAULT_CONFIG,
) -> Optional[int]:
    """Smallest p <= max_period with |T^p(M) - M| < tol, else None."""
    M = np.asarray(M, dtype=float)
    P = M
    for p in range(1, max_period + 1):
        P = step(params, P, cfg)
        if np.hypot(*(P - M)) < tol:
            return p
    return None


def classify_trace(trace: float, band: float = PARABOLIC_BAND) -> Stability:
    if abs(trace) < 2.0 - band:
        return Stability.ELLIPTIC
    if abs(trace) > 2.0 + band:
        return Stability.HYPERBOLIC
    return Stability.PARABOLIC


def classify(
    params: CurveParams,
    M,
    period: int,
    h: float = 1e-6,
    cfg: TangencySolverConfig = DEFAULT_CONFIG,
) -> PeriodicOrbitReport:
    """Monodromy of the period-``period`` orbit through M, built from central-difference Jacobians."""
    M = np.asarray(M, dtype=float)
    pts = [M]
    mono = np.eye(2)
    P = M
    for _ in range(period):
        mono = jacobian(params, P, cfg, h) @ mono
        P = step(params, P, cfg)
        pts.append(P)
    return PeriodicOrbitReport(
        seed_point=Point2(float(M[0]), float(M[1])),
        detected_period=period,
        orbit_points=np.array(pts[:-1]),
        monodromy=mono,
        classification=classify_trace(float(np.trace(mono))),
    )


def separation_exponent(
    params: CurveParams,
    M,
    delta0: float = 1e-8,
    n_iters: int = 10_000,
    cfg: TangencySolverConfig = DEFAULT_CONFIG,
) -> float:
    """Mean log stretch per step of a renormalised separation between two nearby orbits."""
    if not delta0 > 0:
        raise ValueError("delta0 must be positive")
    x = np.asarray(M, dtype=float)
    y = x + np.array([delta0, 0.0])
    total = 0.0
    for _ in range(n_iters):
        x = step(params, x, cfg)
        y = step(params, y, cfg)
        d = y - x
        dist = float(np.hypot(*d))
        total += math.log(dist / delta0)
        y = x + d * (delta0 / dist)
    return total / n_iters
