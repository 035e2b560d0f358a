"""Batch orbit generation, rasterisation and CSV / PPM export."""
from __future__ import annotations

import colorsys
import csv
import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .billiard_map import (
    DEFAULT_CONFIG,
    DEFAULT_ESCAPE_RADIUS,
    Orbit,
    TangencySolverConfig,
    _status_error,
)
from .curve import CurveParams, Point2, offset_point

GOLDEN_ANGLE_TURNS = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class Window:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"degenerate window {self}")

    @classmethod
    def around(cls, center, half_width: float, half_height: Optional[float] = None) -> "Window":
        hh = half_width if half_height is None else half_height
        cx, cy = center
        return cls(cx - half_width, cy - hh, cx + half_width, cy + hh)


class RasterMode(enum.Enum):
    DENSITY = "density"
    PER_ORBIT_COLOR = "color"


@dataclass(frozen=True)
class RasterConfig:
    width: int = 2000
    height: int = 2000
    mode: RasterMode = RasterMode.DENSITY

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("raster dimensions must be >= 1")


def sample_initial_points(
    params: CurveParams, count: int, lambda_min: float = 0.3, lambda_max: float = 2.0, seed: int = 0
) -> list[Point2]:
    """Seeds gamma(t) + lambda gamma'(t), t ~ U[0, 2pi), lambda ~ U[lambda_min, lambda_max].

    Each index draws from its own stream keyed by (seed, index), so a seed's
    point does not depend on how many others are drawn or in which order.
    """
    if not 0 < lambda_min < lambda_max:
        raise ValueError("need 0 < lambda_min < lambda_max")
    if count < 0:
        raise ValueError("count must be >= 0")
    out = []
    for i in range(count):
        u = np.random.default_rng([seed, i]).random(2)
        t = 2 * math.pi * u[0]
        lam = lambda_min + (lambda_max - lambda_min) * u[1]
        p = offset_point(params, t, lam)
        out.append(Point2(float(p[0]), float(p[1])))
    return out


def _run_one(params, seed, n_iters, escape_radius, cfg) -> Orbit:
    k = _backend.kernel
    x0, y0 = float(seed[0]), float(seed[1])
    size = max(n_iters, 1)
    xy = np.empty((size, 2))
    s = np.empty(size)
    count, status = k.iterate(
        params.n, params.eps, x0, y0, n_iters, escape_radius,
        cfg.scan_samples, cfg.root_tol, cfg.max_refine_iters, xy, s,
    )
    error = None
    if status not in (k.OK, k.ESCAPED):
        error = str(_status_error(status, (x0, y0) if count == 0 else xy[count - 1]))
    escaped = status == k.ESCAPED
    return Orbit(
        initial=Point2(x0, y0),
        points=xy[:count].copy(),
        escaped=escaped,
        escape_index=count if escaped else None,
        tangencies=s[:count].copy(),
        error=error,
    )


def run_portrait(
    params: CurveParams,
    seeds: Sequence,
    n_iters: int = 10_000,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
    cfg: TangencySolverConfig = DEFAULT_CONFIG,
    threads: Optional[int] = None,
) -> list[Orbit]:
    """One orbit per seed, in seed order.

    Orbits are independent, so the result does not depend on ``threads``.
    Solver failures are recorded on the orbit instead of aborting the batch.
    """
    if not seeds:
        return []
    threads = threads or os.cpu_count() or 1
    if threads == 1:
        return [_run_one(params, sd, n_iters, escape_radius, cfg) for sd in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda sd: _run_one(params, sd, n_iters, escape_radius, cfg), seeds))


def _pixel_indices(points: np.ndarray, window: Window, width: int, height: int):
    x, y = points[:, 0], points[:, 1]
    inside = (x >= window.x_min) & (x < window.x_max) & (y >= window.y_min) & (y < window.y_max)
    x, y = x[inside], y[inside]
    col = np.floor((x - window.x_min) / (window.x_max - window.x_min) * width).astype(np.int64)
    row = np.floor((y - window.y_min) / (window.y_max - window.y_min) * height).astype(np.int64)
    col = np.clip(col, 0, width - 1)
    row = height - 1 - np.clip(row, 0, height - 1)
    return row, col


def _hue_rgb(orbit_id: int) -> np.ndarray:
    h = (orbit_id * GOLDEN_ANGLE_TURNS) % 1.0
    return np.array([round(255 * c) for c in colorsys.hsv_to_rgb(h, 0.85, 1.0)], dtype=np.uint8)


def rasterize(orbits: Sequence[Orbit], window: Window, config: RasterConfig = RasterConfig()) -> np.ndarray:
    """RGB image (height, width, 3) uint8, row 0 at the top of the window.

    The window is half-open, [x_min, x_max) x [y_min, y_max).
    """
    w, h = config.width, config.height
    if config.mode is RasterMode.DENSITY:
        counts = np.zeros(h * w, dtype=np.int64)
        for orb in orbits:
            if len(orb.points):
                row, col = _pixel_indices(orb.points, window, w, h)
                counts += np.bincount(row * w + col, minlength=h * w)
        counts = counts.reshape(h, w)
        peak = counts.max() if counts.size else 0
        if peak == 0:
            return np.zeros((h, w, 3), dtype=np.uint8)
        level = np.rint(255.0 * np.log1p(counts) / math.log1p(peak)).astype(np.uint8)
        return np.repeat(level[:, :, None], 3, axis=2)
    img = np.zeros((h, w, 3), dtype=np.uint8)
    for i, orb in enumerate(orbits):
        if len(orb.points):
            row, col = _pixel_indices(orb.points, window, w, h)
            img[row, col] = _hue_rgb(i)
    return img


def default_window(orbits: Sequence[Orbit], margin: float = 1.02) -> Window:
    """Square window centred on the origin that holds every stored point."""
    reach = 0.0
    for orb in orbits:
        if len(orb.points):
            reach = max(reach, float(np.max(np.abs(orb.points))))
    reach = max(reach, 1.0) * margin
    return Window(-reach, -reach, reach, reach)


def write_csv(orbits: Sequence[Orbit], path) -> None:
    """Header ``orbit_id,iter,x,y``; one row per stored iterate, iter counted from 1."""
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write("orbit_id,iter,x,y\n")
            for oid, orb in enumerate(orbits):
                fh.writelines(
                    f"{oid},{k},{x:.17g},{y:.17g}\n"
                    for k, (x, y) in enumerate(orb.points.tolist(), start=1)
                )
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(path) -> dict[int, np.ndarray]:
    """Points per orbit id from a file written by :func:`write_csv`."""
    rows: dict[int, list] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for oid, _, x, y in reader:
            rows.setdefault(int(oid), []).append((float(x), float(y)))
    return {oid: np.array(pts) for oid, pts in rows.items()}


def write_ppm(buffer: np.ndarray, path) -> None:
    """Binary P6 with maxval 255, rows top to bottom."""
    buf = np.asarray(buffer)
    if buf.ndim != 3 or buf.shape[2] != 3:
        raise ValueError("PPM buffer must have shape (height, width, 3)")
    h, w = buf.shape[:2]
    try:
        with open(path, "wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(np.ascontiguousarray(buf, dtype=np.uint8).tobytes())
    except OSError as exc:
        raise OSError(f"cannot write PPM to {path}: {exc}") from exc
