"""Acceptance criteria, one marked group per criterion.

A per-criterion PASS/FAIL table is printed at the end of the pytest run.
"""
import math
import time

import numpy as np
import pytest

from outer_billiards.billiard_map import jacobian_det, mu_along_orbit, tangency_params
from outer_billiards.curve import CurveParams, offset_point
from outer_billiards.generating_function import (
    cap_area,
    mixed_partial_routes,
    second_derivs,
    twist_check,
)
from outer_billiards.gutkin import (
    identity_eps_coefficients,
    identity_residual,
    solve_gutkin,
    verify_invariant_curve,
)
from outer_billiards.integrability import Verdict, integrability_integral, verdict
from outer_billiards.periodic import (
    Stability,
    classify,
    detect_period,
    elliptic_hyperbolic_seeds,
    separation_exponent,
)
from outer_billiards.phase_portrait import (
    RasterConfig,
    default_window,
    rasterize,
    read_csv,
    run_portrait,
    sample_initial_points,
    write_csv,
    write_ppm,
)

from .conftest import X1_REF, X2_REF

P7 = CurveParams(7, 0.01)
PRINTED_I = 9.16345


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


@pytest.mark.criterion(1)
def test_c01_gutkin_roots():
    solve_gutkin(7)  # warm numpy
    roots, elapsed = timed(solve_gutkin, 7)
    print(f"roots={[r.x for r in roots]} time={elapsed:.4f}s")
    assert len(roots) == 2
    assert abs(roots[0].x - X1_REF) < 1e-6
    assert abs(roots[1].x - X2_REF) < 1e-6
    assert elapsed < 0.1


@pytest.mark.criterion(2)
def test_c02_root_counts():
    start = time.perf_counter()
    r2, r3, r4 = solve_gutkin(2), solve_gutkin(3), solve_gutkin(4)
    elapsed = time.perf_counter() - start
    assert (len(r2), len(r3), len(r4)) == (0, 0, 1)
    assert abs(r4[0].x - math.atan(math.sqrt(5))) < 1e-10
    assert elapsed < 0.5


@pytest.mark.criterion(3)
def test_c03_invariant_curves():
    roots = solve_gutkin(7)
    start = time.perf_counter()
    reports = [verify_invariant_curve(P7, r, 1000) for r in roots]
    elapsed = time.perf_counter() - start
    for rep in reports:
        print(rep)
        assert rep.max_position_error < 1e-8
        assert rep.max_mu_deviation < 1e-8
    assert elapsed < 2.0


@pytest.mark.criterion(4)
def test_c04_identity():
    roots = solve_gutkin(7)
    start = time.perf_counter()
    t = np.linspace(0, 2 * np.pi, 1000)
    worst = 0.0
    for eps in np.linspace(0.0, 0.05, 5):
        p = CurveParams(7, eps, strict=False)
        for r in roots:
            worst = max(worst, float(np.abs(identity_residual(p, r.x, t)).max()))
    rng = np.random.default_rng(2024)
    tr = rng.uniform(0, 2 * np.pi, 100)
    coeff_worst = max(
        float(np.max(np.abs(c))) for r in roots for c in identity_eps_coefficients(7, r.x, tr)
    )
    elapsed = time.perf_counter() - start
    print(f"max residual={worst:.3g} max coefficient={coeff_worst:.3g} time={elapsed:.3f}s")
    assert worst < 1e-12
    assert coeff_worst < 1e-10
    assert elapsed < 1.0


@pytest.mark.criterion(5)
def test_c05_integral_value():
    roots = solve_gutkin(7)
    res, elapsed = timed(integrability_integral, P7, *roots, 512, 128)
    print(f"I={res.value!r} err={res.error_estimate:.3g} time={elapsed:.3f}s")
    assert elapsed < 10.0
    assert abs(res.value - PRINTED_I) < 0.01


@pytest.mark.criterion(5)
def test_c05_integral_convergence_and_verdict():
    roots = solve_gutkin(7)
    fine = integrability_integral(P7, *roots, 512, 128)
    half = integrability_integral(P7, *roots, 256, 64)
    assert abs(fine.value - half.value) < 1e-4
    assert verdict(fine) is Verdict.NOT_TOTALLY_INTEGRABLE


@pytest.mark.criterion(6)
def test_c06_circle_null():
    circle = CurveParams(7, 0.0)
    roots = solve_gutkin(7)
    assert abs(integrability_integral(circle, *roots, 512, 128).value) < 1e-10
    t = np.linspace(0, 2 * np.pi, 200)[:, None]
    u = np.linspace(0.1, 3.0, 100)[None, :]
    d = second_derivs(circle, t, t + u)
    assert np.abs(d.integrand_factor).max() < 1e-12


@pytest.mark.criterion(7)
def test_c07_twist_and_symmetry():
    roots = solve_gutkin(7)
    rep = twist_check(P7, *roots, grid=(256, 64))
    print(f"max S12={rep.max_s12:.6g}")
    assert rep.max_s12 < 0

    rng = np.random.default_rng(7)
    t = rng.uniform(0, 2 * np.pi, 1000)
    s = t + rng.uniform(2 * roots[0].x, 2 * roots[1].x, 1000)
    a, b = mixed_partial_routes(P7, t, s)
    assert np.abs(a - b).max() < 1e-9

    h = 1e-4
    S = lambda x, y: cap_area(P7, x, y, 4096)
    for x, y in zip(t[:5], s[:5]):
        d = second_derivs(P7, x, y)
        c = S(x, y)
        fd11 = (S(x + h, y) - 2 * c + S(x - h, y)) / h**2
        fd22 = (S(x, y + h) - 2 * c + S(x, y - h)) / h**2
        fd12 = (S(x + h, y + h) - S(x + h, y - h) - S(x - h, y + h) + S(x - h, y - h)) / (4 * h * h)
        assert abs(d.s11 - fd11) < 1e-5
        assert abs(d.s12 - fd12) < 1e-5
        assert abs(d.s22 - fd22) < 1e-5


@pytest.mark.criterion(8)
def test_c08_area_preservation():
    rng = np.random.default_rng(8)
    t = rng.uniform(0, 2 * np.pi, 100)
    lam = rng.uniform(0.2, 2.5, 100)
    dets = [jacobian_det(P7, M) for M in offset_point(P7, t, lam).T]
    print(f"max |det - 1| = {max(abs(d - 1) for d in dets):.3g}")
    assert max(abs(d - 1) for d in dets) < 1e-6


@pytest.mark.criterion(9)
def test_c09_periodic_points():
    start = time.perf_counter()
    E, H = elliptic_hyperbolic_seeds(P7)
    assert len(E) == 6 and len(H) == 6
    for kind, seeds, expected in (("E", E, Stability.ELLIPTIC), ("H", H, Stability.HYPERBOLIC)):
        for pt in seeds:
            period = detect_period(P7, pt, tol=1e-8)
            assert period == 3
            rep = classify(P7, pt, period)
            print(kind, pt, period, rep.monodromy_trace, rep.classification.value)
            assert rep.classification is expected
            assert abs(rep.monodromy_det - 1) < 1e-4
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(10)
def test_c10_portrait_scale(tmp_path):
    seeds = sample_initial_points(P7, 500, 0.3, 2.0, seed=0)
    start = time.perf_counter()
    orbits = run_portrait(P7, seeds, 10_000, threads=1)
    csv1 = tmp_path / "t1.csv"
    ppm = tmp_path / "p.ppm"
    write_csv(orbits, csv1)
    write_ppm(rasterize(orbits, default_window(orbits), RasterConfig(2000, 2000)), ppm)
    elapsed = time.perf_counter() - start
    print(f"500 x 10000 portrait with CSV and PPM in {elapsed:.2f}s")
    assert elapsed < 60.0
    assert all(o.error is None for o in orbits)

    data = ppm.read_bytes()
    header = b"P6\n2000 2000\n255\n"
    assert data.startswith(header) and len(data) == len(header) + 2000 * 2000 * 3
    with open(csv1) as fh:
        assert fh.readline() == "orbit_id,iter,x,y\n"
    assert sum(1 for _ in open(csv1)) == 1 + sum(len(o) for o in orbits)

    csv4 = tmp_path / "t4.csv"
    write_csv(run_portrait(P7, seeds, 10_000, threads=4), csv4)
    assert csv1.read_bytes() == csv4.read_bytes()


@pytest.mark.criterion(10)
def test_c10_confinement(tmp_path):
    roots = solve_gutkin(7)
    r1, r2 = roots[0].r, roots[1].r
    seeds = sample_initial_points(P7, 50, r1 + 1e-6, r2 - 1e-6, seed=10)
    orbits = run_portrait(P7, seeds, 10_000)
    lo = min(mu_along_orbit(P7, o).min() for o in orbits)
    hi = max(mu_along_orbit(P7, o).max() for o in orbits)
    print(f"mu range [{lo:.6f}, {hi:.6f}] within [{r1:.6f}, {r2:.6f}]")
    assert lo >= r1 - 1e-4 and hi <= r2 + 1e-4
    write_csv(orbits[:2], tmp_path / "c.csv")
    back = read_csv(tmp_path / "c.csv")
    assert np.array_equal(back[0], orbits[0].points)


@pytest.mark.criterion(11)
def test_c11_chaos_indicator():
    roots = solve_gutkin(7)
    baseline = separation_exponent(P7, offset_point(P7, 0.3, roots[0].r), n_iters=10_000)
    _, H = elliptic_hyperbolic_seeds(P7)
    # H_0 sits on the y-axis; displace along the symmetry circle (x direction)
    near = separation_exponent(P7, np.array(H[0]) + [1e-3, 0.0], n_iters=10_000)
    print(f"baseline={baseline:.3g} near H0={near:.3g} ratio={near / baseline:.1f}")
    assert near > 10 * baseline
