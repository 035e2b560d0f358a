"""Compare the compiled and pure-Python kernels on the two hot paths.

    python3 benchmarks/bench_kernels.py [--iters 2000] [--repeat 3]

Both kernels are run on identical inputs; the orbit endpoints are checked
for agreement before timings are reported.
"""
import argparse
import time

import numpy as np

from outer_billiards import _backend
from outer_billiards.billiard_map import DEFAULT_CONFIG, DEFAULT_ESCAPE_RADIUS
from outer_billiards.curve import CurveParams, offset_point


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(kernel, params, seeds, iters, repeat):
    cfg = DEFAULT_CONFIG

    def run_tangency():
        for x, y in seeds:
            kernel.tangency(params.n, params.eps, x, y, cfg.scan_samples, cfg.root_tol,
                            cfg.max_refine_iters)

    def run_orbits():
        ends = []
        for x, y in seeds:
            xy = np.empty((iters, 2))
            s = np.empty(iters)
            count, _ = kernel.iterate(params.n, params.eps, x, y, iters, DEFAULT_ESCAPE_RADIUS,
                                      cfg.scan_samples, cfg.root_tol, cfg.max_refine_iters, xy, s)
            ends.append(xy[count - 1].copy())
        return np.array(ends)

    t_tan, _ = best_of(repeat, run_tangency)
    t_orb, ends = best_of(repeat, run_orbits)
    return t_tan / len(seeds), t_orb / (len(seeds) * iters), ends


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iters", type=int, default=2000)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    params = CurveParams(7, 0.01)
    rng = np.random.default_rng(0)
    pts = offset_point(params, rng.uniform(0, 2 * np.pi, args.seeds),
                       rng.uniform(0.3, 2.0, args.seeds)).T
    seeds = [(float(x), float(y)) for x, y in pts]

    results = {}
    for name in _backend.available():
        results[name] = bench(_backend._KERNELS[name], params, seeds, args.iters, args.repeat)
        t_tan, t_step, _ = results[name]
        print(f"{name:>7}: cold tangency {t_tan * 1e6:9.2f} us   orbit step {t_step * 1e6:8.3f} us")

    if "cython" in results and "python" in results:
        drift = np.abs(results["cython"][2] - results["python"][2]).max()
        print(f"speedup: tangency x{results['python'][0] / results['cython'][0]:.1f}, "
              f"orbit x{results['python'][1] / results['cython'][1]:.1f}; "
              f"max endpoint difference {drift:.2e}")
    else:
        print("only one backend available; build the extension to compare")


if __name__ == "__main__":
    main()
