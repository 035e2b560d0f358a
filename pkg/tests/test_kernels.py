"""The compiled kernel and the Python fallback must agree."""
import math

import numpy as np
import pytest

from outer_billiards import _backend, _pykernel
from outer_billiards.curve import CurveParams, offset_point

needs_c = pytest.mark.skipif("cython" not in _backend.available(), reason="extension not built")


@needs_c
@pytest.mark.parametrize("M", [(1.7, 0.4), (-2.3, 1.1), (0.0, 3.0), (1.02, 0.0)])
def test_tangency_agrees(M):
    from outer_billiards import _ckernel

    a = _ckernel.tangency(7, 0.01, *M, 256, 1e-13, 100)
    b = _pykernel.tangency(7, 0.01, *M, 256, 1e-13, 100)
    assert a[0] == b[0] == 0
    np.testing.assert_allclose(a[1:], b[1:], atol=1e-13)


@needs_c
def test_iterate_agrees():
    from outer_billiards import _ckernel

    n_iters = 500
    out = {}
    for name, k in (("c", _ckernel), ("py", _pykernel)):
        xy = np.empty((n_iters, 2))
        s = np.empty(n_iters)
        count, status = k.iterate(7, 0.01, 1.5, 0.9, n_iters, 100.0, 256, 1e-13, 100, xy, s)
        assert (count, status) == (n_iters, 0)
        out[name] = xy
    np.testing.assert_allclose(out["c"], out["py"], atol=1e-9)


def test_warm_start_matches_full_scan(backend):
    # every warm-started tangency must equal a cold full-scan solve
    k = _backend.kernel
    n_iters = 300
    xy = np.empty((n_iters, 2))
    s = np.empty(n_iters)
    k.iterate(7, 0.01, 0.0, 2.4, n_iters, 100.0, 256, 1e-13, 100, xy, s)
    pre = np.vstack([[0.0, 2.4], xy[:-1]])
    for P, sk in zip(pre[::7], s[::7]):
        status, _, s_cold = k.tangency(7, 0.01, P[0], P[1], 256, 1e-13, 100)
        assert status == 0
        d = abs(s_cold - sk) % (2 * math.pi)
        assert min(d, 2 * math.pi - d) < 1e-11


def test_status_codes_exported(backend):
    k = _backend.kernel
    assert (k.OK, k.INTERIOR, k.ON_CURVE, k.NO_CONVERGENCE, k.ESCAPED) == (0, 1, 2, 3, 4)


def test_use_unknown_backend():
    with pytest.raises(ValueError):
        _backend.use("fortran")


def test_near_curve_orbit_falls_back_to_full_scan(backend):
    p = CurveParams(7, 0.01)
    M = offset_point(p, 0.5, 0.02)
    k = _backend.kernel
    xy = np.empty((50, 2))
    s = np.empty(50)
    count, status = k.iterate(7, 0.01, M[0], M[1], 50, 100.0, 256, 1e-13, 100, xy, s)
    assert (count, status) == (50, 0)
