# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tangency solver and orbit iterator (mirror of ``_pykernel``)."""
from libc.math cimport cos, sin, fabs, fmod, hypot, M_PI
from libc.stdlib cimport malloc, free

cdef double TWO_PI = 2.0 * M_PI
cdef double DOUBLE_ROOT_GAP = 1e-8

cdef enum:
    S_OK = 0
    S_INTERIOR = 1
    S_ON_CURVE = 2
    S_NO_CONVERGENCE = 3
    S_ESCAPED = 4

OK = S_OK
INTERIOR = S_INTERIOR
ON_CURVE = S_ON_CURVE
NO_CONVERGENCE = S_NO_CONVERGENCE
ESCAPED = S_ESCAPED

cdef enum:
    MAX_SCAN = 4096
    WARM_MAX_STEPS = 64


cdef inline double _f(double n, double eps, double mx, double my, double s) noexcept nogil:
    cdef double c = cos(s), sn = sin(s), cn = cos(n * s), snn = sin(n * s)
    cdef double en = eps * n
    return (-sn - en * snn) * (my - sn - eps * snn) - (c + en * cn) * (mx - c - eps * cn)


cdef inline void _f_df(double n, double eps, double mx, double my, double s,
                       double* f, double* df) noexcept nogil:
    cdef double c = cos(s), sn = sin(s), cn = cos(n * s), snn = sin(n * s)
    cdef double en = eps * n
    cdef double enn = en * n
    cdef double dx = mx - c - eps * cn
    cdef double dy = my - sn - eps * snn
    f[0] = (-sn - en * snn) * dy - (c + en * cn) * dx
    df[0] = (-c - enn * cn) * dy - (-sn - enn * snn) * dx


cdef inline void _df_ddf(double n, double eps, double mx, double my, double s,
                         double* df, double* ddf) noexcept nogil:
    cdef double c = cos(s), sn = sin(s), cn = cos(n * s), snn = sin(n * s)
    cdef double en = eps * n
    cdef double enn = en * n
    cdef double ennn = enn * n
    cdef double dx = mx - c - eps * cn
    cdef double dy = my - sn - eps * snn
    cdef double g1x = -sn - en * snn, g1y = c + en * cn
    cdef double g2x = -c - enn * cn, g2y = -sn - enn * snn
    cdef double g3x = sn + ennn * snn, g3y = -c - ennn * cn
    df[0] = g2x * dy - g2y * dx
    ddf[0] = g3x * dy - g3y * dx + (g1x * g2y - g1y * g2x)


cdef int _refine(double n, double eps, double mx, double my, double a, double b,
                 double fa, double tol, int max_iter, double* root) noexcept nogil:
    cdef double x = 0.5 * (a + b)
    cdef double dx_old = b - a
    cdef double dx = dx_old
    cdef double fx, dfx
    cdef int it
    for it in range(max_iter):
        _f_df(n, eps, mx, my, x, &fx, &dfx)
        if fx == 0.0:
            root[0] = x
            return 1
        if (fx < 0.0) == (fa < 0.0):
            a = x
            fa = fx
        else:
            b = x
        if dfx == 0.0 or ((x - a) * dfx - fx) * ((x - b) * dfx - fx) > 0.0 or fabs(2.0 * fx) > fabs(dx_old * dfx):
            dx_old = dx
            dx = 0.5 * (b - a)
            x = a + dx
        else:
            dx_old = dx
            dx = fx / dfx
            x = x - dx
        if fabs(dx) < tol or fabs(b - a) < tol:
            root[0] = x
            return 1
    root[0] = x
    return 0


cdef inline double _wrap(double s) noexcept nogil:
    s = fmod(s, TWO_PI)
    if s < 0.0:
        s += TWO_PI
    return s


cdef inline double _gap(double a, double b) noexcept nogil:
    cdef double d = fabs(_wrap(a - b))
    return d if d < TWO_PI - d else TWO_PI - d


cdef int _tangency(double n, double eps, double mx, double my, int scan_samples,
                   double root_tol, int max_iter, double* t_back, double* s_fwd) noexcept nogil:
    cdef int m = scan_samples
    cdef int i, up, down, imin
    cdef int ok1, ok2
    cdef double h, f0, f1, s, lo, hi, df, ddf, step, fmin
    cdef double* fs = <double*> malloc(2 * MAX_SCAN * sizeof(double)) if scan_samples < MAX_SCAN else <double*> malloc(scan_samples * sizeof(double))
    if fs == NULL:
        return S_NO_CONVERGENCE
    while True:
        h = TWO_PI / m
        for i in range(m):
            fs[i] = _f(n, eps, mx, my, i * h)
        up = -1
        down = -1
        for i in range(m):
            f0 = fs[i]
            f1 = fs[(i + 1) % m]
            if up < 0 and f0 < 0.0 and f1 >= 0.0:
                up = i
            elif down < 0 and f0 >= 0.0 and f1 < 0.0:
                down = i
        if up >= 0 and down >= 0:
            break
        if m >= MAX_SCAN:
            break
        m *= 2

    if up >= 0 and down >= 0:
        ok1 = _refine(n, eps, mx, my, up * h, up * h + h, fs[up], root_tol, max_iter, s_fwd)
        ok2 = _refine(n, eps, mx, my, down * h, down * h + h, fs[down], root_tol, max_iter, t_back)
    else:
        if up >= 0 or down >= 0:
            free(fs)
            return S_NO_CONVERGENCE
        imin = 0
        for i in range(1, m):
            if fs[i] < fs[imin]:
                imin = i
        lo = (imin - 1) * h
        hi = (imin + 1) * h
        s = imin * h
        for i in range(max_iter):
            _df_ddf(n, eps, mx, my, s, &df, &ddf)
            if ddf <= 0.0:
                break
            step = df / ddf
            s = s - step
            if s < lo:
                s = lo
            elif s > hi:
                s = hi
            if fabs(step) < root_tol:
                break
        fmin = _f(n, eps, mx, my, s)
        if fmin >= root_tol:
            free(fs)
            return S_INTERIOR
        if fmin > -root_tol:
            free(fs)
            return S_ON_CURVE
        ok1 = _refine(n, eps, mx, my, s, hi, fmin, root_tol, max_iter, s_fwd)
        ok2 = _refine(n, eps, mx, my, lo, s, fs[(imin - 1 + m) % m], root_tol, max_iter, t_back)
    free(fs)
    if not (ok1 and ok2):
        return S_NO_CONVERGENCE
    s_fwd[0] = _wrap(s_fwd[0])
    t_back[0] = _wrap(t_back[0])
    if _gap(s_fwd[0], t_back[0]) < DOUBLE_ROOT_GAP:
        return S_ON_CURVE
    return S_OK


cdef int _forward_warm(double n, double eps, double mx, double my, double guess, double h,
                       double root_tol, int max_iter, double* s_fwd) noexcept nogil:
    cdef double fg = _f(n, eps, mx, my, guess)
    cdef double a, b, fa, fb
    cdef int k
    if fg < 0.0:
        a = guess
        fa = fg
        for k in range(WARM_MAX_STEPS):
            b = a + h
            fb = _f(n, eps, mx, my, b)
            if fb >= 0.0:
                return _refine(n, eps, mx, my, a, b, fa, root_tol, max_iter, s_fwd)
            a = b
            fa = fb
    else:
        b = guess
        for k in range(WARM_MAX_STEPS):
            a = b - h
            fa = _f(n, eps, mx, my, a)
            if fa < 0.0:
                return _refine(n, eps, mx, my, a, b, fa, root_tol, max_iter, s_fwd)
            b = a
    return 0


cdef int _iterate(double n, double eps, double x0, double y0, Py_ssize_t n_iters,
                  double escape_radius, int scan_samples, double root_tol, int max_iter,
                  double[:, ::1] out_xy, double[::1] out_s, Py_ssize_t* count) noexcept nogil:
    cdef double t_back, s_fwd, s_new, gx, gy, width
    cdef double mx = x0, my = y0
    cdef int status, ok
    cdef Py_ssize_t k
    count[0] = 0
    status = _tangency(n, eps, x0, y0, scan_samples, root_tol, max_iter, &t_back, &s_fwd)
    if status != S_OK:
        return status
    for k in range(n_iters):
        out_s[k] = s_fwd
        gx = cos(s_fwd) + eps * cos(n * s_fwd)
        gy = sin(s_fwd) + eps * sin(n * s_fwd)
        mx = 2.0 * gx - mx
        my = 2.0 * gy - my
        if hypot(mx, my) > escape_radius:
            count[0] = k
            return S_ESCAPED
        out_xy[k, 0] = mx
        out_xy[k, 1] = my
        if k == n_iters - 1:
            break
        width = _wrap(s_fwd - t_back)
        t_back = s_fwd
        ok = _forward_warm(n, eps, mx, my, s_fwd + width, min(0.25 * width, 0.5),
                           root_tol, max_iter, &s_new)
        if ok:
            s_new = _wrap(s_new)
            if _gap(s_new, t_back) < DOUBLE_ROOT_GAP:
                ok = 0
        if ok:
            s_fwd = s_new
        else:
            status = _tangency(n, eps, mx, my, scan_samples, root_tol, max_iter, &t_back, &s_fwd)
            if status != S_OK:
                count[0] = k + 1
                return status
    count[0] = n_iters
    return S_OK


def tangency(int n, double eps, double mx, double my, int scan_samples, double root_tol, int max_iter):
    """Full-scan tangency solve; returns (status, t_back, s_fwd) in [0, 2 pi)."""
    cdef double t_back = 0.0, s_fwd = 0.0
    cdef int status
    with nogil:
        status = _tangency(n, eps, mx, my, scan_samples, root_tol, max_iter, &t_back, &s_fwd)
    if status != S_OK:
        return status, 0.0, 0.0
    return status, t_back, s_fwd


def iterate(int n, double eps, double x0, double y0, Py_ssize_t n_iters, double escape_radius,
            int scan_samples, double root_tol, int max_iter, double[:, ::1] out_xy, double[::1] out_s):
    """Iterate the map from (x0, y0); see ``_pykernel.iterate``.  Releases the GIL."""
    cdef Py_ssize_t count = 0
    cdef int status
    if out_xy.shape[0] < n_iters or out_s.shape[0] < n_iters:
        raise ValueError("output buffers shorter than n_iters")
    with nogil:
        status = _iterate(n, eps, x0, y0, n_iters, escape_radius, scan_samples, root_tol,
                          max_iter, out_xy, out_s, &count)
    return count, status
