"""Pure-Python tangency solver and orbit iterator.

Reference implementation of the hot kernels; ``_ckernel.pyx`` mirrors it
statement for statement.  Used when the compiled extension is unavailable.

For a point M outside the curve, f(s) = [gamma'(s), M - gamma(s)] is negative
on the arc visible from M and positive elsewhere.  The forward tangency is the
upward zero crossing of f, the backward tangency the downward one.
"""
import math

OK = 0
INTERIOR = 1
ON_CURVE = 2
NO_CONVERGENCE = 3
ESCAPED = 4

TWO_PI = 2.0 * math.pi
MAX_SCAN = 4096
DOUBLE_ROOT_GAP = 1e-8
WARM_MAX_STEPS = 64


def _f(n, eps, mx, my, s):
    c = math.cos(s)
    sn = math.sin(s)
    cn = math.cos(n * s)
    snn = math.sin(n * s)
    en = eps * n
    return (-sn - en * snn) * (my - sn - eps * snn) - (c + en * cn) * (mx - c - eps * cn)


def _f_df(n, eps, mx, my, s):
    c = math.cos(s)
    sn = math.sin(s)
    cn = math.cos(n * s)
    snn = math.sin(n * s)
    en = eps * n
    enn = en * n
    dx = mx - c - eps * cn
    dy = my - sn - eps * snn
    f = (-sn - en * snn) * dy - (c + en * cn) * dx
    df = (-c - enn * cn) * dy - (-sn - enn * snn) * dx
    return f, df


def _df_ddf(n, eps, mx, my, s):
    c = math.cos(s)
    sn = math.sin(s)
    cn = math.cos(n * s)
    snn = math.sin(n * s)
    en = eps * n
    enn = en * n
    ennn = enn * n
    dx = mx - c - eps * cn
    dy = my - sn - eps * snn
    g1x = -sn - en * snn
    g1y = c + en * cn
    g2x = -c - enn * cn
    g2y = -sn - enn * snn
    g3x = sn + ennn * snn
    g3y = -c - ennn * cn
    df = g2x * dy - g2y * dx
    ddf = g3x * dy - g3y * dx + (g1x * g2y - g1y * g2x)
    return df, ddf


def _refine(n, eps, mx, my, a, b, fa, tol, max_iter):
    """Safeguarded Newton on a sign-change bracket [a, b]; returns (ok, root)."""
    x = 0.5 * (a + b)
    dx_old = b - a
    dx = dx_old
    for _ in range(max_iter):
        fx, dfx = _f_df(n, eps, mx, my, x)
        if fx == 0.0:
            return True, x
        if (fx < 0.0) == (fa < 0.0):
            a = x
            fa = fx
        else:
            b = x
        # bisect when Newton leaves the bracket or is not shrinking fast enough
        if dfx == 0.0 or ((x - a) * dfx - fx) * ((x - b) * dfx - fx) > 0.0 or abs(2.0 * fx) > abs(dx_old * dfx):
            dx_old = dx
            dx = 0.5 * (b - a)
            x = a + dx
        else:
            dx_old = dx
            dx = fx / dfx
            x = x - dx
        if abs(dx) < tol or abs(b - a) < tol:
            return True, x
    return False, x


def _wrap(s):
    s = math.fmod(s, TWO_PI)
    if s < 0.0:
        s += TWO_PI
    return s


def _gap(a, b):
    d = abs(_wrap(a - b))
    return min(d, TWO_PI - d)


def tangency(n, eps, mx, my, scan_samples, root_tol, max_iter):
    """Full-scan tangency solve; returns (status, t_back, s_fwd) in [0, 2 pi)."""
    m = scan_samples
    while True:
        h = TWO_PI / m
        fs = [_f(n, eps, mx, my, i * h) for i in range(m)]
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
        ok1, s_fwd = _refine(n, eps, mx, my, up * h, up * h + h, fs[up], root_tol, max_iter)
        ok2, t_back = _refine(n, eps, mx, my, down * h, down * h + h, fs[down], root_tol, max_iter)
    else:
        if up >= 0 or down >= 0:
            return NO_CONVERGENCE, 0.0, 0.0
        # no sign change on the finest grid: polish the minimum of f
        i = min(range(m), key=fs.__getitem__)
        lo = (i - 1) * h
        hi = (i + 1) * h
        s = i * h
        for _ in range(max_iter):
            df, ddf = _df_ddf(n, eps, mx, my, s)
            if ddf <= 0.0:
                break
            step = df / ddf
            s = min(max(s - step, lo), hi)
            if abs(step) < root_tol:
                break
        fmin = _f(n, eps, mx, my, s)
        if fmin >= root_tol:
            return INTERIOR, 0.0, 0.0
        if fmin > -root_tol:
            return ON_CURVE, 0.0, 0.0
        ok1, s_fwd = _refine(n, eps, mx, my, s, hi, fmin, root_tol, max_iter)
        ok2, t_back = _refine(n, eps, mx, my, lo, s, fs[(i - 1) % m], root_tol, max_iter)
    if not (ok1 and ok2):
        return NO_CONVERGENCE, 0.0, 0.0
    s_fwd = _wrap(s_fwd)
    t_back = _wrap(t_back)
    if _gap(s_fwd, t_back) < DOUBLE_ROOT_GAP:
        return ON_CURVE, 0.0, 0.0
    return OK, t_back, s_fwd


def _forward_warm(n, eps, mx, my, guess, h, root_tol, max_iter):
    """Forward tangency by a directional search from ``guess``; (ok, s_fwd)."""
    fg = _f(n, eps, mx, my, guess)
    if fg < 0.0:
        a = guess
        fa = fg
        for _ in range(WARM_MAX_STEPS):
            b = a + h
            fb = _f(n, eps, mx, my, b)
            if fb >= 0.0:
                return _refine(n, eps, mx, my, a, b, fa, root_tol, max_iter)
            a = b
            fa = fb
    else:
        b = guess
        for _ in range(WARM_MAX_STEPS):
            a = b - h
            fa = _f(n, eps, mx, my, a)
            if fa < 0.0:
                return _refine(n, eps, mx, my, a, b, fa, root_tol, max_iter)
            b = a
    return False, guess


def iterate(n, eps, x0, y0, n_iters, escape_radius, scan_samples, root_tol, max_iter, out_xy, out_s):
    """Iterate the map from (x0, y0).

    Writes iterates 1..count into ``out_xy[:count]`` and the forward tangency
    parameter used at each step into ``out_s[:count]``.  Returns
    ``(count, status)``; on ESCAPED the escaping point is not stored.
    """
    status, t_back, s_fwd = tangency(n, eps, x0, y0, scan_samples, root_tol, max_iter)
    if status != OK:
        return 0, status
    mx = x0
    my = y0
    for k in range(n_iters):
        out_s[k] = s_fwd
        gx = math.cos(s_fwd) + eps * math.cos(n * s_fwd)
        gy = math.sin(s_fwd) + eps * math.sin(n * s_fwd)
        mx = 2.0 * gx - mx
        my = 2.0 * gy - my
        if math.hypot(mx, my) > escape_radius:
            return k, ESCAPED
        out_xy[k, 0] = mx
        out_xy[k, 1] = my
        if k == n_iters - 1:
            break
        # the new point's backward tangency is the old forward one
        width = _wrap(s_fwd - t_back)
        t_back = s_fwd
        ok, s_new = _forward_warm(n, eps, mx, my, s_fwd + width, min(0.25 * width, 0.5), root_tol, max_iter)
        if ok:
            s_new = _wrap(s_new)
            if _gap(s_new, t_back) < DOUBLE_ROOT_GAP:
                ok = False
        if ok:
            s_fwd = s_new
        else:
            status, t_back, s_fwd = tangency(n, eps, mx, my, scan_samples, root_tol, max_iter)
            if status != OK:
                return k + 1, status
    return n_iters, OK
