"""Hot numeric kernels.

Every kernel exists in two forms: compiled with numba (default) and plain
numpy/Python (``BIRKHOFF_DISABLE_NUMBA=1``).  The nested golden-section line
search is written once against an ``evaluate(ctx, v)`` callback and
instantiated twice: once over the compiled norm kernel, once over arbitrary
Python norm objects.
"""

import math

import numpy as np

from ._accel import HAVE_NUMBA, maybe_njit

KIND_LP = 0
KIND_GRAM = 1
KIND_POLY = 2

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
POLISH_ROUNDS = 3


@maybe_njit
def norm_kernel(ctx, v):
    """Norm of ``v`` for a compiled norm context ``(kind, p, M)``.

    * Lp: ``p`` is the exponent (``inf`` allowed), ``M`` unused.
    * Gram: ``M`` is the upper Cholesky factor ``U`` with ``G = U^H U``.
    * Poly: ``M`` holds the real facet functionals (stored as complex).
    """
    kind, p, M = ctx
    if kind == KIND_LP:
        a = np.abs(v)
        m = a.max()
        if m == 0.0:
            return 0.0
        if p == np.inf:
            return m
        if p == 1.0:
            return a.sum()
        s = a / m
        return m * np.sum(s ** p) ** (1.0 / p)
    elif kind == KIND_GRAM:
        w = M @ v
        return math.sqrt(np.sum(w.real * w.real + w.imag * w.imag))
    else:
        return (M @ v).real.max()


def _python_evaluate(ctx, v):
    return ctx._value(v)


def _build_line_search(evaluate, jit):
    deco = maybe_njit if jit else (lambda fn: fn)

    @deco
    def inner(ctx, e, f, a, lo, hi, xtol, complex_t):
        # minimize over Im t with Re t = a fixed; returns (b, value, iterations)
        if not complex_t:
            return 0.0, evaluate(ctx, e + a * f), 0
        c = hi - INVPHI * (hi - lo)
        d = lo + INVPHI * (hi - lo)
        fc = evaluate(ctx, e + (a + 1j * c) * f)
        fd = evaluate(ctx, e + (a + 1j * d) * f)
        n = 0
        while hi - lo > xtol:
            n += 1
            if fc <= fd:
                hi = d
                d = c
                fd = fc
                c = hi - INVPHI * (hi - lo)
                fc = evaluate(ctx, e + (a + 1j * c) * f)
            else:
                lo = c
                c = d
                fc = fd
                d = lo + INVPHI * (hi - lo)
                fd = evaluate(ctx, e + (a + 1j * d) * f)
        if fc <= fd:
            return c, fc, n
        return d, fd, n

    @deco
    def outer(ctx, e, f, lo, hi, blo, bhi, xtol, complex_t):
        # minimize a -> min_b ||e + (a + ib) f||; returns (a, b, value, iterations, width)
        c = hi - INVPHI * (hi - lo)
        d = lo + INVPHI * (hi - lo)
        bc, fc, nc = inner(ctx, e, f, c, blo, bhi, xtol, complex_t)
        bd, fd, nd = inner(ctx, e, f, d, blo, bhi, xtol, complex_t)
        n = nc + nd
        while hi - lo > xtol:
            n += 1
            if fc <= fd:
                hi = d
                d = c
                fd = fc
                bd = bc
                c = hi - INVPHI * (hi - lo)
                bc, fc, k = inner(ctx, e, f, c, blo, bhi, xtol, complex_t)
            else:
                lo = c
                c = d
                fc = fd
                bc = bd
                d = lo + INVPHI * (hi - lo)
                bd, fd, k = inner(ctx, e, f, d, blo, bhi, xtol, complex_t)
            n += k
        if fc <= fd:
            return c, bc, fc, n, hi - lo
        return d, bd, fd, n, hi - lo

    @deco
    def line_search(ctx, e, f, radius, complex_t, xtol):
        """Minimize t -> ||e + t f|| over the square |Re t|, |Im t| <= radius.

        Returns ``(re t, im t, value, evaluations, certified)``.
        """
        blo = -radius if complex_t else 0.0
        bhi = radius if complex_t else 0.0
        a, b, val, n, width = outer(ctx, e, f, -radius, radius, blo, bhi, xtol, complex_t)
        w = 64.0 * xtol
        for _ in range(POLISH_ROUNDS):
            if complex_t:
                b2, v2, k = inner(ctx, e, f, a, b - w, b + w, xtol, complex_t)
                n += k
                if v2 < val:
                    b = b2
                    val = v2
            a2, b2, v2, k, _w = _polish_real(ctx, e, f, a, b, w, xtol)
            n += k
            if v2 < val:
                a = a2
                val = v2
        v0 = evaluate(ctx, e)
        if v0 <= val:
            return 0.0, 0.0, v0, n + 1, True
        edge = radius - abs(a) <= 2.0 * xtol or (complex_t and radius - abs(b) <= 2.0 * xtol)
        return a, b, val, n + 1, (width <= xtol) and not edge

    @deco
    def _polish_real(ctx, e, f, a, b, w, xtol):
        # golden over Re t with Im t = b held fixed
        lo = a - w
        hi = a + w
        c = hi - INVPHI * (hi - lo)
        d = lo + INVPHI * (hi - lo)
        fc = evaluate(ctx, e + (c + 1j * b) * f)
        fd = evaluate(ctx, e + (d + 1j * b) * f)
        n = 2
        while hi - lo > xtol:
            n += 1
            if fc <= fd:
                hi = d
                d = c
                fd = fc
                c = hi - INVPHI * (hi - lo)
                fc = evaluate(ctx, e + (c + 1j * b) * f)
            else:
                lo = c
                c = d
                fc = fd
                d = lo + INVPHI * (hi - lo)
                fd = evaluate(ctx, e + (d + 1j * b) * f)
        if fc <= fd:
            return c, b, fc, n, hi - lo
        return d, b, fd, n, hi - lo

    @deco
    def pairwise(ctx, rows, complex_t, xtol):
        """Directional line minima for every ordered pair of rows.

        ``out[i, j]`` is ``min_t ||rows[i] + t rows[j]||``; the diagonal holds
        the row norms.
        """
        m = rows.shape[0]
        out = np.empty((m, m))
        norms = np.empty(m)
        for i in range(m):
            norms[i] = evaluate(ctx, rows[i])
            out[i, i] = norms[i]
        for i in range(m):
            for j in range(m):
                if i != j:
                    radius = 2.0 * norms[i] / norms[j]
                    res = line_search(ctx, rows[i], rows[j], radius, complex_t, xtol * radius)
                    out[i, j] = res[2]
        return out

    return line_search, pairwise


line_search_kernel, pairwise_kernel = _build_line_search(norm_kernel, jit=HAVE_NUMBA)
line_search_python, pairwise_python = _build_line_search(_python_evaluate, jit=False)


@maybe_njit
def dil_loops(metric, f):
    m = f.shape[0]
    best = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            r = abs(f[i] - f[j]) / metric[i, j]
            if r > best:
                best = r
    return best


def dil_numpy(metric, f):
    iu = np.triu_indices(f.shape[0], 1)
    if iu[0].size == 0:
        return 0.0
    return float((np.abs(f[iu[0]] - f[iu[1]]) / metric[iu]).max())


dil_kernel = dil_loops if HAVE_NUMBA else dil_numpy
