# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Same call signatures and return conventions as ``_pykernels``; callers go
through ``toeplitz_spurious.kernels`` which picks whichever is importable.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, hypot, copysign, M_PI
from libc.float cimport DBL_EPSILON

cnp.import_array()


def series_partial_sums(Py_ssize_t n, Py_ssize_t tail, phases):
    """Truncated residual-series matrix for the unimodular two-step symbol.

    ``phases[k]`` must hold ``exp(i*k*(L+pi))`` for ``k = 0..P-1`` where the
    exponential is ``P``-periodic in ``k``. Rows/columns use 1-based ``r, l``
    internally; the returned array is 0-based.
    """
    cdef double[::1] zr = np.ascontiguousarray(np.real(phases), dtype=np.float64)
    cdef double[::1] zi = np.ascontiguousarray(np.imag(phases), dtype=np.float64)
    cdef Py_ssize_t P = zr.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] B = out
    cdef Py_ssize_t r, l, m, i1, i2, rl
    cdef double w, s0, s1r, s1i, s2r, s2i, sign, br, bi
    cdef double inv_pi2 = 1.0 / (M_PI * M_PI)

    for r in range(1, n + 1):
        for l in range(1, r + 1):
            s0 = 0.0
            s1r = 0.0
            s1i = 0.0
            s2r = 0.0
            s2i = 0.0
            # left block m = -tail .. 0
            m = -tail
            i1 = ((r - m) % P + P) % P
            i2 = ((m - l) % P + P) % P
            while m <= 0:
                w = 1.0 / (<double>(r - m) * <double>(m - l))
                s0 += w
                s1r += w * zr[i1]
                s1i += w * zi[i1]
                s2r += w * zr[i2]
                s2i += w * zi[i2]
                m += 1
                i1 -= 1
                if i1 < 0:
                    i1 += P
                i2 += 1
                if i2 == P:
                    i2 = 0
            # right block m = n+1 .. n+tail
            m = n + 1
            i1 = ((r - m) % P + P) % P
            i2 = ((m - l) % P + P) % P
            while m <= n + tail:
                w = 1.0 / (<double>(r - m) * <double>(m - l))
                s0 += w
                s1r += w * zr[i1]
                s1i += w * zi[i1]
                s2r += w * zr[i2]
                s2i += w * zi[i2]
                m += 1
                i1 -= 1
                if i1 < 0:
                    i1 += P
                i2 += 1
                if i2 == P:
                    i2 = 0
            rl = ((r - l) % P + P) % P
            sign = -inv_pi2 if (r - l) % 2 == 0 else inv_pi2
            br = sign * (s0 * (1.0 + zr[rl]) - s1r - s2r)
            bi = sign * (s0 * zi[rl] - s1i - s2i)
            if r == l:
                bi = 0.0
            B[r - 1, l - 1] = br + 1j * bi
            B[l - 1, r - 1] = br - 1j * bi
    return out


def tridiagonal_ql(d_in, e_in, int max_sweeps=50, double abstol=0.0):
    """Eigenvalues of a real symmetric tridiagonal matrix by implicit QL.

    ``e_in[i]`` couples ``i`` and ``i+1``. Returns ``(values, failed)`` where
    ``failed`` is -1 on success, otherwise the index whose iteration cap ran
    out (``values`` is then meaningless). Off-diagonals below
    ``abstol`` are treated as zero.
    """
    d_arr = np.array(d_in, dtype=np.float64, copy=True)
    cdef Py_ssize_t n = d_arr.shape[0]
    e_arr = np.zeros(n, dtype=np.float64)
    if n > 1:
        e_arr[: n - 1] = np.asarray(e_in, dtype=np.float64)[: n - 1]
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    cdef Py_ssize_t l, m, i
    cdef int it
    cdef double dd, g, r, s, c, p, f, b
    cdef bint underflow

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= DBL_EPSILON * dd or fabs(e[m]) <= abstol:
                    break
                m += 1
            if m == l:
                break
            if it == max_sweeps:
                return d_arr, l
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    d_arr.sort()
    return d_arr, -1
