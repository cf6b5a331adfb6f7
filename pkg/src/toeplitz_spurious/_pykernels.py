"""Pure-Python versions of the kernels in ``_kernels.pyx``.

Used when the compiled extension is not built. Results agree with the
compiled kernels to rounding.
"""
import math

import numpy as np


def series_partial_sums(n, tail, phases):
    phases = np.asarray(phases, dtype=np.complex128)
    P = len(phases)
    m = np.concatenate([np.arange(-tail, 1), np.arange(n + 1, n + tail + 1)])
    out = np.zeros((n, n), dtype=np.complex128)
    for r in range(1, n + 1):
        ls = np.arange(1, r + 1)
        w = 1.0 / ((r - m)[None, :].astype(float) * (m[None, :] - ls[:, None]))
        s0 = w.sum(axis=1)
        s1 = w @ phases[(r - m) % P]
        s2 = (w * phases[(m[None, :] - ls[:, None]) % P]).sum(axis=1)
        sign = np.where((r - ls) % 2 == 0, -1.0, 1.0) / math.pi**2
        row = sign * (s0 * (1.0 + phases[(r - ls) % P]) - s1 - s2)
        row[-1] = row[-1].real
        out[r - 1, :r] = row
        out[:r, r - 1] = np.conj(row)
    return out


def tridiagonal_ql(d_in, e_in, max_sweeps=50, abstol=0.0):
    d = [float(x) for x in d_in]
    n = len(d)
    e = [0.0] * n
    for i in range(n - 1):
        e[i] = float(e_in[i])
    eps = np.finfo(float).eps

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd or abs(e[m]) <= abstol:
                    break
                m += 1
            if m == l:
                break
            if it == max_sweeps:
                return np.array(d), l
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
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
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d, dtype=float)), -1
