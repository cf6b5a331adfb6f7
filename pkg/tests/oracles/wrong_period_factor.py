"""Brute-force pipeline for the wrong-period control factor.

Independent of the package: coefficients come from direct numerical
integration of the symbol, matrices are assembled with plain numpy and
eigenvalues come from LAPACK. Run as a script to print the factor that
``test_acceptance.py`` freezes.
"""
import math

import numpy as np
from scipy.integrate import quad


def coefficient(k, L):
    # (1/2pi) * integral of a(x) e^{ikx}, a = -1 on [-pi, L), +1 on [L, pi)
    pieces = [(-math.pi, L, -1.0), (L, math.pi, 1.0)]
    re = sum(v * quad(lambda x: math.cos(k * x), a, b, limit=400)[0] for a, b, v in pieces)
    im = sum(v * quad(lambda x: math.sin(k * x), a, b, limit=400)[0] for a, b, v in pieces)
    return complex(re, im) / (2 * math.pi)


def residual_eigs_desc(n, coeffs):
    T = np.array([[coeffs[r - l] for l in range(n)] for r in range(n)])
    B = np.eye(n) - T @ T
    return np.linalg.eigvalsh(0.5 * (B + B.conj().T))[::-1]


def statistic(n, step, eps, coeffs):
    lam, lam_next = residual_eigs_desc(n, coeffs), residual_eigs_desc(n + step, coeffs)
    adm = lam > eps
    drift = np.max(np.abs(lam[adm] - lam_next[: len(lam)][adm]))
    return drift * eps * n / (step * (1 + math.log(n) ** 2))


def factor(n=200, eps=0.1, L=math.pi / 2):
    kmax = n + 4
    coeffs = {k: coefficient(k, L) for k in range(-kmax, kmax + 1)}
    return statistic(n, 3, eps, coeffs) / statistic(n, 4, eps, coeffs)


if __name__ == "__main__":
    print(f"{factor():.6f}")
