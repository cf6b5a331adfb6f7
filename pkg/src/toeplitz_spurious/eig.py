"""Dense Hermitian eigenvalues and the counting function ``n_+``.

The solver reduces to real symmetric tridiagonal form with Householder
reflections and then runs implicit-shift QL on the tridiagonal (the QL loop
lives in ``kernels`` and is compiled when the extension is built).
``method="lapack"`` routes through ``numpy.linalg.eigvalsh`` instead and is
kept as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .kernels import ConvergenceError

__all__ = [
    "ConvergenceError",
    "Spectrum",
    "counting_above",
    "eigenvalues_array",
    "eigenvalues_hermitian",
    "householder_tridiagonal",
    "mu_view",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    values_asc: np.ndarray
    source_label: str = ""

    def __post_init__(self):
        v = np.array(self.values_asc, dtype=float)
        if v.ndim != 1:
            raise ValueError("spectrum must be one-dimensional")
        if np.any(np.diff(v) < 0):
            raise ValueError("values_asc must be non-decreasing")
        v.flags.writeable = False
        object.__setattr__(self, "values_asc", v)

    @property
    def n(self) -> int:
        return len(self.values_asc)

    @property
    def values_desc(self) -> np.ndarray:
        return self.values_asc[::-1]

    def lam(self, j: int) -> float:
        """``lambda_j``: j-th largest, 1-based."""
        self._check(j)
        return float(self.values_asc[self.n - j])

    def mu(self, j: int) -> float:
        """``mu_j``: j-th smallest, 1-based."""
        self._check(j)
        return float(self.values_asc[j - 1])

    def _check(self, j):
        if not 1 <= j <= self.n:
            raise IndexError(f"eigenvalue index {j} outside 1..{self.n}")


def householder_tridiagonal(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unitarily reduce a Hermitian matrix to real symmetric tridiagonal ``(diag, offdiag)``.

    The complex subdiagonal left by the reflections is made real by a diagonal
    unitary scaling, which leaves only its moduli.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    off = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = a[k + 1 :, k]
        norm = np.linalg.norm(x)
        if norm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * norm
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        sub = a[k + 1 :, k + 1 :]
        p = sub @ v
        w = p - np.vdot(v, p).real * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        off[k] = norm
    if n >= 2:
        off[n - 2] = abs(a[n - 1, n - 2])
    return np.real(np.diag(a)).copy(), off


def eigenvalues_array(h, method: str = "ql", max_sweeps: int = 50, backend=None) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian array (symmetrized first)."""
    a = np.asarray(h, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    a = 0.5 * (a + a.conj().T)
    if a.shape[0] == 0:
        return np.zeros(0)
    if method == "lapack":
        try:
            return np.linalg.eigvalsh(a)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(str(exc)) from exc
    if method != "ql":
        raise ValueError(f"unknown method {method!r}")
    diag, off = householder_tridiagonal(a)
    return kernels.tridiagonal_eigenvalues(diag, off, max_sweeps=max_sweeps, backend=backend)


def eigenvalues_hermitian(H, method: str = "ql", max_sweeps: int = 50) -> Spectrum:
    label = getattr(H, "label", "")
    return Spectrum(eigenvalues_array(np.asarray(H), method=method, max_sweeps=max_sweeps), label)


def counting_above(spec, lam: float) -> int:
    """``n_+(lam)``: number of eigenvalues strictly greater than ``lam``."""
    values = spec.values_asc if isinstance(spec, Spectrum) else np.sort(np.asarray(spec, dtype=float))
    return int(len(values) - np.searchsorted(values, lam, side="right"))


def mu_view(spec: Spectrum, j: int) -> float:
    return spec.mu(j)
