"""Truncated Toeplitz matrices and the residual/cross/compressed matrices built from them.

Public indices (``CrossLayout.k``, cross extents) are 1-based, matching the
row/column labels ``r, l = 1..n``. Arrays are stored 0-based.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from . import kernels
from .symbol import TwoStepSymbol, fourier_coefficient_exact

LABELS = ("T", "M", "B_exact", "B_series", "D", "F")
HERMITIAN_ATOL = 1e-13


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    entries: np.ndarray
    label: str

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        if a.size and np.max(np.abs(a - a.conj().T)) > HERMITIAN_ATOL:
            raise ValueError(f"{self.label} is not Hermitian to {HERMITIAN_ATOL}")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self):
        return f"HermitianMatrix(n={self.n}, label={self.label!r})"


@dataclass(frozen=True)
class CrossLayout:
    """Central cross of ``omega`` rows/columns starting at row ``k = ceil(n/2)`` (1-based)."""

    n: int
    omega: int

    def __post_init__(self):
        if not 1 < self.omega < self.n:
            raise ValueError(f"need 1 < omega < n, got omega={self.omega}, n={self.n}")

    @property
    def k(self) -> int:
        return (self.n + 1) // 2

    @property
    def cross(self) -> range:
        """1-based rows/columns ``k .. k+omega-1`` of the ``(n+omega)``-matrix."""
        return range(self.k, self.k + self.omega)

    def cross_mask(self) -> np.ndarray:
        mask = np.zeros(self.n + self.omega, dtype=bool)
        mask[self.k - 1 : self.k - 1 + self.omega] = True
        return mask

    def kept_indices(self) -> np.ndarray:
        """0-based rows of the ``(n+omega)``-matrix that survive removal of the cross."""
        return np.flatnonzero(~self.cross_mask())


def _as_array(H) -> np.ndarray:
    return H.entries if isinstance(H, HermitianMatrix) else np.asarray(H)


def _require_unimodular(sym: TwoStepSymbol):
    if not sym.is_unimodular:
        raise ValueError("requires unimodular symbol: the residual identity B = I - T^2 needs a(x)^2 == 1")


def toeplitz_array(sym: TwoStepSymbol, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    c = np.array([fourier_coefficient_exact(sym, k) for k in range(-(n - 1), n)], dtype=np.complex128)
    idx = np.arange(n)
    return c[idx[:, None] - idx[None, :] + n - 1]


def toeplitz(sym: TwoStepSymbol, n: int) -> HermitianMatrix:
    return HermitianMatrix(toeplitz_array(sym, n), "T")


def squared_toeplitz(sym: TwoStepSymbol, n: int) -> HermitianMatrix:
    t = toeplitz_array(sym, n)
    return HermitianMatrix(_hermitian_part(t @ t), "M")


def _hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def b_exact_array(sym: TwoStepSymbol, n: int) -> np.ndarray:
    _require_unimodular(sym)
    t = toeplitz_array(sym, n)
    return _hermitian_part(np.eye(n) - t @ t)


def b_exact(sym: TwoStepSymbol, n: int) -> HermitianMatrix:
    """``I - T_n^2``, equal to ``P A Q A P`` because ``A^2 = I``."""
    return HermitianMatrix(b_exact_array(sym, n), "B_exact")


def series_tail_bound(n: int, tail: int) -> float:
    """Entrywise bound on what ``b_series`` leaves out: ``(16/pi^2)/(tail - n)``."""
    return 16.0 / math.pi**2 / (tail - n) if tail > n else math.inf


def b_series(sym: TwoStepSymbol, n: int, tail: int) -> HermitianMatrix:
    """Residual matrix from its defining series, summed over ``m in [-tail, 0] u [n+1, n+tail]``."""
    _require_unimodular(sym)
    if tail < n:
        raise ValueError(f"tail M={tail} must be >= n={n}")
    entries = kernels.series_partial_sums(n, tail, sym.angle.phase_table())
    return HermitianMatrix(entries, "B_series")


def cross_matrix(sym: TwoStepSymbol, n: int, omega: int) -> HermitianMatrix:
    """``B_{n+omega}`` restricted to the central cross, zero elsewhere (size ``n+omega``)."""
    layout = CrossLayout(n, omega)
    b = b_exact_array(sym, n + omega)
    mask = layout.cross_mask()
    keep = mask[:, None] | mask[None, :]
    return HermitianMatrix(np.where(keep, b, 0.0), "D")


def outside_cross(sym: TwoStepSymbol, n: int, omega: int) -> np.ndarray:
    """``Xi B_{n+omega} Xi``: the complement of ``cross_matrix`` (cross rows/columns zeroed)."""
    layout = CrossLayout(n, omega)
    b = b_exact_array(sym, n + omega)
    mask = layout.cross_mask()
    return np.where(mask[:, None] | mask[None, :], 0.0, b)


def f_matrix(sym: TwoStepSymbol, n: int, omega: int) -> HermitianMatrix:
    """``B_{n+omega}`` with the cross deleted and the four corner blocks pulled together (size ``n``)."""
    layout = CrossLayout(n, omega)
    b = b_exact_array(sym, n + omega)
    kept = layout.kept_indices()
    return HermitianMatrix(b[np.ix_(kept, kept)], "F")


def hs_norm(H) -> float:
    return float(np.sqrt(np.sum(np.abs(_as_array(H)) ** 2)))


def op_norm(H) -> float:
    """Largest ``|eigenvalue|`` of a Hermitian matrix."""
    from .eig import eigenvalues_array

    a = _as_array(H)
    if a.size == 0:
        return 0.0
    values = eigenvalues_array(a)
    return float(max(abs(values[0]), abs(values[-1])))


# plain-text dump: "n label" header, then rows of comma-separated "re+imi"
def format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_entry(s: str) -> complex:
    s = s.strip()
    if not s.endswith("i"):
        raise ValueError(f"bad matrix entry {s!r}")
    return complex(s[:-1] + "j")


def dumps_matrix(H: HermitianMatrix) -> str:
    lines = [f"{H.n} {H.label}"]
    for row in H.entries:
        lines.append(",".join(format_entry(complex(z)) for z in row))
    return "\n".join(lines) + "\n"


def loads_matrix(text: str) -> HermitianMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = re.fullmatch(r"\s*(\d+)\s+(\S+)\s*", lines[0])
    if header is None:
        raise ValueError(f"bad header {lines[0]!r}")
    n, label = int(header.group(1)), header.group(2)
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    rows = [[parse_entry(s) for s in ln.split(",")] for ln in lines[1:]]
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix rows")
    return HermitianMatrix(np.array(rows, dtype=np.complex128).reshape(n, n), label)


def dump_matrix(H: HermitianMatrix, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_matrix(H))


def load_matrix(path) -> HermitianMatrix:
    with open(path, encoding="utf-8") as fh:
        return loads_matrix(fh.read())
