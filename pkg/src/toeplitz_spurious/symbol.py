"""Two-step symbols with a rational jump and their Fourier coefficients.

The symbol takes ``low`` on ``[-pi, L)`` and ``high`` on ``[L, pi)`` with
``L = pi*q/p``. Coefficients are normalized as

    c_k = (1/2pi) * integral_{-pi}^{pi} a(x) exp(i k x) dx

so that the Toeplitz section has entry ``c_{r-l}`` at position ``(r, l)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class RationalAngle:
    """Jump location ``L = pi*q/p`` in lowest terms, with its period ``omega``."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p}")
        if not 0 <= self.q < self.p:
            raise ValueError(f"need 0 <= q < p so that L = pi*q/p lies in [0, pi); got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"(p, q) = ({self.p}, {self.q}) is not in lowest terms")

    @property
    def L(self) -> float:
        return math.pi * self.q / self.p

    @property
    def omega(self) -> int:
        if self.q == 0:
            return 2
        if self.p % 2 == 1 and self.q % 2 == 1:
            return self.p
        return 2 * self.p

    def phase(self, k: int) -> complex:
        """``exp(i k (L + pi))`` with the angle reduced exactly mod 2pi."""
        # (L + pi) = pi*(p+q)/p, so the phase is exp(i*pi*j/p) with j = k(p+q) mod 2p
        j = (k * (self.p + self.q)) % (2 * self.p)
        return _unit(j, self.p)

    def phase_table(self) -> np.ndarray:
        """``exp(i k (L+pi))`` for ``k = 0..2p-1``; the sequence is 2p-periodic in k."""
        return np.array([self.phase(k) for k in range(2 * self.p)], dtype=np.complex128)

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "omega": self.omega}


@lru_cache(maxsize=4096)
def _unit(j: int, p: int) -> complex:
    # exp(i*pi*j/p) for 0 <= j < 2p; the exact cases avoid sin(pi) != 0 noise
    if j == 0:
        return 1.0 + 0.0j
    if j == p:
        return -1.0 + 0.0j
    if 2 * j == p:
        return 1.0j
    if 2 * j == 3 * p:
        return -1.0j
    return cmath.exp(1j * math.pi * j / p)


def make_rational_angle(p: int, q: int) -> RationalAngle:
    """Reduce ``(p, q)`` to lowest terms and build the angle ``L = pi*q/p``.

    >>> make_rational_angle(2, 1).omega
    4
    >>> make_rational_angle(6, 0)
    RationalAngle(p=1, q=0)
    """
    p, q = int(p), int(q)
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    if q < 0 or q >= p:
        raise ValueError(f"need 0 <= q < p so that L = pi*q/p lies in [0, pi); got p={p}, q={q}")
    g = math.gcd(p, q)
    return RationalAngle(p // g, q // g)


@dataclass(frozen=True)
class TwoStepSymbol:
    angle: RationalAngle
    low_value: float = -1.0
    high_value: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.low_value) and math.isfinite(self.high_value)):
            raise ValueError("symbol values must be finite")
        if self.low_value == self.high_value:
            raise ValueError("a two-step symbol needs low_value != high_value")

    @property
    def is_unimodular(self) -> bool:
        """True for the (-1, +1) preset, where ``a(x)**2 == 1``."""
        return self.low_value == -1.0 and self.high_value == 1.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < self.angle.L, self.low_value, self.high_value)

    def coefficient(self, k: int) -> complex:
        return fourier_coefficient_exact(self, k)

    def coefficients(self, kmax: int) -> np.ndarray:
        """``c_k`` for ``k = -kmax..kmax`` (index ``k + kmax``)."""
        return np.array([fourier_coefficient_exact(self, k) for k in range(-kmax, kmax + 1)], dtype=np.complex128)


def pm1_symbol(angle: RationalAngle) -> TwoStepSymbol:
    return TwoStepSymbol(angle, -1.0, 1.0)


def zero_one_symbol(angle: RationalAngle) -> TwoStepSymbol:
    return TwoStepSymbol(angle, 0.0, 1.0)


def _pm1_coefficient(angle: RationalAngle, k: int) -> complex:
    if k == 0:
        return complex(-angle.q / angle.p)
    if k < 0:
        return _pm1_coefficient(angle, -k).conjugate()
    sign = 1.0 if k % 2 == 0 else -1.0
    # (1/pi) * (-1)^k / (ik) * (1 - e^{ik(L+pi)})
    return sign / (1j * k * math.pi) * (1.0 - angle.phase(k))


def fourier_coefficient_exact(sym: TwoStepSymbol, k: int) -> complex:
    """Closed-form ``c_k``; general values go through the affine map from (-1, +1)."""
    k = int(k)
    scale = (sym.high_value - sym.low_value) / 2.0
    shift = (sym.high_value + sym.low_value) / 2.0
    value = scale * _pm1_coefficient(sym.angle, k)
    if k == 0:
        value += shift
    return complex(value)


_GAUSS_ORDER = 4


@lru_cache(maxsize=8)
def _gauss_nodes(order: int):
    return np.polynomial.legendre.leggauss(order)


def fourier_coefficient_quadrature(sym: TwoStepSymbol, k: int, panels: int) -> complex:
    """Composite Gauss-Legendre approximation of ``c_k``.

    ``panels`` are shared between the two pieces in proportion to their
    lengths (at least one each), so no panel straddles the jump.
    """
    if panels < 2:
        raise ValueError("need at least 2 panels")
    L = sym.angle.L
    left_len, right_len = L + math.pi, math.pi - L
    n_left = min(panels - 1, max(1, round(panels * left_len / (2 * math.pi))))
    n_right = panels - n_left
    nodes, weights = _gauss_nodes(_GAUSS_ORDER)
    total = 0.0 + 0.0j
    for a, b, m, value in ((-math.pi, L, n_left, sym.low_value), (L, math.pi, n_right, sym.high_value)):
        edges = np.linspace(a, b, m + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        w = (half[:, None] * weights[None, :]).ravel()
        total += value * np.dot(w, np.exp(1j * k * x))
    return complex(total / (2 * math.pi))


def affine_map_between_presets(sym_from: TwoStepSymbol, sym_to: TwoStepSymbol) -> tuple[float, float]:
    """``(alpha, beta)`` with ``sym_to = alpha * sym_from + beta`` pointwise."""
    if sym_from.angle != sym_to.angle:
        raise ValueError("symbols have different jump locations")
    alpha = (sym_to.high_value - sym_to.low_value) / (sym_from.high_value - sym_from.low_value)
    beta = sym_to.low_value - alpha * sym_from.low_value
    return alpha, beta
