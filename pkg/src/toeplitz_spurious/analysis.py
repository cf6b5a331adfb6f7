"""Eigenvalue strings across ``n`` and finite-grid checks of the asymptotic bounds.

Bounds whose constants are not explicit are checked by fit-then-verify: the
constant is fitted as the largest observed ratio on a calibration prefix of
the ``n``-grid, and every ratio on the remaining tail must stay within
``REL_TOL`` of it. Bounds with explicit constants are asserted directly.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .eig import counting_above, eigenvalues_array
from .matrices import CrossLayout, b_exact_array, toeplitz_array
from .symbol import RationalAngle, TwoStepSymbol

REL_TOL = 0.01
DEFAULT_K_HAT = 1.0


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    params: dict
    grid: list
    ratios: list
    fitted_constant: float
    passed: bool
    vacuous: bool = False
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.grid) != len(self.ratios):
            raise ValueError("grid and ratios differ in length")
        if any(not math.isfinite(r) or r < 0 for r in self.ratios):
            raise ValueError("ratios must be finite and non-negative")

    def ratio_at(self, n: int) -> float:
        return self.ratios[self.grid.index(n)]

    def to_json(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "params": self.params,
            "grid": [{"n": int(n), "ratio": float(r)} for n, r in zip(self.grid, self.ratios)],
            "fitted_constant": float(self.fitted_constant),
            "pass": bool(self.passed),
            "vacuous": bool(self.vacuous),
            "details": self.details,
        }


@dataclass(frozen=True)
class EigenString:
    """Eigenvalue ``mu_j(M_n)`` followed along ``n0, n0+step, ...``."""

    angle: RationalAngle
    j: int
    epsilon: float
    step: int
    grid: list
    values: list
    truncated: bool = False
    truncation_reason: str | None = None

    @property
    def diffs(self) -> list:
        return [abs(b - a) for a, b in zip(self.values, self.values[1:])]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "mu", "diff"])
        prev = None
        for n, mu in zip(self.grid, self.values):
            w.writerow([n, f"{mu:.17g}", "" if prev is None else f"{abs(mu - prev):.17g}"])
            prev = mu
        return buf.getvalue()


def fit_then_verify(grid, ratios, calibrate_upto) -> tuple[float, bool]:
    """Fit the constant on ``n <= calibrate_upto`` and check the tail against it."""
    cal = [r for n, r in zip(grid, ratios) if n <= calibrate_upto]
    tail = [r for n, r in zip(grid, ratios) if n > calibrate_upto]
    if not cal or not tail:
        raise ValueError(f"calibration split at n={calibrate_upto} leaves an empty prefix or tail")
    fitted = float(max(cal))
    return fitted, bool(max(tail) <= fitted * (1.0 + REL_TOL))


def default_calibration(grid) -> float:
    """End of the first quartile of the grid's range."""
    return grid[0] + (grid[-1] - grid[0]) / 4.0


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _residual_spectra(sym, ns, workers=None) -> dict:
    """Descending eigenvalues of ``B_n`` for each ``n``."""
    ns = sorted(set(int(n) for n in ns))
    values = _map(lambda n: eigenvalues_array(b_exact_array(sym, n))[::-1], ns, workers)
    return dict(zip(ns, values))


def _log2_envelope(n, omega, scale):
    return omega * (1.0 + math.log(n) ** 2) / (scale * n)


def _check_grid(n_grid, omega, scale, k_hat, what):
    grid = sorted(set(int(n) for n in n_grid))
    if len(grid) < 2:
        raise ValueError("need at least two grid points")
    low = k_hat * omega / scale
    bad = [n for n in grid if n < low]
    if bad:
        raise ValueError(f"{what}: grid points {bad[:5]} lie below K*omega/{scale} = {low:g}")
    return grid


def track_string(sym: TwoStepSymbol, j: int, n0: int, N: int, epsilon: float, step: int | None = None) -> EigenString:
    """``mu_j(M_n)`` for ``n = n0, n0+step, ..., n0+N*step`` while ``mu_j < 1 - epsilon``."""
    step = sym.angle.omega if step is None else int(step)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if n0 < step + 1:
        raise ValueError(f"n0={n0} must be >= step + 1 = {step + 1}")
    if not 1 <= j <= n0:
        raise ValueError(f"index j={j} exceeds the dimension n0={n0}")
    grid, values = [], []
    reason = None
    for i in range(N + 1):
        n = n0 + i * step
        lam = eigenvalues_array(b_exact_array(sym, n))[::-1]
        mu = 1.0 - lam[j - 1]
        if not mu < 1.0 - epsilon:
            reason = f"mu_{j} = {mu:.6g} >= 1 - epsilon at n={n}"
            break
        grid.append(n)
        values.append(float(mu))
    return EigenString(sym.angle, j, epsilon, step, grid, values, reason is not None, reason)


def admissible_indices(lam_desc: np.ndarray, epsilon: float) -> np.ndarray:
    """1-based ``j`` with ``lambda_j(B_n) > epsilon`` (equivalently ``mu_j < 1 - epsilon``)."""
    return np.flatnonzero(np.asarray(lam_desc) > epsilon) + 1


def verify_theorem1(
    sym: TwoStepSymbol,
    epsilon: float,
    n_grid,
    omega: int | None = None,
    k_hat: float = DEFAULT_K_HAT,
    calibrate_upto: float | None = None,
    workers: int | None = None,
) -> BoundReport:
    """Index-matched drift ``max_j |mu_j(M_n) - mu_j(M_{n+omega})|`` against ``omega(1+log^2 n)/(epsilon n)``.

    ``omega`` overrides the period of the angle (for wrong-period controls);
    the envelope always uses the step actually taken.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    step = sym.angle.omega if omega is None else int(omega)
    grid = _check_grid(n_grid, step, epsilon, k_hat, "theorem 1")
    spectra = _residual_spectra(sym, grid + [n + step for n in grid], workers)
    ratios, max_diffs, counts = [], [], []
    for n in grid:
        lam, lam_next = spectra[n], spectra[n + step]
        adm = admissible_indices(lam, epsilon) - 1
        counts.append(len(adm))
        d = float(np.max(np.abs(lam[adm] - lam_next[adm]))) if len(adm) else 0.0
        max_diffs.append(d)
        ratios.append(d / _log2_envelope(n, step, epsilon))
    cal = default_calibration(grid) if calibrate_upto is None else calibrate_upto
    params = {**sym.angle.to_json(), "step": step, "epsilon": epsilon, "k_hat": k_hat, "calibrate_upto": cal}
    if not any(counts):
        return BoundReport("th1_rate", params, grid, ratios, 0.0, False, vacuous=True,
                           details={"max_diff": max_diffs, "admissible": counts})
    fitted, ok = fit_then_verify(grid, ratios, cal)
    return BoundReport("th1_rate", params, grid, ratios, fitted, ok,
                       details={"max_diff": max_diffs, "admissible": counts})


def upperb_envelope(n: int) -> np.ndarray:
    """``(16/pi^2)(1 + log n)/|l - r|`` (infinite on the diagonal)."""
    idx = np.arange(1, n + 1)
    gap = np.abs(idx[:, None] - idx[None, :]).astype(float)
    with np.errstate(divide="ignore"):
        return 16.0 / math.pi**2 * (1.0 + math.log(n)) / gap


def blr_envelope(n: int) -> np.ndarray:
    """``(8/pi^2)(1/(n+1-r) + 1/l)`` at ``(r, l)``; meaningful for ``r >= l``."""
    idx = np.arange(1, n + 1)
    return 8.0 / math.pi**2 * (1.0 / (n + 1 - idx)[:, None] + 1.0 / idx[None, :])


def verify_entry_bounds(sym: TwoStepSymbol, n) -> tuple[BoundReport, BoundReport]:
    """Both entrywise residual bounds, with their explicit constants, for ``r >= l``."""
    ns = [int(n)] if np.isscalar(n) else sorted(set(int(x) for x in n))
    if ns[0] < 2:
        raise ValueError("entry bounds need n >= 2")
    up, blr = [], []
    for m in ns:
        b = np.abs(b_exact_array(sym, m))
        lower = np.tril(np.ones((m, m), dtype=bool))
        strict = np.tril(np.ones((m, m), dtype=bool), -1)
        up.append(float(np.max(b[strict] / upperb_envelope(m)[strict])))
        blr.append(float(np.max(b[lower] / blr_envelope(m)[lower])))
    params = sym.angle.to_json()
    return (
        BoundReport("upperb", params, ns, up, max(up), max(up) <= 1.0),
        BoundReport("blr_estimate", params, ns, blr, max(blr), max(blr) <= 1.0),
    )


def fb_blocks(sym: TwoStepSymbol, n: int, omega: int) -> dict:
    """``F_n - B_n`` and its four block sums of squared moduli (upper-left, lower-right, upper-right, lower-left)."""
    layout = CrossLayout(n, omega)
    big = b_exact_array(sym, n + omega)
    kept = layout.kept_indices()
    diff = big[np.ix_(kept, kept)] - b_exact_array(sym, n)
    sq = np.abs(diff) ** 2
    K = layout.k - 1
    return {
        "diff": diff,
        "case1": float(sq[:K, :K].sum()),
        "case2": float(sq[K:, K:].sum()),
        "case3": float(sq[:K, K:].sum()),
        "case4": float(sq[K:, :K].sum()),
    }


def verify_fb_norm(
    sym: TwoStepSymbol,
    n_grid,
    omega: int | None = None,
    calibrate_upto: float | None = None,
    workers: int | None = None,
) -> BoundReport:
    """``||F_n - B_n||`` against ``omega(1 + log n)/n``.

    The report's ratios use the operator norm; ``details`` carries the
    Hilbert-Schmidt ratios and the four block sums (against ``omega^2/n^2`` for
    the diagonal blocks and ``omega^2 (1 + log^2 n)/n^2`` for the off-diagonal
    ones), each with its own fit-then-verify verdict.
    """
    omega = sym.angle.omega if omega is None else int(omega)
    grid = sorted(set(int(n) for n in n_grid))
    if grid[0] <= omega:
        raise ValueError(f"every n must exceed omega={omega}")

    def one(n):
        blocks = fb_blocks(sym, n, omega)
        vals = eigenvalues_array(blocks["diff"])
        op = max(abs(vals[0]), abs(vals[-1]))
        hs = math.sqrt(blocks["case1"] + blocks["case2"] + blocks["case3"] + blocks["case4"])
        env = omega * (1.0 + math.log(n)) / n
        diag_env = omega**2 / n**2
        off_env = omega**2 * (1.0 + math.log(n) ** 2) / n**2
        return {
            "op": float(op) / env,
            "hs": hs / env,
            "case1": blocks["case1"] / diag_env,
            "case2": blocks["case2"] / diag_env,
            "case3": blocks["case3"] / off_env,
            "case4": blocks["case4"] / off_env,
        }

    rows = _map(one, grid, workers)
    cal = default_calibration(grid) if calibrate_upto is None else calibrate_upto
    series = {key: [r[key] for r in rows] for key in rows[0]}
    verdicts = {}
    for key, values in series.items():
        fitted, ok = fit_then_verify(grid, values, cal)
        verdicts[key] = {"fitted_constant": fitted, "pass": ok}
    params = {**sym.angle.to_json(), "omega_used": omega, "calibrate_upto": cal}
    details = {f"{key}_ratios": values for key, values in series.items() if key != "op"}
    details["verdicts"] = verdicts
    return BoundReport("fb_norm", params, grid, series["op"], verdicts["op"]["fitted_constant"],
                       verdicts["op"]["pass"], details=details)


def _required_shift(f_desc, n_b, lam):
    """Smallest shift making the counting sandwich hold at ``lam`` (upper side taken as non-strict)."""
    need = 0.0
    if n_b < len(f_desc):
        need = max(need, f_desc[n_b] - lam)
    if n_b > 0:
        need = max(need, lam - f_desc[n_b - 1])
    return need


def verify_sandwich(
    sym: TwoStepSymbol,
    n_grid,
    lambda_grid,
    omega: int | None = None,
    epsilon: float | None = None,
    k_hat: float = DEFAULT_K_HAT,
    fit_points: int = 401,
    workers: int | None = None,
) -> BoundReport:
    """Counting sandwich between ``F_n`` and ``B_{n+omega}``.

    The shift is ``C omega (1 + log^2 n)/(s n)`` with ``s = lambda`` (or
    ``s = epsilon`` when given). ``C`` is fitted at the smallest ``n`` over
    ``lambda_grid`` plus ``fit_points`` equispaced values in ``[min(lambda_grid), 1]``;
    both inequalities are then evaluated at every larger ``n`` on ``lambda_grid``.
    """
    omega = sym.angle.omega if omega is None else int(omega)
    lambdas = sorted(float(x) for x in lambda_grid)
    if lambdas[0] <= 0:
        raise ValueError("lambda grid must be positive")
    grid = _check_grid(n_grid, omega, lambdas[0] if epsilon is None else epsilon, k_hat, "sandwich")

    def spectra(n):
        layout = CrossLayout(n, omega)
        big = b_exact_array(sym, n + omega)
        kept = layout.kept_indices()
        f = eigenvalues_array(big[np.ix_(kept, kept)])[::-1]
        b = eigenvalues_array(big)[::-1]
        return f, b

    spec = dict(zip(grid, _map(spectra, grid, workers)))

    def ratio(n, lam):
        f, b = spec[n]
        n_b = counting_above(b[::-1], lam)
        s = lam if epsilon is None else epsilon
        return _required_shift(f, n_b, lam) / _log2_envelope(n, omega, s)

    n0 = grid[0]
    fit_lams = sorted(set(lambdas) | set(np.linspace(lambdas[0], 1.0, fit_points).tolist()))
    c_hat = max(ratio(n0, lam) for lam in fit_lams)

    ratios, counts, ok = [], [], True
    for n in grid:
        ratios.append(max(ratio(n, lam) for lam in lambdas))
        if n == n0:
            continue
        f, b = spec[n]
        for lam in lambdas:
            shift = c_hat * _log2_envelope(n, omega, lam if epsilon is None else epsilon)
            lo = counting_above(f[::-1], lam + shift)
            mid = counting_above(b[::-1], lam)
            hi = counting_above(f[::-1], lam - shift)
            counts.append({"n": n, "lambda": lam, "n_plus_F_up": lo, "n_plus_B": mid, "n_plus_F_down": hi})
            ok = ok and lo <= mid <= hi
    params = {**sym.angle.to_json(), "omega_used": omega, "lambdas": lambdas, "epsilon": epsilon,
              "k_hat": k_hat, "fit_n": n0}
    return BoundReport("sandwich", params, grid, ratios, c_hat, ok, details={"counts": counts})


def gap_count(sym: TwoStepSymbol, n: int, alpha: float, beta: float) -> int:
    """Eigenvalues of ``T_n`` strictly inside ``(alpha, beta)``."""
    if not alpha < beta:
        raise ValueError("need alpha < beta")
    vals = eigenvalues_array(toeplitz_array(sym, n))
    return int(np.count_nonzero((vals > alpha) & (vals < beta)))


def gap_count_report(sym: TwoStepSymbol, n_grid, alpha: float, beta: float, workers=None) -> BoundReport:
    """Gap counts and ``count / log n``; informational, so only a vacuous run fails."""
    grid = sorted(set(int(n) for n in n_grid))
    if grid[0] < 2:
        raise ValueError("gap counts need n >= 2 (log 1 = 0)")
    counts = _map(lambda n: gap_count(sym, n, alpha, beta), grid, workers)
    ratios = [c / math.log(n) for c, n in zip(counts, grid)]
    vacuous = not any(counts)
    params = {**sym.angle.to_json(), "low_value": sym.low_value, "high_value": sym.high_value,
              "alpha": alpha, "beta": beta}
    return BoundReport("gap_count", params, grid, ratios, max(ratios), not vacuous, vacuous=vacuous,
                       details={"counts": counts})


def toeplitz_drift(sym: TwoStepSymbol, n_grid, step: int | None = None, window=(0.05, 0.95)) -> list:
    """Raw drift of ``T_n`` gap eigenvalues between ``n`` and ``n+step``, matched by order inside ``window``.

    Records the rate for ``T_n`` itself; no bound is asserted on it.
    """
    step = sym.angle.omega if step is None else int(step)
    a, b = window
    out = []
    for n in sorted(set(int(x) for x in n_grid)):
        v0 = eigenvalues_array(toeplitz_array(sym, n))
        v1 = eigenvalues_array(toeplitz_array(sym, n + step))
        g0 = v0[(v0 > a) & (v0 < b)]
        g1 = v1[(v1 > a) & (v1 < b)]
        k = min(len(g0), len(g1))
        out.append({"n": n, "in_window": len(g0), "max_drift": float(np.max(np.abs(g0[:k] - g1[:k]))) if k else 0.0})
    return out
