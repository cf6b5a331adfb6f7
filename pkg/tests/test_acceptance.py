"""Acceptance criteria 1-9, one verdict line each (see the terminal summary)."""
import math
import time
from math import gcd

import numpy as np
import pytest

from toeplitz_spurious import cli
from toeplitz_spurious.analysis import (
    fit_then_verify,
    verify_entry_bounds,
    verify_fb_norm,
    verify_sandwich,
    verify_theorem1,
)
from toeplitz_spurious.eig import eigenvalues_array
from toeplitz_spurious.matrices import (
    CrossLayout,
    b_exact_array,
    b_series,
    cross_matrix,
    f_matrix,
    outside_cross,
    series_tail_bound,
    squared_toeplitz,
)
from toeplitz_spurious.symbol import make_rational_angle, pm1_symbol

from conftest import record_acceptance

ANGLES = {"0": (1, 0), "pi/2": (2, 1), "pi/3": (3, 1)}
# brute-force pipeline in tests/oracles/wrong_period_factor.py prints 89.209347
WRONG_PERIOD_FACTOR = 89.2


def sym_for(pq):
    return pm1_symbol(make_rational_angle(*pq))


def test_c1_series_matches_closed_form():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for pq in ANGLES.values():
        sym = sym_for(pq)
        for n in (4, 8, 16, 32):
            err = np.max(np.abs(b_series(sym, n, 10**5).entries - b_exact_array(sym, n)))
            worst = max(worst, err / series_tail_bound(n, 10**5))
            ok = ok and err <= 16 / math.pi**2 / (10**5 - n)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 30
    record_acceptance("1", ok, f"worst err/bound={worst:.3f}, {elapsed:.1f}s")
    assert ok


def test_c2_explicit_entry_bounds():
    t0 = time.perf_counter()
    worst = {"upperb": 0.0, "blr_estimate": 0.0}
    ok = True
    for pq in ANGLES.values():
        for rep in verify_entry_bounds(sym_for(pq), range(2, 257)):
            worst[rep.bound_id] = max(worst[rep.bound_id], max(rep.ratios))
            ok = ok and rep.passed
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60
    record_acceptance("2", ok, f"max ratios upperb={worst['upperb']:.3f} blr={worst['blr_estimate']:.3f}, {elapsed:.1f}s")
    assert ok


def test_c3_spectral_identities():
    dual = rng_err = decomp = fb = 0.0
    for pq in ANGLES.values():
        sym = sym_for(pq)
        omega = sym.angle.omega
        for n in list(range(1, 65)) + [96, 128, 192, 256]:
            b = b_exact_array(sym, n)
            mu = eigenvalues_array(squared_toeplitz(sym, n))
            lam = eigenvalues_array(b)
            dual = max(dual, np.max(np.abs(mu - (1 - lam[::-1]))))
            for v in (mu, lam):
                rng_err = max(rng_err, -v[0], v[-1] - 1)
            if n > omega:
                big = b_exact_array(sym, n + omega)
                d = cross_matrix(sym, n, omega).entries
                decomp = max(decomp, np.max(np.abs(big - (outside_cross(sym, n, omega) + d))))
                f = eigenvalues_array(f_matrix(sym, n, omega))
                x = eigenvalues_array(outside_cross(sym, n, omega))
                fp, xp = f[f > 1e-10], x[x > 1e-10]
                if len(fp) != len(xp):
                    fb = math.inf
                else:
                    fb = max(fb, np.max(np.abs(fp - xp), initial=0.0))
    ok = dual <= 1e-12 and rng_err <= 1e-12 and decomp <= 1e-15 and fb <= 1e-10
    record_acceptance("3", ok, f"duality {dual:.1e}, range {max(rng_err, 0):.1e}, decomposition {decomp:.1e}, F vs cross-free {fb:.1e}")
    assert ok


def test_c4_figure1_and_rate(tmp_path):
    out = tmp_path / "fig1.csv"
    assert cli.main(["figure1", "--p", "2", "--q", "1", "--preset", "zero_one",
                     "--n-start", "2", "--n-stop", "60", "--out", str(out)]) == 0
    rows = [line.split(",") for line in out.read_text().splitlines() if not line.startswith("#")][1:]
    per_n = {}
    for n, parity, v in rows:
        per_n.setdefault(int(n), []).append(float(v))
        assert parity == ("even" if int(n) % 2 == 0 else "odd")
    per_n = {n: np.array(v) for n, v in per_n.items()}

    def mismatch(n, m):
        mid = per_n[n][(per_n[n] > 0.2) & (per_n[n] < 0.8)]
        return max((float(np.min(np.abs(per_n[m] - v))) for v in mid), default=0.0)

    # columns repeat with period 4: mid-gap eigenvalues reappear at n+4 but not at n+1, n+2, n+3
    same = max(mismatch(n, n + 4) for n in range(20, 57))
    other = min(mismatch(n, n + s) for s in (1, 2, 3) for n in range(20, 57))
    pattern_ok = same < 0.02 and other > 0.05

    # the zero/one and -1/+1 presets share eigenvectors, so mu strings coincide after the affine map
    t0 = time.perf_counter()
    rep = verify_theorem1(sym_for((2, 1)), 0.1, range(40, 201), k_hat=1.0, calibrate_upto=80)
    elapsed = time.perf_counter() - t0
    tail = max(r for n, r in zip(rep.grid, rep.ratios) if n > 80)
    ok = pattern_ok and rep.passed and not rep.vacuous and elapsed < 300
    record_acceptance("4", ok, f"column drift at +4 {same:.4f} vs >= {other:.4f} at +1..3, fitted C={rep.fitted_constant:.3e}, tail max={tail:.3e}, {elapsed:.1f}s")
    assert ok


def test_c5_wrong_period_control():
    sym = sym_for((2, 1))
    right = verify_theorem1(sym, 0.1, [100, 200], calibrate_upto=100)
    wrong = verify_theorem1(sym, 0.1, [100, 200], omega=3, calibrate_upto=100)
    factor = wrong.ratio_at(200) / right.ratio_at(200)
    ok = factor >= WRONG_PERIOD_FACTOR
    record_acceptance("5", ok, f"factor={factor:.4f}, threshold {WRONG_PERIOD_FACTOR}")
    assert ok


FB_GRID = [16, 32, 64, 128, 256]


@pytest.fixture(scope="module")
def fb_report():
    return verify_fb_norm(sym_for((2, 1)), FB_GRID, calibrate_upto=32)


def test_c6a_hs_norm_ratio(fb_report):
    hs = fb_report.details["hs_ratios"]
    fitted, ok = fit_then_verify(FB_GRID, hs, 32)
    record_acceptance("6a", ok, "HS ratios " + ", ".join(f"{x:.4f}" for x in hs))
    assert ok


def test_c6b_block_envelopes(fb_report):
    verdicts = fb_report.details["verdicts"]
    ok = all(verdicts[f"case{i}"]["pass"] for i in range(1, 5))
    detail = "; ".join(
        f"case{i} " + ("pass" if verdicts[f"case{i}"]["pass"] else "fail") + " ["
        + ", ".join(f"{x:.4f}" for x in fb_report.details[f"case{i}_ratios"]) + "]"
        for i in range(1, 5)
    )
    record_acceptance("6b", ok, detail)
    assert ok


def test_c7_counting_sandwich():
    sym = sym_for((2, 1))
    lams = [0.2, 0.4, 0.6, 0.8]
    by_lambda = verify_sandwich(sym, [40, 80, 160], lams)
    by_eps = verify_sandwich(sym, [40, 80, 160], lams, epsilon=0.1)
    ok = by_lambda.passed and by_eps.passed
    record_acceptance("7", ok, f"C fitted at n=40: {by_lambda.fitted_constant:.4f} (lambda scaling), "
                               f"{by_eps.fitted_constant:.4f} (epsilon scaling)")
    assert ok


def test_c8_period_congruence():
    worst = 0.0
    checked = 0
    for p in range(1, 51):
        for q in range(p):
            if gcd(p, q) != 1:
                continue
            a = make_rational_angle(p, q)
            z = np.exp(1j * a.omega * (math.pi + a.L))
            worst = max(worst, abs(z - 1))
            checked += 1
    ok = worst <= 1e-12
    record_acceptance("8", ok, f"{checked} pairs, worst |exp(i omega (pi+L)) - 1| = {worst:.1e}")
    assert ok


DETERMINISM_RUNS = [
    ["spectrum", "--n", "24", "--matrix", "B"],
    ["spectrum", "--n", "20", "--matrix", "F", "--format", "json"],
    ["figure1"],
    ["bounds", "--n-start", "8", "--n-stop", "40", "--n-step", "8", "--format", "json"],
    ["periodicity", "--n-start", "40", "--n-stop", "60"],
    ["gapcount", "--n-start", "16", "--n-stop", "64", "--n-step", "16"],
]


def test_c9_cli_determinism(tmp_path):
    same = []
    for i, argv in enumerate(DETERMINISM_RUNS):
        files = [tmp_path / f"{i}_{k}.out" for k in range(2)]
        codes = [cli.main(argv + ["--out", str(f)]) for f in files]
        same.append(codes[0] == codes[1] and files[0].read_bytes() == files[1].read_bytes())
    ok = all(same)
    record_acceptance("9", ok, f"{sum(same)}/{len(same)} commands byte-identical")
    assert ok
