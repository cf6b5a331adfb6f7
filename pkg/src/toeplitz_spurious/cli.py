"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 eigensolver non-convergence,
4 a requested report failed, 5 a report was vacuous.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

from . import analysis
from .eig import ConvergenceError, eigenvalues_array
from .matrices import b_exact_array, b_series, cross_matrix, f_matrix, squared_toeplitz, toeplitz_array
from .symbol import TwoStepSymbol, make_rational_angle, pm1_symbol, zero_one_symbol

EXIT_INVALID = 2
EXIT_CONVERGENCE = 3
EXIT_FAILED = 4
EXIT_VACUOUS = 5

COMMANDS = ("spectrum", "periodicity", "bounds", "figure1", "gapcount")


@dataclass
class RunConfig:
    command: str
    p: int = 2
    q: int = 1
    preset: str = "pm1"
    n: int | None = None
    n_start: int | None = None
    n_stop: int | None = None
    n_step: int | None = None
    epsilon: float = 0.1
    tail: int | None = None
    matrix: str = "T"
    omega: int | None = None
    k_hat: float = analysis.DEFAULT_K_HAT
    calibrate_upto: float | None = None
    alpha: float = 0.1
    beta: float = 0.9
    lambdas: str | None = None
    format: str = "csv"
    out: str = "-"

    def header(self) -> dict:
        """Everything that determines the output (the destination path does not)."""
        d = asdict(self)
        d.pop("out")
        return d


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def build_symbol(cfg: RunConfig) -> TwoStepSymbol:
    angle = make_rational_angle(cfg.p, cfg.q)
    return pm1_symbol(angle) if cfg.preset == "pm1" else zero_one_symbol(angle)


def n_range(cfg: RunConfig, default_step: int = 1) -> list[int]:
    if cfg.n_start is None or cfg.n_stop is None:
        if cfg.n is not None:
            return [cfg.n]
        raise ValueError("give --n-start and --n-stop")
    step = cfg.n_step or default_step
    if step < 1 or cfg.n_stop < cfg.n_start:
        raise ValueError("need n-step >= 1 and n-stop >= n-start")
    return list(range(cfg.n_start, cfg.n_stop + 1, step))


def _meta_lines(cfg: RunConfig, sym: TwoStepSymbol) -> list[str]:
    a = sym.angle
    return [
        f"# toeplitz-spurious {cfg.command}",
        "# config " + json.dumps(cfg.header()),
        f"# p={a.p} q={a.q} L={_fmt(a.L)} omega={a.omega} preset={cfg.preset}",
    ]


def _csv(meta: list[str], header: list[str], rows) -> str:
    buf = io.StringIO()
    for line in meta:
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(cfg: RunConfig, sym: TwoStepSymbol, payload: dict) -> str:
    doc = {"command": cfg.command, "config": cfg.header(), "angle": sym.angle.to_json(), **payload}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _matrix_for(cfg: RunConfig, sym: TwoStepSymbol, n: int):
    m = cfg.matrix
    if m == "T":
        return toeplitz_array(sym, n)
    if m == "M":
        return squared_toeplitz(sym, n).entries
    if m == "B":
        return b_series(sym, n, cfg.tail).entries if cfg.tail else b_exact_array(sym, n)
    omega = cfg.omega or sym.angle.omega
    if m == "F":
        return f_matrix(sym, n, omega).entries
    if m == "D":
        return cross_matrix(sym, n, omega).entries
    raise ValueError(f"unknown matrix {m!r}")


def cmd_spectrum(cfg: RunConfig) -> tuple[str, int]:
    sym = build_symbol(cfg)
    if cfg.n is None:
        raise ValueError("spectrum needs --n")
    values = eigenvalues_array(_matrix_for(cfg, sym, cfg.n))
    meta = _meta_lines(cfg, sym) + [f"# matrix={cfg.matrix} n={cfg.n}"]
    if cfg.format == "json":
        return _json(cfg, sym, {"matrix": cfg.matrix, "n": cfg.n, "eigenvalues": [float(v) for v in values]}), 0
    return _csv(meta, ["index", "eigenvalue"], [[i + 1, _fmt(v)] for i, v in enumerate(values)]), 0


def cmd_figure1(cfg: RunConfig) -> tuple[str, int]:
    """Eigenvalues of ``T_n`` inside (low, high), one row each, with an even/odd marker."""
    sym = build_symbol(cfg)
    lo, hi = sorted((sym.low_value, sym.high_value))
    rows = []
    for n in n_range(cfg):
        for v in eigenvalues_array(toeplitz_array(sym, n)):
            if lo < v < hi:
                rows.append([n, "even" if n % 2 == 0 else "odd", _fmt(v)])
    if cfg.format == "json":
        points = [{"n": r[0], "parity": r[1], "eigenvalue": float(r[2])} for r in rows]
        return _json(cfg, sym, {"points": points}), 0
    return _csv(_meta_lines(cfg, sym), ["n", "parity", "eigenvalue"], rows), 0


def _exit_for(reports) -> int:
    if any(r.vacuous for r in reports):
        return EXIT_VACUOUS
    if not all(r.passed for r in reports):
        return EXIT_FAILED
    return 0


def _reports_csv(cfg, sym, reports) -> str:
    meta = _meta_lines(cfg, sym)
    for r in reports:
        meta.append(f"# {r.bound_id} fitted_constant={_fmt(r.fitted_constant)} pass={str(r.passed).lower()}"
                    f" vacuous={str(r.vacuous).lower()}")
    rows = [[r.bound_id, n, _fmt(x)] for r in reports for n, x in zip(r.grid, r.ratios)]
    return _csv(meta, ["bound_id", "n", "ratio"], rows)


def cmd_bounds(cfg: RunConfig) -> tuple[str, int]:
    sym = build_symbol(cfg)
    grid = n_range(cfg)
    reports = list(analysis.verify_entry_bounds(sym, grid))
    omega = cfg.omega or sym.angle.omega
    fb_grid = [n for n in grid if n > omega]
    if len(fb_grid) >= 2:
        reports.append(analysis.verify_fb_norm(sym, fb_grid, omega=omega, calibrate_upto=cfg.calibrate_upto))
    if cfg.lambdas:
        lams = [float(x) for x in cfg.lambdas.split(",")]
        reports.append(analysis.verify_sandwich(sym, grid, lams, omega=omega, k_hat=cfg.k_hat))
    if cfg.format == "json":
        return _json(cfg, sym, {"reports": [r.to_json() for r in reports]}), _exit_for(reports)
    return _reports_csv(cfg, sym, reports), _exit_for(reports)


def cmd_periodicity(cfg: RunConfig) -> tuple[str, int]:
    sym = build_symbol(cfg)
    step = cfg.omega or sym.angle.omega
    grid = n_range(cfg, default_step=step)
    report = analysis.verify_theorem1(sym, cfg.epsilon, grid, omega=step, k_hat=cfg.k_hat,
                                      calibrate_upto=cfg.calibrate_upto)
    lam0 = eigenvalues_array(b_exact_array(sym, grid[0]))[::-1]
    n_steps = (grid[-1] - grid[0]) // step
    strings = [analysis.track_string(sym, int(j), grid[0], n_steps, cfg.epsilon, step=step)
               for j in analysis.admissible_indices(lam0, cfg.epsilon)]
    code = _exit_for([report])
    if cfg.format == "json":
        payload = {
            "reports": [report.to_json()],
            "strings": [
                {"j": s.j, "step": s.step, "truncated": s.truncated, "truncation_reason": s.truncation_reason,
                 "rows": [{"n": n, "mu": mu, "diff": d} for n, mu, d in zip(s.grid, s.values, [None] + s.diffs)]}
                for s in strings
            ],
        }
        return _json(cfg, sym, payload), code
    meta = _meta_lines(cfg, sym) + [
        f"# th1_rate fitted_constant={_fmt(report.fitted_constant)} pass={str(report.passed).lower()}"
        f" vacuous={str(report.vacuous).lower()}"
    ]
    rows = []
    for s in strings:
        for n, mu, d in zip(s.grid, s.values, [None] + s.diffs):
            rows.append([s.j, n, _fmt(mu), "" if d is None else _fmt(d)])
    return _csv(meta, ["j", "n", "mu", "diff"], rows), code


def cmd_gapcount(cfg: RunConfig) -> tuple[str, int]:
    sym = build_symbol(cfg)
    report = analysis.gap_count_report(sym, n_range(cfg), cfg.alpha, cfg.beta)
    if cfg.format == "json":
        return _json(cfg, sym, {"reports": [report.to_json()]}), _exit_for([report])
    counts = report.details["counts"]
    rows = [[n, c, _fmt(r)] for n, c, r in zip(report.grid, counts, report.ratios)]
    return _csv(_meta_lines(cfg, sym), ["n", "count", "count_over_log_n"], rows), _exit_for([report])


HANDLERS = {
    "spectrum": cmd_spectrum,
    "periodicity": cmd_periodicity,
    "bounds": cmd_bounds,
    "figure1": cmd_figure1,
    "gapcount": cmd_gapcount,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toeplitz-spurious", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--q", type=int, default=1)
        sp.add_argument("--preset", choices=["pm1", "zero_one"], default="zero_one" if name in ("figure1", "gapcount") else "pm1")
        sp.add_argument("--n", type=int)
        sp.add_argument("--n-start", type=int, default=2 if name == "figure1" else None)
        sp.add_argument("--n-stop", type=int, default=60 if name == "figure1" else None)
        sp.add_argument("--n-step", type=int)
        sp.add_argument("--epsilon", type=float, default=0.1)
        sp.add_argument("--tail", type=int, help="series cut-off M for --matrix B")
        sp.add_argument("--matrix", choices=["T", "M", "B", "F", "D"], default="T")
        sp.add_argument("--omega", type=int, help="override the period (negative controls)")
        sp.add_argument("--k-hat", type=float, default=analysis.DEFAULT_K_HAT)
        sp.add_argument("--calibrate-upto", type=float)
        sp.add_argument("--alpha", type=float, default=0.1)
        sp.add_argument("--beta", type=float, default=0.9)
        sp.add_argument("--lambdas", help="comma-separated lambda grid for the counting sandwich (bounds)")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", default="-")
    return parser


def run(cfg: RunConfig) -> tuple[str, int]:
    if not 0 < cfg.epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    try:
        text, code = run(cfg)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
