"""Command-line front end.

Every subcommand writes one result file (CSV or JSON) and nothing else, so
runs with the same arguments and seed produce byte-identical output.
Failures print one JSON error record to stderr and exit with

* 2 for invalid arguments or configuration,
* 3 when a numerical method fails to converge,
* 4 for I/O errors,
* 1 when ``selftest`` finds a failing identity.

The output goes to ``--output``; without it, to ``$FRACCPP_OUTPUT_DIR/<name>``
when that variable is set, else to stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import bell, dist, fcalc, moments, process, risk, specfun
from ._series import SeriesConvergenceError
from .dist import QuadratureError, RateSequence

__all__ = ["main", "run", "load_rates", "read_output", "ConfigError", "OUTPUT_DIR_ENV"]

OUTPUT_DIR_ENV = "FRACCPP_OUTPUT_DIR"
SCHEMA_VERSION = 1

EXIT_OK, EXIT_SELFTEST, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    """Invalid command-line configuration; ``line``/``column`` locate parse errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# inputs


def _parse_number(token: str, line: int, column: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ConfigError(f"not a number: {token!r}", line, column) from None
    if not math.isfinite(value):
        raise ConfigError(f"rate must be finite: {token!r}", line, column)
    return value


def _validated(values: list[float], where) -> RateSequence:
    for i, v in enumerate(values):
        if v < 0:
            line, col = where(i)
            raise ConfigError(f"rate lambda_{i + 1} = {v} is negative", line, col)
    if not any(v > 0 for v in values):
        raise ConfigError("all rates are zero: at least one lambda_j must be positive")
    return RateSequence(tuple(values))


def load_rates(source: str) -> RateSequence:
    """Rates from an inline list (``"0.5,0.5"``) or a file.

    Files hold a JSON array or one number per line (blank lines and ``#``
    comments are skipped).  Parse errors carry the line and column.
    """
    if os.path.isfile(source):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError:
            raise
        stripped = text.lstrip()
        if stripped.startswith("["):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"invalid JSON rate file: {exc.msg}", exc.lineno, exc.colno) from None
            if not isinstance(data, list) or not data:
                raise ConfigError("rate file must hold a non-empty JSON array", 1, 1)
            values = []
            for i, x in enumerate(data):
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise ConfigError(f"array element {i} is not a number: {x!r}", None, None)
                values.append(float(x))
            return _validated(values, lambda i: (None, None))
        values, places = [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            if not body.strip():
                continue
            col = len(body) - len(body.lstrip()) + 1
            values.append(_parse_number(body.strip(), lineno, col))
            places.append((lineno, col))
        if not values:
            raise ConfigError("rate file holds no numbers", 1, 1)
        return _validated(values, lambda i: places[i])
    values, cols = [], []
    col = 1
    for token in source.split(","):
        lead = len(token) - len(token.lstrip())
        if not token.strip():
            raise ConfigError("empty entry in rate list", 1, col)
        values.append(_parse_number(token.strip(), 1, col + lead))
        cols.append(col + lead)
        col += len(token) + 1
    return _validated(values, lambda i: (1, cols[i]))


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"{what} must be a comma-separated list of numbers") from None


# ---------------------------------------------------------------------------
# outputs


def _dump_json(rec: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **rec}, indent=2, sort_keys=True,
                      allow_nan=False) + "\n"


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format(x, ".17g") if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _destination(args, default_name: str) -> str | None:
    if args.output:
        return args.output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base:
        return os.path.join(base, default_name)
    return None


def _emit(args, text: str, default_name: str) -> None:
    path = _destination(args, default_name)
    if path is None:
        sys.stdout.write(text)
        return
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_output(path: str):
    """Load a file written by this CLI: JSON records or CSV rows (as dicts of strings)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return json.loads(text)
    return list(csv.DictReader(io.StringIO(text)))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_pmf(args) -> str:
    rates = load_rates(args.rates)
    if args.process == "tfcpp":
        table = dist.tfcpp_pmf_table(rates, args.t, args.beta, args.nmax, method=args.method or "auto")
    elif args.process == "cpp":
        table = dist.cpp_pmf_table(rates, args.t, args.nmax, method=args.method or "composition")
    elif args.process == "cpd":
        table = dist.cpd_pmf_table(rates, args.nmax, method=args.method or "composition")
    else:
        n_max = args.nmax if args.nmax is not None else dist.default_nmax(rates)
        k = args.order
        probs = [dist.poisson_order_k_pmf(rates, n, k) for n in range(n_max + 1)]
        table = dist.PmfTable(np.array(probs), "exact-order-k", {"rates": list(rates.lam), "k": k})
    if args.format == "json":
        return table.to_json()
    return table.to_csv()


def _cmd_bell(args) -> str:
    try:
        u = bell.as_fractions([x.strip() for x in args.u.split(",") if x.strip()])
    except (ValueError, ZeroDivisionError):
        raise ConfigError("--u must be a comma-separated list of numbers or fractions like 1/3") from None
    if args.k is None:
        value = bell.complete_bell(args.n, u, method=args.method)
    elif args.kind == "ordinary":
        value = bell.ordinary_partial_bell(args.n, args.k, u)
    else:
        if args.method == "probabilistic":
            lams = [float(x / math.factorial(j)) for j, x in enumerate(u, start=1)]
            value = bell.bell_partial_probabilistic(args.n, args.k, lams)
        else:
            value = bell.exp_partial_bell(args.n, args.k, u)
    exact = isinstance(value, Fraction)
    rec = {
        "kind": "bell",
        "polynomial": "complete" if args.k is None else f"partial-{args.kind}",
        "n": args.n,
        "k": args.k,
        "u": [str(x) for x in u],
        "method": args.method,
        "value": float(value),
        "exact": str(value) if exact else None,
    }
    return _dump_json(rec)


def _sample_one(args, rates, stream):
    if args.process == "cpp":
        return process.sample_cpp(rates, args.T, rng=stream)
    if args.process == "tfpp":
        return process.sample_tfpp(rates.delta, args.beta, args.T, rng=stream)
    return process.sample_tfcpp(rates, args.beta, args.T, rng=stream)


def _cmd_simulate(args) -> str:
    rates = load_rates(args.rates)
    if args.paths < 1:
        raise ConfigError("--paths must be >= 1")
    if not args.T > 0:
        raise ConfigError("--T must be > 0")
    master = process.RngStream(args.seed)

    def one(i):
        return _sample_one(args, rates, master.spawn(i))

    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            paths = list(pool.map(one, range(args.paths)))
    else:
        paths = [one(i) for i in range(args.paths)]
    if args.format == "json":
        return _dump_json({
            "kind": "sample_paths", "process": args.process, "rates": list(rates.lam),
            "beta": args.beta, "T": args.T, "seed": args.seed,
            "paths": [p.to_dict() for p in paths],
        })
    rows = []
    for i, p in enumerate(paths):
        total = 0
        rows.append((i, 0.0, 0))
        for t, j in zip(p.event_times, p.jump_sizes):
            total += int(j)
            rows.append((i, float(t), total))
    return _csv(["path", "t", "value"], rows)


def _cmd_moments(args) -> str:
    rates = load_rates(args.rates)
    beta, t = args.beta, args.t
    mean, var = moments.tfcpp_mean_var(rates, t, beta)
    rec = {
        "kind": "moments", "rates": list(rates.lam), "beta": beta, "t": t,
        "mean": mean, "variance": var, "overdispersion": var - mean,
    }
    if args.s is not None:
        rec["s"] = args.s
        rec["covariance"] = moments.tfcpp_cov(rates, args.s, t, beta)
        rec["correlation"] = moments.tfcpp_corr(rates, args.s, t, beta)
    if args.r is not None:
        spec = moments.MomentSpec(args.r, t, args.kind)
        rec["moment"] = {"r": args.r, "kind": args.kind, "value": moments.tfcpp_moment(rates, beta, spec)}
    return _dump_json(rec)


def _cmd_lrd(args) -> str:
    rates = load_rates(args.rates)
    grid = np.geomspace(args.tmin, args.tmax, args.npoints)
    fit = moments.lrd_fit(args.process, rates, args.beta, args.s, grid,
                          rng=process.RngStream(args.seed), method=args.method,
                          n_replications=args.reps)
    rec = {"kind": "lrd_fit", "process": args.process, "rates": list(rates.lam), "beta": args.beta,
           "seed": args.seed if args.method == "mc" else None, **fit.to_dict()}
    rec["t_grid"] = list(rec["t_grid"])
    return _dump_json(rec)


def _cmd_verify_fde(args) -> str:
    steps = [1.0 / m for m in (64, 128, 256, 512)] if args.steps is None else _floats(args.steps, "--steps")
    window = (args.tmin, args.tmax)
    if args.process == "tfpp":
        rep = fcalc.verify_tfpp_fde(args.lam, args.beta, args.nmax, steps, window)
    else:
        rep = fcalc.verify_tfcpp_fde(load_rates(args.rates), args.beta, args.nmax, steps, window)
    records = rep.to_records()
    if args.format == "csv":
        return _csv(["n", "h", "residual", "order"],
                    [(r["n"], r["h"], r["residual"], "" if r["order"] is None else r["order"])
                     for r in records])
    return _dump_json({"kind": "fde_residuals", "process": rep.kind, "beta": rep.beta,
                       "window": list(rep.window), "rows": records})


def _cmd_risk(args) -> str:
    rates = load_rates(args.rates)
    model = risk.RiskModel(args.c, rates, args.beta)
    ens = risk.risk_paths(model, args.T, args.paths, process.RngStream(args.seed), n_times=args.ntimes)
    summary = ens.summary()
    summary["closed_form"] = {
        "times": [float(t) for t in ens.times],
        "mean": [risk.risk_stats(model, float(t))[0] for t in ens.times],
        "variance": [risk.risk_stats(model, float(t))[1] for t in ens.times],
        "hitting_level": args.k,
        "hitting_cdf": [float(x) for x in risk.hitting_time_cdf(rates, args.beta, args.k, ens.times)],
    }
    summary["seed"] = args.seed
    summary.pop("schema_version")
    summary_text = _dump_json(summary)
    if args.format == "json":
        return summary_text
    # CSV ensemble to the output, JSON summary alongside it
    path = _destination(args, "risk.csv")
    if path is not None:
        side = os.path.splitext(path)[0] + ".summary.json"
        if os.path.dirname(side):
            os.makedirs(os.path.dirname(side), exist_ok=True)
        with open(side, "w", encoding="utf-8", newline="") as fh:
            fh.write(summary_text)
    return ens.to_csv()


def _selftest_battery():
    """(name, ok, detail) for a fast battery of cross-formula identities."""
    out = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # noqa: BLE001 - reported as a failure row
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))

    def ml_exp():
        v = specfun.ml_one(1.0, -2.5)
        return abs(v - math.exp(-2.5)) < 1e-14, f"{v!r}"

    def ml_derivative():
        a, b, x = 0.6, 1.2, -1.5
        h = 1e-4
        fd = (specfun.ml_two(a, b, x + h) - specfun.ml_two(a, b, x - h)) / (2 * h)
        d = specfun.ml_derivative(a, b, 1, x)
        return abs(d - fd) < 1e-7, f"{d!r} vs {fd!r}"

    def bell_three_way():
        u = [Fraction(1, 2), Fraction(3), Fraction(2, 7), Fraction(5), Fraction(1, 3), Fraction(1)]
        e = bell.complete_bell(6, u, "enumeration")
        d = bell.complete_bell(6, u, "determinant")
        p = bell.complete_bell(6, u, "probabilistic")
        return e == d and abs(p / float(e) - 1) < 1e-10, f"{e}"

    def cpd_dual():
        r = (0.3, 0.2, 0.1)
        a = dist.cpd_pmf(r, 12, "composition")
        b = dist.cpd_pmf(r, 12, "bell")
        return abs(a / b - 1) < 1e-12, f"{a!r} vs {b!r}"

    def tfcpp_dual():
        r = (0.5, 0.5)
        a = dist.tfcpp_pmf(r, 1.0, 0.7, 5, "ml_derivative")
        b = dist.tfcpp_pmf(r, 1.0, 0.7, 5, "bell_expectation")
        return abs(a - b) < 1e-8, f"{a!r} vs {b!r}"

    def normalization():
        tab = dist.tfcpp_pmf_table((0.5, 0.5), 1.0, 0.7)
        return tab.tail_bound < 1e-8, f"tail {tab.tail_bound:.3g}"

    def moments_vs_pmf():
        r = (0.5, 0.5)
        tab = dist.tfcpp_pmf_table(r, 1.0, 0.7)
        m, v = moments.tfcpp_mean_var(r, 1.0, 0.7)
        return abs(tab.mean() - m) < 1e-7 and abs(tab.variance() - v) < 1e-7, f"{m!r}, {v!r}"

    def beta_one():
        r = (0.5, 0.5)
        a = dist.tfcpp_pmf(r, 2.0, 1.0, 4)
        b = dist.cpp_pmf(r, 2.0, 4)
        return abs(a - b) < 1e-12, f"{a!r} vs {b!r}"

    def cpp_corr():
        c = moments.cpp_corr((0.2, 0.7, 0.1), 1.0, 4.0)
        return abs(c - 0.5) < 1e-14, f"{c!r}"

    def hitting_k1():
        r = (0.5, 0.5)
        a = risk.hitting_time_cdf(r, 0.7, 1, 1.3)
        b = 1 - specfun.ml_one(0.7, -(1.3**0.7))
        return abs(a - b) < 1e-12, f"{a!r}"

    for name, fn in [("ML(1, z) = exp(z)", ml_exp), ("ML derivative identity", ml_derivative),
                     ("Bell three-way agreement", bell_three_way), ("CPD dual formula", cpd_dual),
                     ("TFCPP dual formula", tfcpp_dual), ("TFCPP normalization", normalization),
                     ("moments vs pmf sums", moments_vs_pmf), ("beta = 1 reduction", beta_one),
                     ("CPP correlation sqrt(s/t)", cpp_corr), ("hitting time k = 1", hitting_k1)]:
        check(name, fn)
    return out


def _cmd_selftest(args) -> tuple[str, bool]:
    rows = _selftest_battery()
    ok = all(r[1] for r in rows)
    if args.format == "json":
        text = _dump_json({"kind": "selftest", "passed": ok,
                           "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in rows]})
    else:
        width = max(len(n) for n, _, _ in rows)
        lines = [f"{'PASS' if p else 'FAIL'}  {n.ljust(width)}  {d}" for n, p, d in rows]
        text = "\n".join(lines) + "\n"
    return text, ok


# ---------------------------------------------------------------------------
# argument parsing

_RATES_HELP = ("jump rates lambda_1,lambda_2,... (lambda_j = intensity of jumps of size j; "
               "delta = sum of the rates), inline as 0.5,0.5 or a file path")
_BETA_HELP = "fractional order beta in (0, 1]; beta = 1 gives the classical process"


def _int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fraccpp", description="Time-fractional compound Poisson toolkit (data output only).")
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", help=f"output file (default: ${OUTPUT_DIR_ENV}/<name> or stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    common.add_argument("--seed", type=int, default=process.DEFAULT_SEED,
                        help=f"master random seed (default {process.DEFAULT_SEED})")
    common.add_argument("--workers", type=int, default=1,
                        help="worker threads for simulations; results do not depend on it")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("pmf", parents=[common], help="probability mass function table")
    s.add_argument("--process", choices=("tfcpp", "cpp", "cpd", "order-k"), default="tfcpp",
                   help="tfcpp: H_beta(t); cpp: H(t); cpd: the compound law with rates as given; "
                        "order-k: Poisson distribution of order k")
    s.add_argument("--rates", required=True, help=_RATES_HELP)
    s.add_argument("--t", type=float, default=1.0, help="time t >= 0")
    s.add_argument("--beta", type=float, default=1.0, help=_BETA_HELP)
    s.add_argument("--nmax", type=_int, default=None,
                   help="largest n in the table (default: Chernoff cutoff with tail below 1e-10)")
    s.add_argument("--order", type=_int, default=None, help="order k for --process order-k")
    s.add_argument("--method", default=None,
                   help="tfcpp: ml_derivative | bell_expectation | auto; cpp/cpd: composition | bell")

    s = sub.add_parser("bell", parents=[common], help="Bell polynomial value")
    s.add_argument("--n", type=_int, required=True, help="degree n")
    s.add_argument("--k", type=_int, default=None, help="part count k (omit for the complete polynomial)")
    s.add_argument("--u", required=True, help="arguments u_1,...,u_n (fractions such as 1/3 allowed)")
    s.add_argument("--kind", choices=("exponential", "ordinary"), default="exponential")
    s.add_argument("--method", choices=bell.METHODS, default="enumeration")

    s = sub.add_parser("simulate", parents=[common], help="sample paths")
    s.add_argument("--process", choices=("cpp", "tfpp", "tfcpp"), default="tfcpp")
    s.add_argument("--rates", required=True, help=_RATES_HELP + "; tfpp uses rate delta")
    s.add_argument("--beta", type=float, default=1.0, help=_BETA_HELP)
    s.add_argument("--T", type=float, required=True, help="horizon T > 0")
    s.add_argument("--paths", type=_int, default=1, help="number of paths")

    s = sub.add_parser("moments", parents=[common], help="closed-form moments and covariance")
    s.add_argument("--rates", required=True, help=_RATES_HELP)
    s.add_argument("--beta", type=float, default=1.0, help=_BETA_HELP)
    s.add_argument("--t", type=float, required=True, help="time t")
    s.add_argument("--s", type=float, default=None, help="earlier time s <= t for the covariance")
    s.add_argument("--r", type=_int, default=None, help="order r of an extra moment")
    s.add_argument("--kind", choices=moments.MOMENT_KINDS, default="raw", help="kind of the order-r moment")

    s = sub.add_parser("lrd", parents=[common], help="long-range dependence exponent fit")
    s.add_argument("--process", choices=("cpp", "tfcpp"), default="tfcpp")
    s.add_argument("--rates", required=True, help=_RATES_HELP)
    s.add_argument("--beta", type=float, default=1.0, help=_BETA_HELP)
    s.add_argument("--s", type=float, default=1.0, help="fixed time s")
    s.add_argument("--tmin", type=float, default=100.0, help="first grid time t")
    s.add_argument("--tmax", type=float, default=1e4, help="last grid time (>= 100 s)")
    s.add_argument("--npoints", type=_int, default=9, help="number of grid points (>= 4)")
    s.add_argument("--method", choices=("analytic", "asymptotic", "mc"), default="analytic")
    s.add_argument("--reps", type=_int, default=100_000, help="replications for --method mc")

    s = sub.add_parser("verify-fde", parents=[common], help="fractional equation residuals")
    s.add_argument("--process", choices=("tfpp", "tfcpp"), default="tfpp")
    s.add_argument("--lam", type=float, default=1.0, help="rate lambda for tfpp")
    s.add_argument("--rates", default="1", help=_RATES_HELP + " (tfcpp)")
    s.add_argument("--beta", type=float, default=0.6, help=_BETA_HELP)
    s.add_argument("--nmax", type=_int, default=3, help="largest level n")
    s.add_argument("--steps", default=None, help="decreasing grid steps h (default 1/64,...,1/512)")
    s.add_argument("--tmin", type=float, default=0.1, help="window start")
    s.add_argument("--tmax", type=float, default=2.0, help="window end (a multiple of every step)")

    s = sub.add_parser("risk", parents=[common], help="risk-reserve ensemble and summary")
    s.add_argument("--rates", required=True, help=_RATES_HELP + " (claim sizes)")
    s.add_argument("--beta", type=float, default=1.0, help=_BETA_HELP)
    s.add_argument("--c", type=float, required=True, help="premium rate c > 0")
    s.add_argument("--T", type=float, required=True, help="horizon T > 0")
    s.add_argument("--paths", type=_int, default=1000, help="number of reserve paths")
    s.add_argument("--ntimes", type=_int, default=21, help="grid points on [0, T]")
    s.add_argument("--k", type=_int, default=1, help="level k of the hitting-time CDF in the summary")

    sub.add_parser("selftest", parents=[common], help="cross-formula identity battery")
    return p


_COMMANDS = {
    "pmf": (_cmd_pmf, "csv"),
    "bell": (_cmd_bell, "json"),
    "simulate": (_cmd_simulate, "csv"),
    "moments": (_cmd_moments, "json"),
    "lrd": (_cmd_lrd, "json"),
    "verify-fde": (_cmd_verify_fde, "json"),
    "risk": (_cmd_risk, "csv"),
    "selftest": (_cmd_selftest, "csv"),
}


def _error(code: int, exc: BaseException, stream) -> int:
    rec = {"schema_version": SCHEMA_VERSION, "error": {
        "code": code, "type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, ConfigError):
        rec["error"]["line"] = exc.line
        rec["error"]["column"] = exc.column
    stream.write(json.dumps(rec, sort_keys=True) + "\n")
    return code


def run(argv: Sequence[str] | None = None, *, stderr=None) -> int:
    """Parse ``argv``, execute the subcommand and return the exit code."""
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if not 0 <= args.seed < 2**64:
            raise ConfigError("--seed must be a 64-bit unsigned integer")
        fn, default_format = _COMMANDS[args.command]
        if args.format is None:
            args.format = default_format
        if args.command == "selftest":
            text, ok = fn(args)
            _emit(args, text, f"selftest.{'json' if args.format == 'json' else 'txt'}")
            return EXIT_OK if ok else EXIT_SELFTEST
        text = fn(args)
        _emit(args, text, f"{args.command}.{args.format}")
        return EXIT_OK
    except (SeriesConvergenceError, QuadratureError, ArithmeticError) as exc:
        return _error(EXIT_NUMERIC, exc, stderr)
    except (ConfigError, ValueError, TypeError) as exc:
        return _error(EXIT_CONFIG, exc, stderr)
    except OSError as exc:
        return _error(EXIT_IO, exc, stderr)


def main() -> None:
    sys.exit(run())
