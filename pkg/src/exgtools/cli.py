"""Command-line front end: ``exg fit|quantile|sample|gof|trim|plotdata``.

Exit codes: 0 success (including partial per-method failures inside a fit
report), 2 usage errors, 3 unreadable or malformed input data, 4 numerical
failures.  Every seeded command is bit-reproducible; report timing is
opt-in (--with-timing) so fixed-seed outputs stay byte-identical.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .dataio import read_values, write_values
from .dist import ExGaussParams, exgauss_pdf, pars_to_stats, zalp_exgauss
from .errors import DataError, ExgError, SkewnessRangeError
from .fit import MAXLKHD, MINSQR, STAT, SearchConfig, fit_stat, max_lkhd, min_sqr
from .gof import bootstrap_p, trim
from .report import Report
from .rng import RngStream, drand_exg
from .stats_utils import histogram

_METHODS = (STAT, MINSQR, MAXLKHD)


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0.0 or not np.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return v


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _unit_open(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie strictly inside (0, 1): {text!r}")
    return v


def _tail_frac(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < v < 0.5:
        raise argparse.ArgumentTypeError(f"must lie strictly inside (0, 0.5): {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned int: {text!r}")
    return v


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _tsv(columns: list[str], rows: list[list]) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, float):
            return repr(v)
        return str(v)

    lines = ["\t".join(columns)]
    lines.extend("\t".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exg",
        description="Fit, sample and significance-test the ex-Gaussian distribution.",
    )
    parser.add_argument("--version", action="version", version=f"exg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="output path ('-' or omitted: stdout)")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--with-timing", action="store_true",
                       help="include wall-clock timing in the report")

    p = sub.add_parser("fit", help="fit a dataset by one or more methods")
    p.add_argument("file")
    p.add_argument("--method", action="append", choices=_METHODS,
                   help="repeatable; default: all three")
    p.add_argument("--bins", type=_positive_int, default=None,
                   help="histogram bins for minsqr (default: 2*sqrt(N))")
    p.add_argument("--grad-tol", type=_positive_float, default=1e-8)
    add_common(p)

    p = sub.add_parser("quantile", help="right-tail cutoff point z_alpha")
    p.add_argument("--mu", type=_finite_float, required=True)
    p.add_argument("--sigma", type=_positive_float, required=True)
    p.add_argument("--tau", type=_positive_float, required=True)
    p.add_argument("--alpha", type=_unit_open, required=True)
    add_common(p)

    p = sub.add_parser("sample", help="draw seeded ex-Gaussian variates")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--mu", type=_finite_float, required=True)
    p.add_argument("--sigma", type=_positive_float, required=True)
    p.add_argument("--tau", type=_positive_float, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", help="output path ('-' or omitted: stdout)")

    p = sub.add_parser("gof", help="parametric-bootstrap goodness of fit")
    p.add_argument("file")
    p.add_argument("--method", choices=(MINSQR, MAXLKHD), default=MAXLKHD)
    p.add_argument("--replicates", type=_positive_int, default=1000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--bins", type=_positive_int, default=None)
    p.add_argument("--grad-tol", type=_positive_float, default=1e-8)
    add_common(p)

    p = sub.add_parser("trim", help="cut model-based tails off a dataset")
    p.add_argument("file")
    p.add_argument("--tail", type=_tail_frac, default=0.001)
    p.add_argument("--trimmed-out", required=True,
                   help="path for the trimmed dataset")
    p.add_argument("--right-only", action="store_true",
                   help="leave the left tail untouched")
    p.add_argument("--grad-tol", type=_positive_float, default=1e-8)
    add_common(p)

    p = sub.add_parser("plotdata", help="histogram and fitted-curve columns")
    p.add_argument("file")
    p.add_argument("--method", action="append", choices=_METHODS,
                   help="repeatable; default: maxlkhd")
    p.add_argument("--bins", type=_positive_int, default=None)
    p.add_argument("--grad-tol", type=_positive_float, default=1e-8)
    add_common(p)
    p.set_defaults(format="tsv")  # column data; JSON remains opt-in

    return parser


def _fit_one(method: str, values, n_bins, cfg: SearchConfig):
    if method == STAT:
        return fit_stat(values)
    if method == MINSQR:
        return min_sqr(values, n_bins=n_bins, cfg=cfg)
    return max_lkhd(values, cfg=cfg)


def _cmd_fit(args) -> int:
    values = read_values(args.file)
    methods = args.method or list(_METHODS)
    cfg = SearchConfig(grad_tol=args.grad_tol)
    t0 = time.perf_counter()
    results: dict = {}
    for method in dict.fromkeys(methods):
        try:
            results[method] = {"ok": True, "fit": _fit_one(method, values, args.bins, cfg)}
        except ExgError as exc:
            err = {"type": type(exc).__name__, "message": str(exc)}
            if isinstance(exc, SkewnessRangeError):
                err["t"] = exc.t
            results[method] = {"ok": False, "error": err}
    report = Report(
        command="fit",
        inputs={"file": str(args.file), "methods": list(dict.fromkeys(methods)),
                "n_bins": args.bins, "grad_tol": args.grad_tol, "n": int(len(values))},
        results=results,
        timing=time.perf_counter() - t0,
    )
    if args.format == "json":
        _emit(report.to_json(with_timing=args.with_timing), args.out)
    else:
        cols = ["method", "ok", "mu", "sigma", "tau", "m", "s", "t", "objective",
                "iterations", "gradient_norm", "converged", "n_bins", "error"]
        rows = []
        for method, payload in results.items():
            if payload["ok"]:
                fr = payload["fit"]
                st = pars_to_stats(fr.params)
                rows.append([method, 1, fr.params.mu, fr.params.sigma, fr.params.tau,
                             st.m, st.s, st.t, fr.objective, fr.iterations,
                             fr.gradient_norm, int(fr.converged), fr.n_bins, None])
            else:
                rows.append([method, 0] + [None] * 11 + [payload["error"]["message"]])
        _emit(_tsv(cols, rows), args.out)
    return 0


def _cmd_quantile(args) -> int:
    p = ExGaussParams(args.mu, args.sigma, args.tau)
    t0 = time.perf_counter()
    z = zalp_exgauss(args.alpha, p)
    sys.stdout.write(repr(z) + "\n")
    if args.out and args.out != "-":
        report = Report(
            command="quantile",
            inputs={"mu": args.mu, "sigma": args.sigma, "tau": args.tau,
                    "alpha": args.alpha},
            results={"quantile": {"ok": True, "z": z}},
            timing=time.perf_counter() - t0,
        )
        if args.format == "json":
            _emit(report.to_json(with_timing=args.with_timing), args.out)
        else:
            _emit(_tsv(["alpha", "z"], [[args.alpha, z]]), args.out)
    return 0


def _cmd_sample(args) -> int:
    p = ExGaussParams(args.mu, args.sigma, args.tau)
    stream = RngStream(args.seed)
    values = drand_exg(stream, p, size=args.n)
    text = "\n".join(repr(float(v)) for v in np.atleast_1d(values)) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_gof(args) -> int:
    values = read_values(args.file)
    cfg = SearchConfig(grad_tol=args.grad_tol)
    t0 = time.perf_counter()
    gof = bootstrap_p(values, args.method, replicates=args.replicates,
                      seed=args.seed, cfg=cfg, n_bins=args.bins)
    report = Report(
        command="gof",
        inputs={"file": str(args.file), "method": args.method,
                "replicates": args.replicates, "seed": args.seed,
                "n_bins": args.bins, "grad_tol": args.grad_tol,
                "n": int(len(values))},
        results={args.method: {"ok": True, "gof": gof}},
        timing=time.perf_counter() - t0,
    )
    if args.format == "json":
        _emit(report.to_json(with_timing=args.with_timing), args.out)
    else:
        cols = ["method", "ks", "p", "replicates", "ks_mean", "ks_sd", "seed",
                "mu", "sigma", "tau", "refit_failures"]
        rows = [[gof.method, gof.ks, gof.p, gof.replicates, gof.ks_mean, gof.ks_sd,
                 gof.seed, gof.fitted.mu, gof.fitted.sigma, gof.fitted.tau,
                 gof.refit_failures]]
        _emit(_tsv(cols, rows), args.out)
    return 0


def _cmd_trim(args) -> int:
    values = read_values(args.file)
    cfg = SearchConfig(grad_tol=args.grad_tol)
    t0 = time.perf_counter()
    result = trim(values, tail_frac=args.tail, cfg=cfg, left=not args.right_only)
    write_values(args.trimmed_out, result.trimmed)
    report = Report(
        command="trim",
        inputs={"file": str(args.file), "tail_frac": args.tail,
                "left": not args.right_only, "trimmed_out": str(args.trimmed_out),
                "n": int(len(values))},
        results={"trim": {"ok": True, "trim": result}},
        timing=time.perf_counter() - t0,
    )
    if args.format == "json":
        _emit(report.to_json(with_timing=args.with_timing), args.out)
    else:
        cols = ["lo_cut", "hi_cut", "n_removed_left", "n_removed_right", "n_total",
                "mu", "sigma", "tau"]
        lo = result.lo_cut if np.isfinite(result.lo_cut) else None
        rows = [[lo, result.hi_cut, result.n_removed_left, result.n_removed_right,
                 result.n_total, result.pre_fit.mu, result.pre_fit.sigma,
                 result.pre_fit.tau]]
        _emit(_tsv(cols, rows), args.out)
    return 0


def _cmd_plotdata(args) -> int:
    values = read_values(args.file)
    methods = list(dict.fromkeys(args.method or [MAXLKHD]))
    cfg = SearchConfig(grad_tol=args.grad_tol)
    h = histogram(values, args.bins)
    centers = h.centers
    columns = ["bin_center", "density"] + [f"fitted_{m}" for m in methods]
    fitted_cols = []
    for method in methods:
        fr = _fit_one(method, values, args.bins, cfg)
        fitted_cols.append(exgauss_pdf(centers, fr.params))
    rows = [
        [float(centers[i]), float(h.densities[i])] + [float(col[i]) for col in fitted_cols]
        for i in range(len(centers))
    ]
    if args.format == "json":
        report = Report(
            command="plotdata",
            inputs={"file": str(args.file), "methods": methods, "n_bins": h.n_bins,
                    "grad_tol": args.grad_tol, "n": int(len(values))},
            results={"plotdata": {"ok": True, "columns": columns, "rows": rows}},
        )
        _emit(report.to_json(with_timing=False), args.out)
    else:
        _emit(_tsv(columns, rows), args.out)
    return 0


_DISPATCH = {
    "fit": _cmd_fit,
    "quantile": _cmd_quantile,
    "sample": _cmd_sample,
    "gof": _cmd_gof,
    "trim": _cmd_trim,
    "plotdata": _cmd_plotdata,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except DataError as exc:
        print(f"exg: data error: {exc}", file=sys.stderr)
        return 3
    except ExgError as exc:
        print(f"exg: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
