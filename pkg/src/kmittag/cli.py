"""``kmittag`` command line: eval, table, figure, verify.

Exit codes: 0 success, 1 usage or invalid arguments, 2 a series failed to
converge (or a grid cell failed), 3 a verification suite failed.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from .fracops import DerivSpec, Side, frac_deriv_closed
from .gammakit import k_gamma
from .reproduce import (
    DEFAULT_DERIV,
    DEFAULT_PARAMS,
    FIGURES,
    GridSpec,
    RunConfig,
    compute_table,
    discrepancy_csv,
    figure_csv,
    table1_fidelity,
    table2_note,
    table_config,
    table_csv,
    write_text,
)
from .series import DEFAULT_TOL, FoxWrightSpec, MLParams, foxwright_eval, ml_eval
from .transforms import BetaImageSpec, LaplaceImageSpec, beta_image_closed, laplace_image_closed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NONCONVERGED = 2
EXIT_VERIFY = 3

PROJECTIONS = ("magnitude", "real_part", "imag_part")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,A', got {text!r}") from None
    return a, b


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_params(p: argparse.ArgumentParser, sigma_list: bool = False) -> None:
    g = p.add_argument_group("parameters (defaults: mu=0.5 nu=0.8 eta=0.3 xi=0.5 zeta=0.2 vartheta=0.5 q=0.4 k=0.5)")
    for name in ("k", "xi", "zeta", "vartheta", "q", "eta", "mu", "nu"):
        g.add_argument(f"--{name}", type=float)
    if sigma_list:
        g.add_argument("--sigma", type=_float_list, help="comma-separated list")
    else:
        g.add_argument("--sigma", type=float)
    g.add_argument("--side", choices=("left", "right"))
    g.add_argument("--tol", type=float, default=DEFAULT_TOL)
    g.add_argument("--projection", choices=PROJECTIONS)


def _params(ns: argparse.Namespace, base: MLParams = DEFAULT_PARAMS) -> MLParams:
    return MLParams(
        **{f: (getattr(ns, f) if getattr(ns, f) is not None else getattr(base, f))
           for f in ("k", "xi", "zeta", "vartheta", "q")}
    )


def _deriv(ns: argparse.Namespace, base: DerivSpec = DEFAULT_DERIV) -> DerivSpec:
    kw = {f: getattr(ns, f) for f in ("eta", "mu", "nu") if getattr(ns, f) is not None}
    if isinstance(getattr(ns, "sigma", None), float):
        kw["sigma"] = ns.sigma
    if ns.side is not None:
        kw["side"] = Side.parse(ns.side)
    return replace(base, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kmittag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one function at one point")
    ev.add_argument("what", choices=("kgamma", "ml", "foxwright", "deriv", "beta-image", "laplace-image"))
    _add_params(ev)
    ev.add_argument("--x", type=float)
    ev.add_argument("--z", type=float)
    ev.add_argument("--l", type=float)
    ev.add_argument("--m", type=float)
    ev.add_argument("--s", type=float)
    ev.add_argument("--upper", type=_pair, action="append", default=[], metavar="a,A")
    ev.add_argument("--lower", type=_pair, action="append", default=[], metavar="b,B")
    ev.add_argument("--compat-th5-qk", action="store_true",
                    help="use the (vartheta/k, q/k) first pair in the Laplace image")

    tb = sub.add_parser("table", help="reproduce a published table as CSV")
    tb.add_argument("which", type=int, choices=(1, 2))
    _add_params(tb, sigma_list=True)
    tb.add_argument("--out", default=None, help="CSV path (default table<which>.csv; '-' for stdout)")
    tb.add_argument("--decimals", type=int, default=2)

    fg = sub.add_parser("figure", help="curve data of a published figure as CSV")
    fg.add_argument("figure_id", type=int, choices=sorted(FIGURES))
    _add_params(fg)
    fg.add_argument("--out", default=".", help="output directory")

    vf = sub.add_parser("verify", help="run invariant suites")
    vf.add_argument("suite", nargs="?", default="all",
                    choices=("identities", "reductions", "oracle", "transforms", "all"))
    return parser


def _need(ns: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(ns, n) is None]
    if missing:
        raise UsageError(f"eval {ns.what} needs {', '.join(missing)}")


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def _print_series(value: float, res, out) -> None:
    print(f"value: {_fmt(value)}", file=out)
    print(f"terms_used: {res.terms_used}", file=out)
    print(f"tail_estimate: {res.tail_estimate:.3e}", file=out)
    print(f"converged: {str(res.converged).lower()}", file=out)


def _print_deriv(r, projection: str | None, out) -> None:
    _print_series(r.project(projection or "magnitude"), r.series, out)
    if r.phase_factor != 1:
        ph = r.phase_factor
        print(f"phase_factor: {_fmt(ph.real)}{ph.imag:+.10g}j", file=out)
        print(f"magnitude: {_fmt(r.magnitude)}", file=out)
        print(f"real_part: {_fmt(r.real)}", file=out)
        print(f"imag_part: {_fmt(r.imag)}", file=out)


def cmd_eval(ns: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    what = ns.what
    if what == "kgamma":
        _need(ns, "vartheta", "k")
        print(f"value: {_fmt(k_gamma(ns.vartheta, ns.k))}", file=out)
        return EXIT_OK
    if what == "ml":
        _need(ns, "z")
        res = ml_eval(_params(ns), ns.z, ns.tol)
        _print_series(res.value, res, out)
        return EXIT_OK if res.converged else EXIT_NONCONVERGED
    if what == "foxwright":
        _need(ns, "z")
        if not ns.upper:
            raise UsageError("eval foxwright needs at least one --upper a,A")
        res = foxwright_eval(FoxWrightSpec(ns.upper, ns.lower), ns.z, ns.tol)
        _print_series(res.value, res, out)
        return EXIT_OK if res.converged else EXIT_NONCONVERGED

    _need(ns, "x")
    params, deriv = _params(ns), _deriv(ns)
    if what == "deriv":
        r = frac_deriv_closed(deriv, params, ns.x, ns.tol)
    elif what == "beta-image":
        _need(ns, "l", "m")
        r = beta_image_closed(BetaImageSpec(deriv, params, ns.l, ns.m), ns.x, ns.tol)
    else:
        _need(ns, "l", "s")
        spec = LaplaceImageSpec(deriv, params, ns.l, ns.s, compat_qk=ns.compat_th5_qk)
        r = laplace_image_closed(spec, ns.x, ns.tol)
    _print_deriv(r, ns.projection, out)
    return EXIT_OK if r.converged else EXIT_NONCONVERGED


def _sidecar(out: str, suffix: str) -> Path:
    p = Path(out)
    return p.with_name(f"{p.stem}_{suffix}")


def _report_failures(failed, out) -> int:
    if not failed:
        return EXIT_OK
    print(f"{len(failed)} cell(s) failed and were written as NaN:", file=sys.stderr)
    for c in failed:
        print(f"  x={c.x:g} sigma={c.sigma:g}: {c.error}", file=sys.stderr)
    return EXIT_NONCONVERGED


def cmd_table(ns: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    cfg = table_config(ns.which)
    grid = GridSpec(sigma_values=ns.sigma) if ns.sigma else cfg.grid
    cfg = replace(
        cfg,
        params=_params(ns),
        deriv=_deriv(ns, cfg.deriv),
        grid=grid,
        tol=ns.tol,
        projection=ns.projection or "magnitude",
        decimals=ns.decimals,
    )
    if ns.decimals < 0:
        raise UsageError("--decimals must be non-negative")
    path = ns.out or f"table{ns.which}.csv"
    result = compute_table(cfg)
    write_text(path, table_csv(result, (cfg.projection,), cfg.decimals))
    to_stdout = path == "-"
    log = sys.stderr if to_stdout else out

    if ns.which == 1:
        published_grid = cfg == replace(table_config(1), projection=cfg.projection, decimals=cfg.decimals)
        if published_grid:
            fid = table1_fidelity(result, decimals=cfg.decimals, cfg=cfg)
            report = "table1_discrepancies.csv" if to_stdout else str(_sidecar(path, "discrepancies.csv"))
            write_text(report, discrepancy_csv(fid))
            print(f"{fid.matched}/{fid.total} cells match the published table within 0.02", file=log)
            if fid.mismatches:
                worst = max(m.closed_vs_oracle for m in fid.mismatches if not math.isnan(m.oracle))
                print(f"discrepancy report: {report} (closed form vs oracle worst {worst:.2e})", file=log)
    elif not to_stdout:
        for proj in PROJECTIONS:
            if proj != cfg.projection:
                write_text(_sidecar(path, f"{proj}.csv"), table_csv(result, (proj,), cfg.decimals))
        note = _sidecar(path, "note.txt")
        write_text(note, table2_note(result))
        print(f"projections: {path} ({cfg.projection}) plus sidecars; note: {note}", file=log)
    return _report_failures(result.failed, out)


def cmd_figure(ns: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    cfg = RunConfig(
        params=_params(ns),
        deriv=_deriv(ns),
        tol=ns.tol,
        projection=ns.projection or "magnitude",
    )
    outdir = Path(ns.out)
    failed = []
    for suffix, side in (("a", Side.Right), ("b", Side.Left)):
        text, bad = figure_csv(ns.figure_id, side, cfg, eta_override=ns.eta)
        target = outdir / f"figure{ns.figure_id}{suffix}.csv"
        write_text(target, text)
        print(f"wrote {target} ({side.value}-sided)", file=out)
        failed += bad
    return _report_failures(failed, out)


def cmd_verify(ns: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    from .verify import run_suite

    reports = run_suite(ns.suite)
    for rep in reports:
        print(rep.line(), file=out)
        for f in rep.failures[:20]:
            print(f"  {f}", file=out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


_COMMANDS = {"eval": cmd_eval, "table": cmd_table, "figure": cmd_figure, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return _COMMANDS[ns.command](ns)
    except (UsageError, ValueError) as exc:
        # DomainError, ContractError and ConvergenceConditionError are ValueErrors
        print(f"kmittag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
