"""Command-line front end: ``decaylab {decay,sequence,bounds} ...``.

Exit codes: 0 success, 2 invalid flags or arguments, 3 search refused by
the pair budget.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .bounds import (
    DmtQuery,
    dmt_optimality,
    dmt_threshold,
    fit_exponent,
    format_rational,
    golden_limit_constant,
    liouville_effective_constant,
    parse_rational,
    tau_convergents,
    verify_bounds,
)
from .codes import CodeConfig
from .decay_search import BudgetExceeded, decay, decay_series
from .exact_ring import mul, parse_ring_elem
from .serialize import (
    DECAY_COLUMNS,
    SEQUENCE_COLUMNS,
    decay_to_json,
    decay_to_row,
    dumps_json,
    read_decay_csv,
    sequence_to_json,
    sequence_to_row,
    write_csv,
)
from .sequences import factor_z5n, table1, unbalanced_series, z_element

log = logging.getLogger("decaylab")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    """Bad argument value detected after parsing; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    # argparse already exits with 2; raising keeps main() in control
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    fmt: str
    out: str | None
    workers: int
    budget: int | None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _budget_from_env() -> int | None:
    env = os.environ.get("DECAYLAB_BUDGET")
    if not env:
        return None
    try:
        v = int(env)
    except ValueError:
        raise UsageError(f"DECAYLAB_BUDGET is not an integer: {env!r}") from None
    if v < 1:
        raise UsageError(f"DECAYLAB_BUDGET must be >= 1, got {v}")
    return v


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _common(fmt_choices: Sequence[str], fmt_default: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", dest="fmt", choices=fmt_choices, default=fmt_default)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--budget", type=_positive_int, default=None,
                   help="maximum reduced pairs per box (fallback: $DECAYLAB_BUDGET)")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="decaylab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    records = _common(["csv", "json"], "csv")
    reports = _common(["text", "csv", "json"], "text")

    p = sub.add_parser("decay", parents=[records], help="exact decay function search")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--series", choices=["equal", "fixed_second"])
    p.add_argument("--nmax", type=int)
    p.add_argument("--gamma", default="i", help="twist element, e.g. 'i' or '1+iτ'")
    p.add_argument("--backend", choices=["numba", "numpy"], default=None)
    p.add_argument("--seed", type=int, default=None, help="shuffle the traversal order")
    p.add_argument("--allow-over-budget", action="store_true")
    p.set_defaults(func=cmd_decay)

    p = sub.add_parser("sequence", parents=[reports], help="unit-power small-determinant sequence")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table1", action="store_true", help="balanced witnesses for n = 5..25")
    g.add_argument("--factor", type=int, metavar="N", help="check z_{5N} = z_N m_j(N) m_{j+2}(N)")
    g.add_argument("--unbalanced", type=int, metavar="K", help="unbalanced witnesses for z_{5k}, k <= K")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("bounds", help="approximation bounds, exponent fits, DMT condition")
    bsub = p.add_subparsers(dest="bounds_command", parser_class=_Parser, required=True)

    q = bsub.add_parser("liouville", parents=[reports], help="convergent qualities of tau")
    q.add_argument("--max-k", type=_positive_int, default=10**6)
    q.set_defaults(func=cmd_liouville)

    q = bsub.add_parser("dmt", parents=[reports], help="evaluate 2r + delta <= r_S(r)")
    q.add_argument("--r", required=True)
    q.add_argument("--decay-exponent", default=None,
                   help="use delta = e*r from a measured exponent instead of 2r")
    q.set_defaults(func=cmd_dmt)

    q = bsub.add_parser("fit", parents=[reports], help="fit D ~ C N^-delta from a CSV")
    q.add_argument("--input", required=True)
    q.set_defaults(func=cmd_fit)

    q = bsub.add_parser("verify", parents=[reports], help="empirical K_emp / C_emp from decay records")
    q.add_argument("--input", required=True)
    q.add_argument("--witnesses", type=int, default=0, metavar="K",
                   help="also report unbalanced sequence witnesses for k <= K")
    q.set_defaults(func=cmd_verify)
    return parser


def _run_config(args) -> RunConfig:
    budget = args.budget if args.budget is not None else _budget_from_env()
    return RunConfig(args.command, args.fmt, args.out, args.workers, budget)


# -- decay ---------------------------------------------------------------------


def cmd_decay(args) -> int:
    rc = _run_config(args)
    single = args.n1 is not None or args.n2 is not None
    if single and args.series:
        raise UsageError("--n1/--n2 and --series are mutually exclusive")
    if not single and not args.series:
        raise UsageError("give --n1 and --n2, or --series with --nmax")
    try:
        gamma = parse_ring_elem(args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if gamma.is_zero():
        raise UsageError("--gamma must be nonzero")
    cfg = CodeConfig(gamma=gamma)
    opts = dict(
        workers=rc.workers,
        budget=rc.budget,
        allow_over_budget=args.allow_over_budget,
        backend=args.backend,
        shuffle_seed=args.seed,
    )
    if single:
        if args.n1 is None or args.n2 is None:
            raise UsageError("--n1 and --n2 must both be given")
        if args.n1 < 1 or args.n2 < 1:
            raise UsageError(f"box sizes must be >= 1, got ({args.n1}, {args.n2})")
        records = [decay(args.n1, args.n2, cfg, **opts)]
    else:
        if args.nmax is None or args.nmax < 1:
            raise UsageError("--series needs --nmax >= 1")
        records = decay_series(args.nmax, args.series, cfg, **opts)

    with _output(rc.out) as fh:
        if rc.fmt == "json":
            payload = [decay_to_json(r) for r in records]
            fh.write(dumps_json(payload[0] if single else payload))
        else:
            write_csv((decay_to_row(r) for r in records), DECAY_COLUMNS, fh)
    return EXIT_OK


# -- sequence ------------------------------------------------------------------


def cmd_sequence(args) -> int:
    rc = _run_config(args)
    if args.table1:
        return _emit_table1(rc)
    if args.factor is not None:
        return _emit_factor(rc, args.factor)
    return _emit_unbalanced(rc, args.unbalanced)


def _emit_table1(rc: RunConfig) -> int:
    rows = table1()
    with _output(rc.out) as fh:
        if rc.fmt == "json":
            fh.write(dumps_json([sequence_to_json(r) for r in rows]))
        elif rc.fmt == "csv":
            write_csv((sequence_to_row(r) for r in rows), SEQUENCE_COLUMNS, fh)
        else:
            fh.write("n,m,delta\n")
            for r in rows:
                fh.write(f"{r.n},{r.m},{r.delta_rounded}\n")
    return EXIT_OK


def _emit_factor(rc: RunConfig, n: int) -> int:
    if n < 1:
        raise UsageError(f"--factor needs n >= 1, got {n}")
    zn, ma, mb = factor_z5n(n)
    j = 2 if n % 2 else 1
    target = z_element(5 * n)
    ok = mul(mul(zn, ma), mb) == target
    labels = [f"z{n}", f"m{j}({n})", f"m{j + 2}({n})"]
    factors = [zn, ma, mb]
    with _output(rc.out) as fh:
        if rc.fmt == "json":
            fh.write(dumps_json({
                "n": n,
                "target": f"z{5 * n}",
                "target_value": str(target),
                "factors": {l: str(f) for l, f in zip(labels, factors)},
                "identity_holds": ok,
            }))
        elif rc.fmt == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["label", "a", "b", "c", "d"])
            for l, f in zip(labels + [f"z{5 * n}"], factors + [target]):
                w.writerow([l, *f.coords])
            w.writerow(["identity_holds", ok, "", "", ""])
        else:
            fh.write(f"z{5 * n} = {' * '.join(labels)}\n")
            for l, f in zip(labels, factors):
                fh.write(f"  {l} = {f}\n")
            fh.write(f"  z{5 * n} = {target}\n")
            fh.write("identity confirmed\n" if ok else "identity FAILED\n")
    return EXIT_OK if ok else 1


def _emit_unbalanced(rc: RunConfig, k_max: int) -> int:
    if k_max < 1:
        raise UsageError(f"--unbalanced needs K >= 1, got {k_max}")
    rows = unbalanced_series(k_max)
    cols = ["k", "n", "size1", "size2", "log_size_ratio", "abs_det"]
    recs = [
        {"k": w.k, "n": w.n, "size1": str(w.size1), "size2": str(w.size2),
         "log_size_ratio": repr(w.log_size_ratio), "abs_det": repr(w.abs_det)}
        for w in rows
    ]
    with _output(rc.out) as fh:
        if rc.fmt == "json":
            fh.write(dumps_json(recs))
        else:
            write_csv(recs, cols, fh)
    return EXIT_OK


# -- bounds --------------------------------------------------------------------


def cmd_liouville(args) -> int:
    rc = _run_config(args)
    convs = tau_convergents(args.max_k)
    c_eff = liouville_effective_constant()
    worst = min(convs, key=lambda c: c.quality)
    tail = convs[-1]
    inside = all(c_eff < c.quality < 1 for c in convs)
    with _output(rc.out) as fh:
        if rc.fmt == "csv":
            write_csv(({"h": str(c.h), "k": str(c.k), "quality": repr(c.quality)} for c in convs),
                      ["h", "k", "quality"], fh)
        elif rc.fmt == "json":
            fh.write(dumps_json({
                "max_k": args.max_k,
                "convergent_count": len(convs),
                "min_quality": worst.quality,
                "min_quality_at": [str(worst.h), str(worst.k)],
                "tail_quality": tail.quality,
                "tail_at": [str(tail.h), str(tail.k)],
                "golden_limit": golden_limit_constant(),
                "effective_constant": c_eff,
                "all_within_bounds": inside,
            }))
        else:
            fh.write(f"convergents with k <= {args.max_k}: {len(convs)}\n")
            fh.write(f"min quality:        {worst.quality:.4f} at {worst.h}/{worst.k}\n")
            fh.write(f"tail quality:       {tail.quality:.4f} at {tail.h}/{tail.k}\n")
            fh.write(f"limit 1/sqrt5:      {golden_limit_constant():.4f}\n")
            fh.write(f"effective constant: {c_eff:.4f}\n")
            fh.write(f"all in (C, 1):      {inside}\n")
    return EXIT_OK


def cmd_dmt(args) -> int:
    rc = _run_config(args)
    try:
        if args.decay_exponent is None:
            q = DmtQuery(parse_rational(args.r))
            threshold = dmt_threshold(2)
        else:
            e = parse_rational(args.decay_exponent)
            q = DmtQuery(parse_rational(args.r), "empirical", e)
            threshold = dmt_threshold(e)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = dmt_optimality(q)
    with _output(rc.out) as fh:
        if rc.fmt == "json":
            d = res.to_dict()
            d["delta_mode"] = q.delta_mode
            d["threshold"] = format_rational(threshold)
            fh.write(dumps_json(d))
        elif rc.fmt == "csv":
            d = res.to_dict()
            d["threshold"] = format_rational(threshold)
            write_csv([{k: str(v) for k, v in d.items()}], list(d), fh)
        else:
            fh.write(f"{res}\n")
    return EXIT_OK


def _read_table(path: str) -> list[dict[str, str]]:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _fit_points(rows: list[dict[str, str]]) -> list[tuple[float, float]]:
    if not rows:
        raise UsageError("input has no data rows")
    cols = {c.lower(): c for c in rows[0]}
    try:
        if "n" in cols and "d" in cols:
            return [(float(r[cols["n"]]), float(r[cols["d"]])) for r in rows]
        if {"n1", "n2", "detsq_float"} <= cols.keys():
            # one size per box: N for (N,1) and (N,N), geometric mean otherwise
            pts = []
            for r in rows:
                n1, n2 = int(r["n1"]), int(r["n2"])
                n = n1 if n2 in (1, n1) else math.sqrt(n1 * n2)
                pts.append((float(n), math.sqrt(float(r["detsq_float"]))))
            return pts
    except (KeyError, ValueError) as exc:
        raise UsageError(f"malformed input row: {exc}") from None
    raise UsageError("input needs columns N,D or decay-record columns")


def cmd_fit(args) -> int:
    rc = _run_config(args)
    pts = _fit_points(_read_table(args.input))
    try:
        fit = fit_exponent(pts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = {"delta": fit.delta, "constant": fit.constant,
         "residual": fit.residual, "sample_count": fit.sample_count}
    with _output(rc.out) as fh:
        if rc.fmt == "json":
            fh.write(dumps_json(d))
        elif rc.fmt == "csv":
            write_csv([{k: repr(v) for k, v in d.items()}], list(d), fh)
        else:
            fh.write(f"delta = {fit.delta:.3f}\n")
            fh.write(f"constant = {fit.constant:.6g}\n")
            fh.write(f"residual = {fit.residual:.3g}\n")
            fh.write(f"samples = {fit.sample_count}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    rc = _run_config(args)
    try:
        with open(args.input, encoding="utf-8", newline="") as fh:
            records = read_decay_csv(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except (KeyError, ValueError) as exc:
        raise UsageError(f"malformed decay CSV: {exc}") from None
    if not records:
        raise UsageError("input has no records")
    witnesses = [(w.size1, w.size2, w.abs_det) for w in unbalanced_series(args.witnesses)] \
        if args.witnesses > 0 else []
    report = verify_bounds(records, witnesses)
    with _output(rc.out) as fh:
        if rc.fmt == "json":
            fh.write(dumps_json(report.to_dict()))
        elif rc.fmt == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["quantity", "value", "n1", "n2"])
            w.writerow(["k_emp", repr(report.k_emp), *report.k_emp_box])
            if report.c_emp is not None:
                w.writerow(["c_emp", repr(report.c_emp), *report.c_emp_box])
            if report.fixed_second_fit is not None:
                w.writerow(["fixed_second_delta", repr(report.fixed_second_fit.delta), "", ""])
            w.writerow(["all_positive", report.all_positive, "", ""])
        else:
            fh.write(f"records: {len(records)}\n")
            fh.write(f"all positive: {report.all_positive}\n")
            fh.write(f"K_emp = min N1*N2*D = {report.k_emp:.6g} at {tuple(report.k_emp_box)}\n")
            if report.c_emp is not None:
                fh.write(f"C_emp = max N*D(N,1) = {report.c_emp:.6g} at {tuple(report.c_emp_box)}\n")
            if report.fixed_second_fit is not None:
                fh.write(f"D(N,1) fitted exponent = {report.fixed_second_fit.delta:.3f}\n")
            for p in report.witness_products:
                fh.write(f"witness ({p['n1']}, {p['n2']}): N1*N2*|det| = {p['n1n2_times_det']:.6g}\n")
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(asctime)s %(name)s %(levelname)s %(message)s",
            stream=sys.stderr,
        )
        log.info("run: %s", " ".join(sys.argv[1:] if argv is None else argv))
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"decaylab: refused: {exc} (raise --budget or pass --allow-over-budget)",
              file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
