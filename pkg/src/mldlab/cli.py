"""Command-line interface.

    mldlab family <n>
    mldlab verify <n> [--brute-force] [--budget N]
    mldlab mld quotient <r> <w...>
    mldlab mld hypersurface --chart FILE --group R [--weights W...]
    mldlab table --from A --to B

Every command accepts ``--format {json,csv,tex}`` and ``--workers K``.
Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
input error.  Reports go to stdout; progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional

from mldlab import report
from mldlab.alpha import nu_bounds
from mldlab.family import build_family, certify
from mldlab.mld import (
    IllFormedQuotient,
    QuotientSingularity,
    ToricDivisorError,
    cyclic_quotient_mld,
    default_workers,
    hypersurface_quotient_mld,
)
from mldlab.wps import parse_polynomial

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
DEFAULT_BUDGET = 10**7
PROGRESS_EVERY = 10**7


class UsageError(Exception):
    pass


def _progress_printer(label: str):
    state = {"next": PROGRESS_EVERY}

    def report_progress(done: int, total: int) -> None:
        if total < PROGRESS_EVERY:
            return
        if done >= state["next"] or done == total:
            print(f"{label}: {done}/{total} candidates", file=sys.stderr, flush=True)
            state["next"] = (done // PROGRESS_EVERY + 1) * PROGRESS_EVERY

    return report_progress


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _int_list(values: list[str]) -> list[int]:
    out = []
    for v in values:
        for tok in v.replace(",", " ").split():
            try:
                out.append(int(tok))
            except ValueError:
                raise UsageError(f"not an integer: {tok!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "tex"), default="json")
    common.add_argument("--workers", type=_positive_int, default=None,
                        help="worker processes for scans (default: $MLDLAB_WORKERS or 1)")
    common.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET,
                        help="largest group order scanned by --brute-force")
    common.add_argument("--brute-force", action="store_true",
                        help="scan the whole group at the non-quasismooth point")

    parser = argparse.ArgumentParser(prog="mldlab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", parents=[common], help="data of the family member X_n")
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=[common], help="run every check for X_n")
    p.add_argument("n", type=int)

    p = sub.add_parser("mld", help="raw mld engines")
    engines = p.add_subparsers(dest="engine", required=True)
    q = engines.add_parser("quotient", parents=[common], help="cyclic quotient 1/r(w...)")
    q.add_argument("r", type=_positive_int)
    q.add_argument("weights", nargs="*")
    h = engines.add_parser("hypersurface", parents=[common], help="hypersurface quotient")
    h.add_argument("--chart", required=True, type=Path)
    h.add_argument("--group", required=True, type=_positive_int)
    h.add_argument("--weights", nargs="+", default=None,
                   help="group weights (default: the chart's weight line)")

    p = sub.add_parser("table", parents=[common], help="one row per family member")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _check_n(n: int) -> None:
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")


def cmd_family(args) -> int:
    _check_n(args.n)
    t0 = time.perf_counter()
    F = build_family(args.n)
    bounds = nu_bounds(F)
    timing = {"build_ms": (time.perf_counter() - t0) * 1000}
    if args.format == "csv":
        _emit(report.to_csv([report.family_row(F, bounds)]))
    elif args.format == "tex":
        _emit(report.tex_family_row(F, bounds))
    else:
        doc = report.report_document("family", {"n": str(args.n)}, report.family_doc(F, bounds), timing)
        _emit(report.dumps_json(doc))
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_n(args.n)
    t0 = time.perf_counter()
    cert = certify(
        args.n,
        brute_force=args.brute_force,
        budget=args.budget,
        workers=args.workers,
        progress=_progress_printer(f"verify {args.n}"),
    )
    timing = {"verify_ms": (time.perf_counter() - t0) * 1000}
    if args.format == "csv":
        row = {"n": str(args.n)}
        row.update({k: "true" if v else "false" for k, v in cert.checks().items()})
        row["mld"] = report.format_rational(cert.closed_form_mld)
        bf = cert.brute_force_mld
        row["brute_force_j"] = "" if bf is None else str(bf.witness_index)
        row["ok"] = "true" if cert.ok else "false"
        _emit(report.to_csv([row]))
    elif args.format == "tex":
        F = cert.member
        _emit(report.tex_cells_row([
            f"${F.n}$", f"${F.d}$", f"${report.tex_rational(cert.closed_form_mld)}$",
            "pass" if cert.ok else "FAIL",
        ]))
    else:
        inputs = {"n": str(args.n), "brute_force": args.brute_force,
                  "budget": str(args.budget), "workers": str(args.workers)}
        _emit(report.dumps_json(report.report_document("verify", inputs, report.certificate_doc(cert), timing)))
    return EXIT_OK if cert.ok else EXIT_FAILED


def _emit_mld(args, command: str, inputs: dict, result, timing, extra=None) -> None:
    if args.format == "csv":
        _emit(report.to_csv([report.mld_row(result)]))
    elif args.format == "tex":
        row = report.mld_row(result)
        _emit(report.tex_cells_row([row["value"], row["classification"], row["witness_group_index"]]))
    else:
        results = report.mld_doc(result)
        if extra:
            results.update(extra)
        _emit(report.dumps_json(report.report_document(command, inputs, results, timing)))


def cmd_mld_quotient(args) -> int:
    q = QuotientSingularity(args.r, tuple(_int_list(args.weights)))
    t0 = time.perf_counter()
    try:
        result = cyclic_quotient_mld(q, workers=args.workers, progress=_progress_printer("quotient"))
    except IllFormedQuotient as exc:
        raise UsageError(str(exc)) from None
    timing = {"scan_ms": (time.perf_counter() - t0) * 1000}
    inputs = {"r": str(q.r), "weights": [str(b) for b in q.weights]}
    _emit_mld(args, "mld quotient", inputs, result, timing)
    return EXIT_OK


def cmd_mld_hypersurface(args) -> int:
    try:
        chart = parse_polynomial(args.chart.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read chart: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{args.chart}: {exc}") from None
    weights = _int_list(args.weights) if args.weights else list(chart.weights)
    t0 = time.perf_counter()
    try:
        result = hypersurface_quotient_mld(
            chart, args.group, weights, workers=args.workers,
            progress=_progress_printer("hypersurface"),
        )
    except ToricDivisorError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    timing = {"scan_ms": (time.perf_counter() - t0) * 1000}
    inputs = {"chart": str(args.chart), "group": str(args.group), "weights": [str(w) for w in weights]}
    extra = {"assumptions": {"newton_nondegenerate": "assumed, not checked"}}
    _emit_mld(args, "mld hypersurface", inputs, result, timing, extra)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.start < 2 or args.stop < args.start:
        raise UsageError(f"need 2 <= from <= to, got from={args.start} to={args.stop}")
    t0 = time.perf_counter()
    rows, docs, all_ok = [], [], True
    for n in range(args.start, args.stop + 1):
        cert = certify(n, workers=args.workers)
        all_ok &= cert.ok
        rows.append(report.family_row(cert.member, cert.alpha, cert.ok))
        docs.append(rows[-1])
    timing = {"table_ms": (time.perf_counter() - t0) * 1000}
    if args.format == "csv":
        _emit(report.to_csv(rows))
    elif args.format == "tex":
        for n in range(args.start, args.stop + 1):
            F = build_family(n)
            _emit(report.tex_family_row(F, nu_bounds(F)))
    else:
        inputs = {"from": str(args.start), "to": str(args.stop)}
        _emit(report.dumps_json(report.report_document("table", inputs, {"rows": docs, "ok": all_ok}, timing)))
    return EXIT_OK if all_ok else EXIT_FAILED


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is None:
        try:
            args.workers = default_workers()
        except ValueError:
            parser.error("MLDLAB_WORKERS must be an integer")
    handlers = {
        "family": cmd_family,
        "verify": cmd_verify,
        "table": cmd_table,
    }
    handler = handlers.get(args.command)
    if args.command == "mld":
        handler = cmd_mld_quotient if args.engine == "quotient" else cmd_mld_hypersurface
    try:
        return handler(args)
    except UsageError as exc:
        print(f"mldlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
