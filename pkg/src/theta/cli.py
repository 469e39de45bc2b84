"""Command-line interface: ``theta <command> [options]``.

Exit status: 0 success, 1 a check failed, 2 usage or input error,
3 resource error (memory cap, unwritable output).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__

log = logging.getLogger("theta")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        from .export import ExportError
        from pathlib import Path

        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ExportError(f"cannot write {args.output}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)


def _dump(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    from .export import render

    _emit(args, render("minimal", args.format, order_count=args.orders))
    return EXIT_OK


def cmd_equations(args) -> int:
    from .export import render

    kind = "reduced" if args.reduce else args.kind
    if args.reduce and args.kind != "quadratic":
        raise UsageError("--reduce applies to quadratic relations")
    if args.max_size is not None:
        from .equations import generate_quadratic
        from .pipeline import pipeline

        if args.kind != "quadratic" or args.reduce:
            raise UsageError("--max-size applies to unreduced quadratic relations")
        rels = generate_quadratic(args.orders, pipeline(args.orders).table, max_size=args.max_size)
        if args.format == "csv":
            raise UsageError("--max-size output is JSON only")
        _dump(args, [r.to_json() for r in rels])
        return EXIT_OK
    _emit(args, render("equations", args.format, order_count=args.orders, kind=kind))
    return EXIT_OK


def cmd_substitution(args) -> int:
    from .export import render

    _emit(args, render("substitution", args.format, order_count=args.orders))
    return EXIT_OK


def cmd_solve(args) -> int:
    from .groebner import field_for, standard_monomials
    from .pipeline import pipeline

    p = pipeline(args.orders)
    if args.method == "brute":
        if args.box < 1:
            raise UsageError("--box must be at least 1")
        pts = p.solutions(args.box, reference=_reference_rows(args.orders))
        names = [f"x{v}" for v in p.basis]
        if args.format == "csv":
            from .export import _csv

            _emit(args, _csv(names, [list(pt) for pt in pts]))
        else:
            _dump(args, {"box": args.box, "count": len(pts), "solutions": [dict(zip(names, pt)) for pt in pts]})
        return EXIT_OK
    field = field_for(args.field)
    gb = p.groebner(field)
    sm = standard_monomials(gb)
    _dump(args, {
        "field": str(field),
        "order": "grevlex",
        "variables": [f"x{v}" for v in p.substitution.free],
        "basis_size": len(gb.polys),
        "quotient_dimension": "infinite" if sm is None else len(sm),
        "basis": [str(q) for q in gb.as_polys()],
    })
    return EXIT_OK


def _reference_rows(order_count: int):
    if order_count != 2:
        return None
    from .data import load

    return [tuple(r[1]) for r in load(check=False).appendix_c]


def _measure_set(args):
    from .measures import bundled_measures, computed_measures

    if args.orders == 2:
        return bundled_measures()
    return computed_measures(args.orders)


def _pick(ms, mid):
    try:
        return ms[mid]
    except KeyError:
        raise UsageError(f"no measure {mid}; ids run 1..{len(ms)}") from None


def cmd_measures(args) -> int:
    from .structures import inclusion, parse

    if args.orders != 2 and args.action != "list":
        raise UsageError("measure evaluation is implemented for two orders")
    ms = _measure_set(args)
    if args.action == "list":
        from .export import render

        _emit(args, render("measures", args.format, order_count=args.orders, paper_style=args.paper_style))
        return EXIT_OK
    chosen = [_pick(ms, args.measure)] if args.measure is not None else list(ms)
    if args.action == "support":
        sups = dict(zip((m.id for m in ms), ms.supports))
        _dump(args, [{"id": m.id, "support": sups[m.id].name if sups[m.id] else None,
                      "description": sups[m.id].description if sups[m.id] else None} for m in chosen])
        return EXIT_OK
    # eval
    if args.target is None:
        raise UsageError("eval needs --target")
    X = parse(args.target, 2)
    subset = [int(s) for s in args.subset.split(",") if s.strip()] if args.subset else []
    i = inclusion(X, subset)
    vec = ms.evaluator.embedding(i)
    index = {m.id: k for k, m in enumerate(ms)}
    _dump(args, {
        "target": args.target,
        "subset": sorted(set(subset)),
        "source": str(i.source) if i.source.size else "-",
        "values": {str(m.id): int(vec[index[m.id]]) for m in chosen},
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import verify

    report = verify(args.suite, with_n3=not args.skip_n3, budget=args.budget, seed=args.seed)
    if args.format == "json":
        _dump(args, report.to_json())
    else:
        _emit(args, "\n".join(report.lines()) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bench(args) -> int:
    from .bench import count_minimal_benchmark

    cap = int(args.memory_cap * (1 << 30))
    r = count_minimal_benchmark(args.orders_bench, threads=args.threads, dedup=args.dedup, memory_cap=cap)
    _dump(args, r.to_json())
    if args.orders_bench == 3 and r.count != 1999581:
        return EXIT_FAIL
    return EXIT_OK


def cmd_export(args) -> int:
    from .export import export

    export(args.what, args.format, args.output, order_count=args.orders, kind=args.kind,
           paper_style=args.paper_style)
    log.info("wrote %s", args.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def _common(suppress: bool) -> argparse.ArgumentParser:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--orders", type=int, default=d(2), metavar="N", help="number of total orders (default 2)")
    common.add_argument("--format", choices=("json", "csv", "text"), default=d(None),
                        help="output format (default json; text for verify)")
    common.add_argument("--threads", type=int, default=d(None), metavar="K",
                        help="worker processes (default: available cores)")
    common.add_argument("--seed", type=int, default=d(0), metavar="S", help="seed for sampled checks")
    common.add_argument("-o", "--output", default=d(None), metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=False)
    # subcommands repeat the global flags without defaults, so a flag given
    # before the subcommand is not overwritten by the subparser
    common_sub = _common(suppress=True)

    parser = argparse.ArgumentParser(prog="theta", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("enumerate-minimal", parents=[common_sub], help="list the minimal marked structures")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("equations", parents=[common_sub], help="linear or quadratic relations")
    p.add_argument("--kind", choices=("linear", "quadratic"), default="linear")
    p.add_argument("--reduce", action="store_true", help="apply the vanishing and sign reductions")
    p.add_argument("--max-size", type=int, default=None, help="size bound for quadratic data")
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("substitution", parents=[common_sub], help="every generator over the basis")
    p.set_defaults(func=cmd_substitution)

    p = sub.add_parser("solve", parents=[common_sub], help="integer points or quotient dimension")
    p.add_argument("--method", choices=("brute", "groebner"), default="brute")
    p.add_argument("--box", type=int, default=1, help="coordinate bound for brute force")
    p.add_argument("--field", default="q", help="q, f2 or fP for a prime P (groebner)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("measures", parents=[common_sub], help="list, evaluate or classify measures")
    p.add_argument("action", choices=("list", "eval", "support"))
    p.add_argument("--measure", type=int, default=None, help="measure id (default: all)")
    p.add_argument("--target", help="target permutation, e.g. 3142")
    p.add_argument("--subset", help="image of the source, as first-order labels, e.g. 1,4")
    p.add_argument("--paper-style", action="store_true", help="+, - and · glyphs in CSV")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("verify", parents=[common_sub], help="run the reproduction checks")
    p.add_argument("--suite", choices=("all", "enumeration", "equations", "solve", "measures"), default="all")
    p.add_argument("--skip-n3", action="store_true", help="leave out the three-order count")
    p.add_argument("--budget", type=int, default=6, help="size budget for the axiom checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench-n3", parents=[common_sub], help="count minimal structures for three orders")
    p.add_argument("--n", dest="orders_bench", type=int, default=3, help="number of orders (default 3)")
    p.add_argument("--memory-cap", type=float, default=4.0, metavar="GIB")
    p.add_argument("--dedup", action="store_true", help="hash every structure to confirm uniqueness")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", parents=[common_sub], help="write a table to a file")
    p.add_argument("what", choices=("minimal", "equations", "substitution", "solutions", "measures"))
    p.add_argument("--kind", choices=("linear", "quadratic", "reduced"), default="linear")
    p.add_argument("--paper-style", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    from .amalgamation import UnsupportedSize
    from .bench import ResourceLimit
    from .data import DataError
    from .export import ExportError
    from .structures import DomainError, MalformedInput

    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.format is None:
        args.format = "text" if args.command == "verify" else "json"
    elif args.format == "text" and args.command != "verify":
        parser.error("--format text is only available for verify")
    if args.command == "export" and not args.output:
        parser.error("export needs --output PATH")
    if args.orders < 1:
        parser.error("--orders must be at least 1")
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    try:
        return args.func(args)
    except DataError as exc:
        print(f"theta: data error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, MalformedInput, DomainError, UnsupportedSize, ValueError) as exc:
        print(f"theta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimit, MemoryError, ExportError) as exc:
        print(f"theta: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
