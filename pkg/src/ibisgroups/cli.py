"""Command line interface: ``ibisgroups <command> ...``.

Every command builds a JSON document; the text output is a rendering of it.
Exit codes for ``ibis``: 0 IBIS, 1 not IBIS, 2 inconclusive (budget).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import __version__
from . import atlas as A
from .bases import (BudgetExhausted, NotIBISError, default_budget, ibis_check,
                    matroid_from_group)
from .perm import ParseError, dumps_group, load_group, render
from .stabchain import IntransitiveError, build_chain, is_primitive, orbits
from .verify import CASE_IDS, CASES, UnknownCaseError, get_case, run_case

EXIT_IBIS, EXIT_NOT_IBIS, EXIT_INCONCLUSIVE = 0, 1, 2


def _emit(doc: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    for key, value in doc.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        out.write(f"{key}: {value}\n")


def _load(path: str):
    try:
        return load_group(path)
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc.strerror}")
    except ParseError as exc:
        raise SystemExit(f"error: {path}: {exc}")


def cmd_info(args) -> int:
    g = _load(args.group)
    chain = build_chain(g)
    part = orbits(chain) if g.degree else None
    cells = [[x + 1 for x in sorted(c)] for c in part.cells] if part else []
    doc = {"group": g.label, "degree": g.degree, "order": chain.order(),
           "generators": [render(p) for p in g.generators],
           "transitive": len(cells) <= 1, "orbits": cells}
    try:
        doc["primitive"] = is_primitive(g, chain)
    except IntransitiveError:
        doc["primitive"] = None
    doc["version"] = __version__
    _emit(doc, args.json)
    return 0


def cmd_ibis(args) -> int:
    g = _load(args.group)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        v = ibis_check(g, mode=args.mode, budget=budget, seed=args.seed)
    except BudgetExhausted as exc:
        doc = {"group": g.label, "degree": g.degree, "status": "inconclusive",
               "search": exc.what, "lower": exc.lower, "upper": exc.upper,
               "nodes_explored": exc.nodes, "seed": args.seed, "budget": budget,
               "version": __version__}
        _emit(doc, True)
        return EXIT_INCONCLUSIVE
    doc = v.to_dict(g, seed=args.seed)
    doc["budget"] = budget
    doc["version"] = __version__
    _emit(doc, True)
    return EXIT_IBIS if v.is_ibis else EXIT_NOT_IBIS


def cmd_matroid(args) -> int:
    g = _load(args.group)
    try:
        m = matroid_from_group(g, degree_bound=args.degree_bound)
    except (NotIBISError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = {"group": g.label, **m.to_dict(), "version": __version__}
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"rank {m.rank}, {len(m.bases)} bases written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    if args.all:
        cases = CASES
    else:
        try:
            cases = [get_case(args.case)]
        except UnknownCaseError:
            print(f"error: unknown case {args.case!r}; known: {', '.join(CASE_IDS)}", file=sys.stderr)
            return 2
    results = []
    start = time.perf_counter()
    for case in cases:
        r = run_case(case, seed=args.seed)
        results.append(r)
        status = "PASS" if r.passed else "FAIL"
        errata = sum(1 for c in r.checks if c.erratum and not c.passed)
        note = f" ({errata} published statement(s) contradicted)" if errata else ""
        print(f"{status} {r.id:28s} {len(r.checks):3d} checks {r.seconds:7.2f}s{note}")
        for c in r.checks:
            if not c.passed:
                tag = "erratum" if c.erratum else "failed"
                print(f"     {tag}: {c.name}: expected {c.expected!r}, observed {c.observed!r}")
        if r.error:
            print(f"     error: {r.error}")
    ok = all(r.passed for r in results)
    report = {"version": __version__, "seed": args.seed, "passed": ok,
              "seconds": round(time.perf_counter() - start, 3),
              "cases": [r.to_dict() for r in results]}
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")
    print(f"{sum(r.passed for r in results)}/{len(results)} cases passed")
    return 0 if ok else 1


def cmd_atlas_list(args) -> int:
    for name, (_, params) in A.BUILDERS.items():
        print(f"{name} {' '.join('<' + p + '>' for p in params)}".rstrip())
    return 0


def cmd_atlas_build(args) -> int:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            entry = A.build(args.name, *args.params)
    except (A.AtlasError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    g = entry.generated()
    text = dumps_group(g.with_label(entry.name))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"{entry.name}: degree {entry.degree}, order {entry.order()} -> {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ibisgroups",
                                description="Irredundant bases of permutation groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="order, orbits and primitivity of a group file")
    s.add_argument("group")
    s.add_argument("--json", action="store_true", help="print JSON instead of text")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("ibis", help="decide whether all irredundant bases have one size")
    s.add_argument("group")
    s.add_argument("--mode", choices=("exact", "fast"), default="exact")
    s.add_argument("--budget", type=int, default=None,
                   help="node budget (default: $IBIS_BUDGET or 10^8)")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_ibis)

    s = sub.add_parser("verify-paper", help="run the verification case matrix")
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument("--case", help="one case id")
    which.add_argument("--all", action="store_true")
    s.add_argument("--report", help="write a JSON report here")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("matroid", help="the matroid of irredundant bases of an IBIS group")
    s.add_argument("group")
    s.add_argument("--out", help="write JSON here instead of stdout")
    s.add_argument("--degree-bound", type=int, default=40)
    s.set_defaults(func=cmd_matroid)

    s = sub.add_parser("atlas", help="list or build named groups")
    asub = s.add_subparsers(dest="atlas_command", required=True)
    a = asub.add_parser("list")
    a.set_defaults(func=cmd_atlas_list)
    a = asub.add_parser("build")
    a.add_argument("name")
    a.add_argument("params", nargs="*")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_atlas_build)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
