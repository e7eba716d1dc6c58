"""Command-line interface.

Exit status: 0 when every reported check passes, 1 when a check fails
(reports carry the witness), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures, uniqueness
from .cube import (
    classify,
    config_from_json,
    config_to_json,
    dual_mirror,
    ResolutionConfiguration,
)
from .diagram import parse_pd, pd_from_json, serialize_pd, writhe_counts
from .errors import KhtotalError
from .f2linalg import Bigrading
from .perturbations import (
    IDENTITIES,
    bracket_matches_euler,
    check_identity,
    kauffman_bracket,
    khovanov_homology,
    lemma_check,
)

USAGE_ERROR = 2
CHECK_FAILED = 1


def _load_diagram(args):
    if getattr(args, "pd", None):
        return parse_pd(args.pd)
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return pd_from_json(fh.read())
    if getattr(args, "fixture", None):
        spec = fixtures.FixtureSpec(args.fixture, n=args.n, k=args.k,
                                    l=args.l, index=args.index,
                                    name=args.fixture
                                    if args.fixture in fixtures.NAMED_KNOTS
                                    else args.name)
        fam = spec.family
        if fam in fixtures.NAMED_KNOTS:
            return fixtures.named_knot(fam)
        return fixtures.fixture(spec)
    raise KhtotalError("no input: use --pd, --file or --fixture")


def _add_input_flags(p):
    p.add_argument("--pd", help="inline PD text, e.g. 'X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)'")
    p.add_argument("--file", help="JSON diagram file")
    p.add_argument("--fixture", help="fixture family or knot name")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--name", default=None)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized procedures")
    ap = argparse.ArgumentParser(prog="khtotal")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common],
                       help="validate a diagram and echo it")
    _add_input_flags(p)

    p = sub.add_parser("homology", parents=[common],
                       help="Khovanov homology over GF(2)")
    _add_input_flags(p)
    p.add_argument("--max-crossings", type=int, default=10)
    p.add_argument("--normalized", action="store_true",
                   help="apply the orientation grading shifts")

    p = sub.add_parser("identities", parents=[common],
                       help="differential identity checks")
    _add_input_flags(p)
    p.add_argument("--which", default="all",
                   choices=list(IDENTITIES) + ["all"])
    p.add_argument("--max-crossings", type=int, default=8)

    p = sub.add_parser("lemma", parents=[common],
                       help="element computations on figure fixtures")
    p.add_argument("--which", required=True,
                   choices=["lemma35", "lemma36", "lemma38"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--l", type=int, default=None)

    p = sub.add_parser("uniqueness", parents=[common],
                       help="solve the rule-constraint systems")
    p.add_argument("--scope", default="dim2")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--file", help="JSON file with a custom configuration family")
    p.add_argument("--rules", default=",".join(uniqueness.DEFAULT_RULES))

    sub.add_parser("catalog", parents=[common],
                   help="list the dimension-2 catalog")

    p = sub.add_parser("dualize", parents=[common],
                       help="mirror-dual of a configuration")
    p.add_argument("--file", help="configuration JSON file")
    p.add_argument("--fixture", help="only 'catalog2' is configuration-valued")
    p.add_argument("--index", type=int, default=None)
    return ap


def _emit(args, obj, text_lines):
    if args.json:
        print(json.dumps(obj))
    else:
        for line in text_lines:
            print(line)


def cmd_parse(args) -> int:
    d = _load_diagram(args)
    obj = {"name": d.name, "crossings": [list(x) for x in d.crossings],
           "free_loops": d.free_loops}
    _emit(args, obj, [serialize_pd(d)])
    return 0


def cmd_homology(args) -> int:
    d = _load_diagram(args)
    table = khovanov_homology(d, max_crossings=args.max_crossings,
                              normalized=args.normalized)
    raw = khovanov_homology(d, max_crossings=args.max_crossings)
    euler_ok = bracket_matches_euler(d, raw)
    obj = {"table": json.loads(table.to_json()),
           "bracket_euler_match": euler_ok}
    lines = ["  h    q  rank"]
    for (h, q), r in table.ranks:
        lines.append(f"{h:3d} {q:4d}  {r:4d}")
    lines.append(f"graded Euler characteristic matches bracket: {euler_ok}")
    _emit(args, obj, lines)
    return 0 if euler_ok else CHECK_FAILED


def cmd_identities(args) -> int:
    d = _load_diagram(args)
    which = list(IDENTITIES) if args.which == "all" else [args.which]
    reports = [check_identity(d, w, max_crossings=args.max_crossings)
               for w in which]
    obj = [json.loads(r.to_json()) for r in reports]
    lines = [f"{r.identity:12s} {r.status}" for r in reports]
    _emit(args, obj, lines)
    return 0 if all(r.passed for r in reports) else CHECK_FAILED


def cmd_lemma(args) -> int:
    params = {}
    if args.which == "lemma35":
        params["n"] = args.n
    else:
        params["k"] = args.k
        params["l"] = args.l
    report = lemma_check(args.which, **params)
    obj = json.loads(report.to_json())
    lines = [f"{report.name}{report.params}: "
             f"{'pass' if report.passed else 'fail'}"] + list(report.details)
    _emit(args, obj, lines)
    return 0 if report.passed else CHECK_FAILED


def cmd_uniqueness(args) -> int:
    rules = tuple(r for r in args.rules.split(",") if r)
    if args.scope == "dim2":
        reports = uniqueness.verify_uniqueness("dim2", rules=rules)
    elif args.scope.startswith("trees"):
        n = args.n
        if ":" in args.scope:
            n = int(args.scope.split(":", 1)[1])
        reports = uniqueness.verify_uniqueness("trees_up_to", n=n, rules=rules)
    elif args.scope == "custom":
        if not args.file:
            raise KhtotalError("custom scope needs --file")
        with open(args.file, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        family = []
        for item in payload["family"]:
            cfg = config_from_json(json.dumps(item["config"]))
            family.append((cfg, int(item["partner"])))
        reports = uniqueness.verify_uniqueness("custom", custom_family=family,
                                               rules=rules)
    else:
        raise KhtotalError(f"unknown scope {args.scope!r}")
    obj = [json.loads(r.to_json()) for r in reports]
    lines = []
    for r in reports:
        lines.append(f"{r.description} -> {'pass' if r.passed else 'fail'}")
        for e in r.entries:
            lines.append(f"  config {e.config_id}: dim {e.dimension}"
                         f" agrees_with_sss={e.agrees_with_sss}")
    _emit(args, obj, lines)
    return 0 if uniqueness.scope_passed(reports) else CHECK_FAILED


def cmd_catalog(args) -> int:
    rows = []
    for i, cfg, partner in uniqueness.catalog2():
        kinds = classify(cfg).kinds
        rows.append({"index": i, "partner": partner,
                     "kind": kinds[0] if kinds else "passive",
                     "circles": cfg.t})
    lines = [f"entry {r['index']}: {r['kind']:9s} circles={r['circles']}"
             f" dual partner={r['partner']}" for r in rows]
    _emit(args, rows, lines)
    return 0


def cmd_dualize(args) -> int:
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            cfg = config_from_json(fh.read())
    elif args.fixture == "catalog2" and args.index:
        cfg = fixtures.catalog2_configuration(args.index)
    else:
        raise KhtotalError("dualize needs --file or --fixture catalog2 --index i")
    dm = dual_mirror(cfg)
    out = config_to_json(dm)
    print(out)
    return 0


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    handlers = {
        "parse": cmd_parse,
        "homology": cmd_homology,
        "identities": cmd_identities,
        "lemma": cmd_lemma,
        "uniqueness": cmd_uniqueness,
        "catalog": cmd_catalog,
        "dualize": cmd_dualize,
    }
    try:
        return handlers[args.command](args)
    except KhtotalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
