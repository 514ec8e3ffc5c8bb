"""Command-line interface.

Exit codes: 0 on success, 1 on a negative verdict, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .boolfn import PartialAssignment, TruthTable, depends_on_all
from .factor import factor
from .hypercube import Hypercube, expand_hypercube, find_hypercubes, find_instability
from .properties import DEFAULT_BUDGET, SUITES, property_suites
from .testgen import TestSet, hypercube_set, raw_vectors, relevance_table
from .tree import format_formula, parse, truth_table, variables
from .verify import (
    find_agreeing_alternative,
    identify_from_test,
    load_or_build_catalog,
    min_test_size,
    UniquenessError,
)


class Outcome:
    def __init__(self, code: int = 0):
        self.code = code
        self.lines: list[str] = []
        self.data: dict = {}

    def say(self, line: str) -> None:
        self.lines.append(line)


def _varlist(text: str) -> list[int]:
    try:
        vs = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise ValueError(f"bad variable list {text!r}") from None
    if not vs:
        raise ValueError("empty variable list")
    return vs


def _target(args) -> TruthTable:
    if args.formula is not None:
        tree = parse(args.formula, getattr(args, "l", None))
        return truth_table(tree, n=max(variables(tree)))
    return TruthTable.parse(args.tt)


def _full_target(args) -> TruthTable:
    tt = _target(args)
    if not depends_on_all(tt):
        raise ValueError(f"target {tt} does not depend on all of x1..x{tt.n}")
    return tt


def _catalog(args, n: int):
    return load_or_build_catalog(args.catalog_cache, n, args.l, not args.no_constants)


def _vec(bits) -> str:
    return "".join(map(str, bits))


def cmd_gen_test(args, out: Outcome) -> None:
    tt = _full_target(args)
    if args.no_dedup:
        vecs = raw_vectors(tt, args.l, args.all_cubes)
        out.say(f"n={tt.n}")
        out.lines += [f"{_vec(b)} {v}" for b, v in vecs]
    else:
        ts = hypercube_set(tt, args.l, args.all_cubes)
        vecs = list(ts.vectors)
        out.lines += ts.dump().splitlines()
    out.data = {"n": tt.n, "l": args.l, "vectors": [[_vec(b), v] for b, v in vecs]}


def cmd_reltable(args, out: Outcome) -> None:
    tt = _full_target(args)
    table = relevance_table(tt, args.l)
    out.lines += [str(r) for r in table.rows]
    out.data = {
        "n": tt.n,
        "l": args.l,
        "rows": [
            {
                "w": list(r.w),
                "cube": None if r.is_star else str(r.cube),
                "vectors": [[_vec(b), v] for b, v in r.vectors],
            }
            for r in table.rows
        ],
    }


def _load_test(path: str) -> TestSet:
    try:
        with open(path) as fh:
            return TestSet.load(fh.read())
    except OSError as e:
        raise ValueError(f"cannot read test file {path!r}: {e.strerror}") from None


def cmd_verify(args, out: Outcome) -> None:
    tt = _full_target(args)
    ts = _load_test(args.test)
    g = find_agreeing_alternative(tt, ts, _catalog(args, tt.n))
    out.data = {"checking_test": g is None, "counterexample": None if g is None else str(g)}
    if g is None:
        out.say("CHECKING TEST: yes")
    else:
        out.code = 1
        out.say("CHECKING TEST: no")
        out.say(f"counterexample: {g}")


def cmd_factor(args, out: Outcome) -> None:
    tt = _target(args)
    tree = factor(tt, args.l)
    if tree is None:
        out.code = 1
        out.say("NOT READ-ONCE")
        out.data = {"read_once": False, "formula": None}
    else:
        text = format_formula(tree)
        out.say(text)
        out.data = {"read_once": True, "formula": text}


def _parse_fix(text: Optional[str]) -> PartialAssignment:
    if not text:
        return PartialAssignment()
    pairs = []
    for item in text.replace(" ", "").split(","):
        var, _, bit = item.partition("=")
        try:
            pairs.append((int(var), int(bit)))
        except ValueError:
            raise ValueError(f"bad fixing {item!r}; expected <var>=<bit>") from None
    return PartialAssignment.of(pairs)


def cmd_hypercube(args, out: Outcome) -> None:
    tt = _target(args)
    if args.op == "find":
        cubes = find_hypercubes(tt, _varlist(args.w))
        if not args.all:
            cubes = cubes[:1]
        out.lines += [str(c) for c in cubes] or ["*"]
        out.data = {"cubes": [str(c) for c in cubes]}
    elif args.op == "expand":
        if args.q is None:
            raise ValueError("expand needs --q")
        free = tuple(sorted(_varlist(args.w)))
        h = Hypercube(free, _parse_fix(args.fix))
        res = expand_hypercube(tt, h, args.q)
        out.say(str(res))
        out.data = {"cube": str(res)}
    else:
        bad = find_instability(tt, _varlist(args.w))
        if bad is None:
            out.say("STABLE: yes")
            out.data = {"stable": True}
        else:
            w, h = bad
            out.code = 1
            out.say("STABLE: no")
            out.say("w=" + ",".join(map(str, sorted(w))) + "\t" + (str(h) if h else "no hypercube for u"))
            out.data = {"stable": False, "w": sorted(w), "cube": str(h) if h else None}


def cmd_enumerate(args, out: Outcome) -> None:
    if args.n is None:
        raise ValueError("enumerate needs --n")
    cat = _catalog(args, args.n)
    out.lines += cat.dump().splitlines()
    out.data = {"n": cat.n, "l": cat.l, "constants": cat.include_constants, "tables": [str(t) for t in cat.tables]}


def cmd_min_test(args, out: Outcome) -> None:
    tt = _full_target(args)
    k = min_test_size(tt, _catalog(args, tt.n))
    out.say(str(k))
    out.data = {"min_test_size": k}


def cmd_identify(args, out: Outcome) -> None:
    ts = _load_test(args.test)
    try:
        g = identify_from_test(ts, _catalog(args, ts.n))
    except UniquenessError as e:
        out.code = 1
        out.say(f"NOT UNIQUE: {e}")
        out.data = {"unique": False}
        return
    tree = factor(g, args.l)
    out.say(str(g))
    if tree is not None:
        out.say(format_formula(tree))
    out.data = {"unique": True, "tt": str(g), "formula": format_formula(tree) if tree else None}


def cmd_props(args, out: Outcome) -> None:
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    report = property_suites(args.seed, budget, args.suite)
    out.lines += str(report).splitlines() if report.results else []
    out.say("ALL PASS" if report.passed else "SOME FAILED")
    out.code = 0 if report.passed else 1
    out.data = {
        "seed": args.seed,
        "passed": report.passed,
        "suites": [{"name": r.name, "instances": r.instances, "failures": r.failures} for r in report.results],
    }


def _add_target(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--formula", help="read-once formula, e.g. 'or(x1,and(x2,~x3))'")
    g.add_argument("--tt", help="truth table as tt:<n>:<hex>")


def _add_common(p: argparse.ArgumentParser, l_required: bool = True) -> None:
    p.add_argument("--l", type=int, required=l_required, help="basis arity bound")
    p.add_argument("--json", action="store_true", help="emit a JSON document")


def _add_catalog(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-constants", action="store_true", help="leave constants out of the alternatives")
    p.add_argument("--catalog-cache", metavar="PATH", help="catalog cache file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="readonce", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-test", help="hypercube-set test for a target")
    _add_target(p)
    _add_common(p)
    p.add_argument("--all-cubes", action="store_true", help="use every hypercube of every subset")
    p.add_argument("--no-dedup", action="store_true", help="keep duplicate vectors")
    p.set_defaults(func=cmd_gen_test)

    p = sub.add_parser("reltable", help="relevance table of a target")
    _add_target(p)
    _add_common(p)
    p.set_defaults(func=cmd_reltable)

    p = sub.add_parser("verify", help="check a test set against all alternatives")
    _add_target(p)
    _add_common(p)
    _add_catalog(p)
    p.add_argument("--test", required=True, help="test-set file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factor", help="read-once tree of a truth table")
    _add_target(p)
    _add_common(p, l_required=False)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("hypercube", help="find, expand or test stability")
    p.add_argument("op", choices=("find", "expand", "stable"))
    _add_target(p)
    p.add_argument("--w", required=True, help="variable set, e.g. 2,3 (for stable: the set u)")
    p.add_argument("--fix", help="fixing of the other variables, e.g. 1=0,4=1 (expand)")
    p.add_argument("--q", type=int, help="target dimension (expand)")
    p.add_argument("--all", action="store_true", help="list every hypercube (find)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hypercube, l=None)

    p = sub.add_parser("enumerate", help="catalog of read-once functions")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    _add_catalog(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("min-test", help="exact minimum checking-test size (n <= 3)")
    _add_target(p)
    _add_common(p)
    _add_catalog(p)
    p.set_defaults(func=cmd_min_test)

    p = sub.add_parser("identify", help="the unique alternative consistent with a test set")
    _add_common(p)
    _add_catalog(p)
    p.add_argument("--test", required=True, help="test-set file")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("props", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="run only this suite (repeatable)")
    p.add_argument("--budget", type=int, help="instances per suite (default: per-suite defaults)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_props)
    return ap


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = Outcome()
    try:
        args.func(args, out)
    except ValueError as e:
        print(f"error: {e}", file=stderr)
        return 2
    if args.json:
        doc = dict(out.data, exit_code=out.code)
        print(json.dumps(doc, sort_keys=True), file=stdout)
    else:
        for line in out.lines:
            print(line, file=stdout)
    return out.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
