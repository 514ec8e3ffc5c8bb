"""Seeded property suites over random read-once trees.

Four suites are available: conservative sets are stable (``stability``),
hypercubes always expand to any larger dimension (``expansion``), hypercube
restrictions below a node look like that node's gate (``shape``), and
factoring a tree's table gives back the tree (``roundtrip``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Optional, Union

from .boolfn import TruthTable, similar
from .factor import factor, trees_equivalent
from .hypercube import expand_hypercube, find_hypercubes, find_one_hypercube, is_hypercube, is_stable, restriction_on
from .tree import Gate, gates, is_conservative, random_tree, truth_table, validate, variables

DEFAULT_BUDGET = {"stability": 500, "expansion": 500, "shape": 200, "roundtrip": 1000}


@dataclass
class SuiteResult:
    name: str
    instances: int
    failures: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.instances} instances, {len(self.failures)} failures)"
        if self.failures:
            line += " failing seeds: " + ",".join(map(str, self.failures[:20]))
        return line


@dataclass
class Report:
    seed: int
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.results)


def _instance_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def check_stability(s: int) -> bool:
    rng = random.Random(s)
    n = rng.randint(2, 6)
    l = rng.randint(3, 4)
    tree = random_tree(n, l, rng.getrandbits(32))
    u = None
    for _ in range(30):
        k = rng.randint(2, min(l, n))
        cand = frozenset(rng.sample(range(1, n + 1), k))
        if is_conservative(tree, cand):
            u = cand
            break
    if u is None:
        u = frozenset([rng.randint(1, n)])
    return is_stable(truth_table(tree), u)


def check_expansion(s: int) -> bool:
    rng = random.Random(s)
    n = rng.randint(2, 6)
    tree = random_tree(n, rng.randint(2, 4), rng.getrandbits(32))
    tt = truth_table(tree)
    while True:
        u = rng.sample(range(1, n + 1), rng.randint(1, n))
        h = find_one_hypercube(tt, u)
        if h is not None:
            break
    q = rng.randint(len(u), n)
    try:
        out = expand_hypercube(tt, h, q)
    except RuntimeError:
        return False
    return is_hypercube(tt, out) and out.dim == q and set(u) <= set(out.free)


def _chain(op: str, p: int) -> TruthTable:
    vs = [TruthTable.var(p, i).bits for i in range(1, p + 1)]
    fn = {"and": lambda a, b: a & b, "or": lambda a, b: a | b, "xor": lambda a, b: a ^ b}[op]
    return TruthTable(p, reduce(fn, vs))


def check_shape(s: int) -> bool:
    rng = random.Random(s)
    n = rng.randint(3, 6)
    tree = random_tree(n, rng.randint(3, 4), rng.getrandbits(32))
    tt = truth_table(tree)
    v: Gate = rng.choice(list(gates(tree)))
    if v.op == "prime":
        kids = list(v.children)
        shape = v.label
    else:
        kids = rng.sample(v.children, rng.randint(2, v.arity))
        shape = _chain(v.op, len(kids))
    u = [rng.choice(sorted(variables(c))) for c in kids]
    cubes = find_hypercubes(tt, u)
    if not cubes:
        return False
    return all(similar(restriction_on(tt, h), shape) is not None for h in cubes)


def check_roundtrip(s: int) -> bool:
    rng = random.Random(s)
    n = rng.randint(1, 8)
    l = rng.choice((3, 4))
    tree = random_tree(n, l, rng.getrandbits(32))
    tt = truth_table(tree)
    got = factor(tt, l)
    return (
        got is not None
        and truth_table(got) == tt
        and not validate(got, l)
        and trees_equivalent(got, tree)
    )


SUITES: dict[str, Callable[[int], bool]] = {
    "stability": check_stability,
    "expansion": check_expansion,
    "shape": check_shape,
    "roundtrip": check_roundtrip,
}


def property_suites(
    seed: int = 1,
    budget: Union[int, dict[str, int], None] = None,
    only: Optional[list[str]] = None,
) -> Report:
    """Run the selected suites; ``budget`` is a count per suite or one count for all."""
    if budget is None:
        counts = dict(DEFAULT_BUDGET)
    elif isinstance(budget, int):
        counts = {name: budget for name in SUITES}
    else:
        counts = {name: budget.get(name, 0) for name in SUITES}
    names = only if only else list(SUITES)
    unknown = set(names) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    report = Report(seed)
    for name in names:
        count = counts.get(name, 0)
        if count <= 0:
            continue
        res = SuiteResult(name, count)
        for i in range(count):
            s = _instance_seed(seed, i)
            if not SUITES[name](s):
                res.failures.append(s)
        report.results.append(res)
    return report
