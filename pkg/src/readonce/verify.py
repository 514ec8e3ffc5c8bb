"""Exhaustive checks that a test set separates a target from all read-once alternatives."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

from .boolfn import TruthTable, depends_on_all, full_mask, is_prime, var_mask
from .testgen import TestSet


class CostGuardError(ValueError):
    pass


class UniquenessError(ValueError):
    pass


@dataclass(frozen=True)
class AlternativeCatalog:
    """All n-variable read-once functions over B_l, sorted by table value."""

    n: int
    l: int
    include_constants: bool
    tables: tuple[TruthTable, ...]
    _bits: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_bits", frozenset(t.bits for t in self.tables))

    def __len__(self) -> int:
        return len(self.tables)

    def __contains__(self, tt: TruthTable) -> bool:
        return tt.n == self.n and tt.bits in self._bits

    @property
    def header(self) -> str:
        return f"{self.n},{self.l},{'constants' if self.include_constants else 'no-constants'}"

    def dump(self) -> str:
        return "\n".join([self.header] + [str(t) for t in self.tables]) + "\n"

    @classmethod
    def load(cls, text: str) -> AlternativeCatalog:
        lines = text.split()
        n, l, flag = lines[0].split(",")
        tables = tuple(TruthTable.parse(s) for s in lines[1:])
        return cls(int(n), int(l), flag == "constants", tables)


@lru_cache(maxsize=None)
def prime_tables(m: int) -> tuple[int, ...]:
    """Bit patterns of every prime m-variable function (none below m = 3)."""
    if m < 3:
        return ()
    return tuple(
        b for b in range(1 << (1 << m))
        if depends_on_all(TruthTable(m, b)) and is_prime(TruthTable(m, b))
    )


def _check_cost(n: int, l: int) -> None:
    eff = min(l, n)
    limit = 5 if eff <= 2 else 4 if eff == 3 else 3
    if n > limit or n < 1 or l < 2:
        raise CostGuardError(f"catalog for n={n}, l={l} exceeds the supported size (n <= {limit})")


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _exact_support(n: int, l: int) -> dict[frozenset[int], set[int]]:
    """For each variable subset S, the read-once tables depending exactly on S."""
    full = full_mask(n)
    primes = {m: [TruthTable(m, b) for b in prime_tables(m)] for m in range(3, min(l, n) + 1)}
    out: dict[frozenset[int], set[int]] = {}
    for k in range(1, n + 1):
        for s in combinations(range(1, n + 1), k):
            key = frozenset(s)
            if k == 1:
                v = var_mask(n, s[0])
                out[key] = {v, v ^ full}
                continue
            acc: set[int] = set()
            for part in _set_partitions(list(s)):
                if len(part) < 2:
                    continue
                choices = [sorted(out[frozenset(b)]) for b in part]
                labels = primes.get(len(part), [])
                for combo in product(*choices):
                    a = o = x = combo[0]
                    for c in combo[1:]:
                        a &= c
                        o |= c
                        x ^= c
                    acc.update((a, o, x))
                    for h in labels:
                        acc.add(_apply(h, combo, full))
            out[key] = acc
    return out


def _apply(h: TruthTable, args: tuple[int, ...], full: int) -> int:
    result = 0
    for r in range(h.size):
        if h.row(r):
            term = full
            for j, a in enumerate(args):
                term &= a if r >> j & 1 else a ^ full
            result |= term
    return result


def enumerate_readonce(n: int, l: int, include_constants: bool = True) -> AlternativeCatalog:
    """Catalog of every table on x1..xn computed by a read-once formula over B_l.

    Formulas may leave variables out, so tables with irrelevant variables are
    included.  Constants are included when ``include_constants`` is set.
    """
    _check_cost(n, l)
    found: set[int] = set()
    for tables in _exact_support(n, l).values():
        found |= tables
    if include_constants:
        found |= {0, full_mask(n)}
    return AlternativeCatalog(n, l, include_constants, tuple(TruthTable(n, b) for b in sorted(found)))


def load_or_build_catalog(path: Optional[str], n: int, l: int, include_constants: bool = True) -> AlternativeCatalog:
    """Read a cached catalog; rebuild and rewrite it when absent or stale."""
    header = f"{n},{l},{'constants' if include_constants else 'no-constants'}"
    if path and os.path.exists(path):
        with open(path) as fh:
            text = fh.read()
        if text.split("\n", 1)[0].strip() == header:
            return AlternativeCatalog.load(text)
    cat = enumerate_readonce(n, l, include_constants)
    if path:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(cat.dump())
        os.replace(tmp, path)
    return cat


def _check_labels(f: TruthTable, m: TestSet) -> None:
    if m.n != f.n:
        raise ValueError(f"test set has n={m.n}, target has n={f.n}")
    if (m.row_values ^ f.bits) & m.row_mask:
        raise ValueError("test-set labels disagree with the target function")


def find_agreeing_alternative(f: TruthTable, m: TestSet, catalog: AlternativeCatalog) -> Optional[TruthTable]:
    """Smallest catalog member other than f that matches f on every vector of m."""
    _check_labels(f, m)
    if catalog.n != f.n:
        raise ValueError("catalog and target have different variable counts")
    if f not in catalog:
        raise ValueError(f"target {f} is not in the catalog")
    mask, fb = m.row_mask, f.bits
    for g in catalog.tables:
        if g.bits != fb and not (g.bits ^ fb) & mask:
            return g
    return None


def is_checking_test(f: TruthTable, m: TestSet, catalog: AlternativeCatalog) -> bool:
    return find_agreeing_alternative(f, m, catalog) is None


def min_test_size(f: TruthTable, catalog: AlternativeCatalog) -> int:
    """Size of a smallest checking test, by search over subsets of the 2^n rows."""
    if f.n > 3:
        raise CostGuardError("exact minimal test search is limited to n <= 3")
    if f not in catalog:
        raise ValueError(f"target {f} is not in the catalog")
    diffs = [g.bits ^ f.bits for g in catalog.tables if g != f]
    rows = range(f.size)
    for k in range(f.size + 1):
        for pick in combinations(rows, k):
            mask = sum(1 << r for r in pick)
            if all(d & mask for d in diffs):
                return k
    raise AssertionError("the full table always separates f")


def identify_from_test(m: TestSet, catalog: AlternativeCatalog) -> TruthTable:
    """The unique catalog member consistent with every vector of m."""
    if m.n != catalog.n:
        raise ValueError("test set and catalog have different variable counts")
    mask, vals = m.row_mask, m.row_values
    hits = [g for g in catalog.tables if not (g.bits ^ vals) & mask]
    if len(hits) != 1:
        raise UniquenessError(f"{len(hits)} catalog members are consistent with the test set")
    return hits[0]
