"""Recognition of read-once functions and reconstruction of their trees.

The engine is exhaustive over variable subsets, which is fine for the
table sizes used here (n up to about 10).
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from .boolfn import (
    PartialAssignment,
    TruthTable,
    compose,
    depends_on_all,
    is_bound_set,
    is_prime,
    relevant_vars,
    restrict,
    restrictions,
)
from .tree import Gate, Leaf, Node, gates, leaves, truth_table, variables


def _split_kind(tt: TruthTable, side: Sequence[int]) -> set[str]:
    """Symbols o for which tt = a(side) o b(rest) with a, b non-constant."""
    rs = restrictions(tt, side)
    nonconst = {r for r in rs if not r.is_constant()}
    consts = {r.bits for r in rs if r.is_constant()}
    out = set()
    if len(nonconst) != 1:
        if len(nonconst) == 2:
            a, b = nonconst
            if a == ~b and not consts:
                out.add("xor")
        return out
    if consts == {0}:
        out.add("and")
    elif consts == {(1 << (1 << len(side))) - 1}:
        out.add("or")
    return out


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _symbol_partition(tt: TruthTable) -> Optional[tuple[str, list[list[int]]]]:
    """Finest partition of the variables into blocks joined by one symbol."""
    n = tt.n
    splits: dict[str, list[tuple[int, ...]]] = {"and": [], "or": [], "xor": []}
    for k in range(1, n // 2 + 1):
        for side in combinations(range(1, n + 1), k):
            if k == n - k and 1 not in side:
                continue
            for op in _split_kind(tt, side):
                splits[op].append(side)
    for op in ("and", "or", "xor"):
        if not splits[op]:
            continue
        # variables stay together unless some split separates them
        parent = list(range(n + 1))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if not any((i in s) != (j in s) for s in splits[op]):
                    parent[_find(parent, j)] = _find(parent, i)
        blocks: dict[int, list[int]] = {}
        for i in range(1, n + 1):
            blocks.setdefault(_find(parent, i), []).append(i)
        return op, sorted(blocks.values())
    return None


def _component(tt: TruthTable, op: str, block: list[int]) -> TruthTable:
    """The factor of a symbol decomposition living on ``block``."""
    rs = restrictions(tt, block)
    if op == "xor":
        return rs[0]
    skip = 0 if op == "and" else (1 << (1 << len(block))) - 1
    return next(r for r in rs if r.bits != skip)


def _max_bound_sets(tt: TruthTable) -> Optional[list[list[int]]]:
    """Partition into maximal proper bound sets plus leftover singletons."""
    n = tt.n
    bound = []
    for k in range(n - 1, 1, -1):
        for s in combinations(range(1, n + 1), k):
            fs = frozenset(s)
            if any(fs <= b for b in bound):
                continue
            if is_bound_set(tt, s) is not None:
                bound.append(fs)
    covered = set()
    for b in bound:
        if covered & b:
            return None
        covered |= b
    blocks = [sorted(b) for b in bound] + [[i] for i in range(1, n + 1) if i not in covered]
    return sorted(blocks)


def _factor_full(tt: TruthTable, l: Optional[int]) -> Optional[Node]:
    # tt depends on all of its variables x1..xn
    n = tt.n
    if n == 1:
        return Leaf(1, tt.bits == 0b01)
    sym = _symbol_partition(tt)
    if sym is not None:
        op, blocks = sym
        comps = [_component(tt, op, b) for b in blocks]
        if op == "xor":
            acc = 0
            for c, b in zip(comps, blocks):
                acc ^= _embed_bits(c, b, n)
            if acc != tt.bits:
                comps[0] = ~comps[0]
        kids = []
        for c, b in zip(comps, blocks):
            sub = _factor_full(c, l)
            if sub is None:
                return None
            kids.append(_relabel(sub, b))
        return Gate(op, tuple(kids))
    blocks = _max_bound_sets(tt)
    if blocks is None or len(blocks) < 3:
        return None
    s = len(blocks)
    if l is not None and s > l:
        return None
    inner = []
    for b in blocks:
        if len(b) == 1:
            inner.append(TruthTable(1, 0b10))
        else:
            inner.append(is_bound_set(tt, b))
    outer = _outer_function(tt, blocks, inner)
    if outer is None or not is_prime(outer):
        return None
    kids = []
    for h, b in zip(inner, blocks):
        sub = _factor_full(h, l)
        if sub is None:
            return None
        kids.append(_relabel(sub, b))
    return Gate("prime", tuple(kids), outer)


def _embed_bits(t: TruthTable, vars_: Sequence[int], n: int) -> int:
    return compose(t, [TruthTable.var(n, v) for v in vars_]).bits


def _outer_function(tt: TruthTable, blocks, inner) -> Optional[TruthTable]:
    n = tt.n
    # a witness assignment of each block for each output value of its inner function
    wit = []
    for b, h in zip(blocks, inner):
        pts = {}
        for r in range(h.size):
            pts.setdefault(h.row(r), r)
        if len(pts) != 2:
            return None
        wit.append({val: sum(((r >> j) & 1) << (v - 1) for j, v in enumerate(b)) for val, r in pts.items()})
    s = len(blocks)
    bits = 0
    for y in range(1 << s):
        row = 0
        for j in range(s):
            row |= wit[j][(y >> j) & 1]
        if tt.row(row):
            bits |= 1 << y
    outer = TruthTable(s, bits)
    check = compose(outer, [TruthTable(n, _embed_bits(h, b, n)) for h, b in zip(inner, blocks)])
    if check != tt or not depends_on_all(outer):
        return None
    return outer


def _relabel(node: Node, vars_: Sequence[int]) -> Node:
    if isinstance(node, Leaf):
        return Leaf(vars_[node.var - 1], node.negated)
    return Gate(node.op, tuple(_relabel(c, vars_) for c in node.children), node.label)


def factor(tt: TruthTable, l: Optional[int] = None) -> Optional[Node]:
    """Canonical read-once tree of ``tt`` over B_l, or None if there is none.

    Irrelevant variables are dropped; leaves keep the original indices.
    Constant tables have no tree and give None.
    """
    rel = sorted(relevant_vars(tt))
    if not rel:
        return None
    if len(rel) < tt.n:
        drop = PartialAssignment.of({i: 0 for i in range(1, tt.n + 1) if i not in rel})
        core = restrict(tt, drop)
    else:
        core = tt
    tree = _factor_full(core, l)
    if tree is None:
        return None
    return _relabel(tree, rel)


def is_read_once(tt: TruthTable, l: Optional[int] = None, include_constants: bool = True) -> bool:
    if tt.is_constant():
        return include_constants
    return factor(tt, l) is not None


def _node_table(node: Node) -> tuple[frozenset[int], TruthTable]:
    return variables(node), truth_table(node)


def trees_equivalent(t1: Node, t2: Node) -> bool:
    """Same function and matching internal nodes up to negation.

    Internal nodes are matched by their leaf sets; matched nodes must compute
    equal or complementary functions.
    """
    if variables(t1) != variables(t2):
        raise ValueError("trees are over different variable sets")
    if truth_table(t1) != truth_table(t2):
        return False
    m1 = dict(_node_table(g) for g in gates(t1))
    m2 = dict(_node_table(g) for g in gates(t2))
    if m1.keys() != m2.keys():
        return False
    return all(m1[k] == m2[k] or m1[k] == ~m2[k] for k in m1)
