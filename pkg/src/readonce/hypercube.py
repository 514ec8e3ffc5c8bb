"""Relevance hypercubes: sub-cubes on which a function depends on every free variable."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .boolfn import (
    PartialAssignment,
    TruthTable,
    _offsets,
    depends_on_all,
    full_mask_vars,
    relevant_vars,
    restrict,
)


class InvalidHypercube(ValueError):
    pass


@dataclass(frozen=True)
class Hypercube:
    free: tuple[int, ...]
    fix: PartialAssignment

    @property
    def dim(self) -> int:
        return len(self.free)

    def points(self, n: int) -> list[tuple[int, ...]]:
        """The 2^dim input vectors of the cube, in the cube's own row order."""
        fmask = _vars_mask(self.free)
        return [tuple((self.fix.values | o) >> j & 1 for j in range(n)) for o in _offsets(fmask)]

    def rows(self) -> list[int]:
        return [self.fix.values | o for o in _offsets(_vars_mask(self.free))]

    def contains(self, other: Hypercube) -> bool:
        """True iff ``other`` is a sub-cube of this cube."""
        return other.fix.extends(self.fix)

    def __str__(self) -> str:
        free = ",".join(str(v) for v in self.free)
        fix = ",".join(f"{v}={b}" for v, b in self.fix.bindings.items())
        return f"hc:{{free={free}; fix={fix}}}"


def _vars_mask(vars_: Iterable[int]) -> int:
    m = 0
    for v in vars_:
        m |= 1 << (v - 1)
    return m


def _cube(n: int, free_mask: int, values: int) -> Hypercube:
    free = tuple(i for i in range(1, n + 1) if free_mask >> (i - 1) & 1)
    return Hypercube(free, PartialAssignment(full_mask_vars(n) & ~free_mask, values))


def _check_w(tt: TruthTable, w) -> int:
    wm = _vars_mask(w)
    if wm >> tt.n or any(v < 1 for v in w):
        raise ValueError(f"variable set {sorted(w)} not within 1..{tt.n}")
    return wm


def iter_hypercubes(tt: TruthTable, w) -> Iterator[Hypercube]:
    wm = _check_w(tt, w)
    comp = full_mask_vars(tt.n) & ~wm
    for values in _offsets(comp):
        cube = _cube(tt.n, wm, values)
        if depends_on_all(restrict(tt, cube.fix)):
            yield cube


def find_hypercubes(tt: TruthTable, w) -> list[Hypercube]:
    """All relevance hypercubes for ``w``, in ascending order of the fixing."""
    return list(iter_hypercubes(tt, w))


def find_one_hypercube(tt: TruthTable, w) -> Optional[Hypercube]:
    return next(iter_hypercubes(tt, w), None)


def is_hypercube(tt: TruthTable, h: Hypercube) -> bool:
    wm = _vars_mask(h.free)
    if h.fix.mask != full_mask_vars(tt.n) & ~wm:
        return False
    return depends_on_all(restrict(tt, h.fix))


def restriction_on(tt: TruthTable, h: Hypercube) -> TruthTable:
    if h.fix.mask != full_mask_vars(tt.n) & ~_vars_mask(h.free):
        raise InvalidHypercube(f"{h} does not bind exactly the complement of its free set")
    r = restrict(tt, h.fix)
    if not depends_on_all(r):
        raise InvalidHypercube(f"projection on {h} does not depend on all its variables")
    return r


def expand_hypercube(tt: TruthTable, h: Hypercube, q: int) -> Hypercube:
    """Grow ``h`` one free variable at a time until it has dimension ``q``.

    Each step tries every bound variable (ascending) with every re-fixing of
    the other bound variables, so the result need not extend h's fixing.
    """
    if not is_hypercube(tt, h):
        raise InvalidHypercube(f"{h} is not a relevance hypercube of the table")
    if not h.dim <= q <= tt.n:
        raise ValueError(f"target dimension {q} outside {h.dim}..{tt.n}")
    cur = h
    while cur.dim < q:
        fm = _vars_mask(cur.free)
        for v in range(1, tt.n + 1):
            if fm >> (v - 1) & 1:
                continue
            found = find_one_hypercube(tt, cur.free + (v,))
            if found is not None:
                cur = found
                break
        else:
            raise RuntimeError(f"no expansion of {cur} exists; the table must depend on all its variables")
    return cur


def _u_cube_patterns(tt: TruthTable, u_mask: int) -> list[int]:
    comp = full_mask_vars(tt.n) & ~u_mask
    out = []
    for values in _offsets(comp):
        if depends_on_all(restrict(tt, PartialAssignment(comp, values))):
            out.append(values)
    return out


def stability_violations(tt: TruthTable, u) -> Iterator[tuple[frozenset[int], Optional[Hypercube]]]:
    """Yield every (w, H) that breaks stability of ``u``.

    w ranges over supersets of u inside the relevant variables (by size, then
    ascending), H over the relevance hypercubes for w.  A hypercube for u
    inside H is one whose fixing extends H's.  When no hypercube for u exists
    at all, ``(x, None)`` is yielded first.
    """
    x = relevant_vars(tt)
    u = frozenset(u)
    if not u <= x:
        raise ValueError(f"{sorted(u - x)} are not relevant variables")
    um = _vars_mask(u)
    u_cubes = _u_cube_patterns(tt, um)
    if not u_cubes:
        yield x, None
    rest = sorted(x - u)
    extra = []
    for k in range(len(rest) + 1):
        extra.extend(combinations(rest, k))
    for add in extra:
        w = u | frozenset(add)
        wm = _vars_mask(w)
        outside = full_mask_vars(tt.n) & ~wm
        inside = {c & outside for c in u_cubes}
        for values in _offsets(outside):
            if values in inside:
                continue
            cube = _cube(tt.n, wm, values)
            if depends_on_all(restrict(tt, cube.fix)):
                yield w, cube


def find_instability(tt: TruthTable, u) -> Optional[tuple[frozenset[int], Optional[Hypercube]]]:
    return next(stability_violations(tt, u), None)


def is_stable(tt: TruthTable, u) -> bool:
    return find_instability(tt, u) is None
