"""Relevance tables and hypercube-set tests for a target function."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .boolfn import TruthTable, depends_on_all, row_index, row_point
from .hypercube import Hypercube, find_hypercubes, find_one_hypercube

Vector = tuple[tuple[int, ...], int]


def size_bound(n: int, l: int) -> int:
    """Upper bound 2^l * C(n, l) on the size of a hypercube-set test."""
    if not 1 <= l <= n:
        raise ValueError(f"need 1 <= l <= n, got l={l}, n={n}")
    return (1 << l) * comb(n, l)


@dataclass(frozen=True)
class RelevanceRow:
    w: tuple[int, ...]
    cube: Optional[Hypercube]
    vectors: tuple[Vector, ...] = ()

    @property
    def is_star(self) -> bool:
        return self.cube is None

    def __str__(self) -> str:
        head = "w=" + ",".join(map(str, self.w))
        if self.cube is None:
            return head + "\t*"
        vecs = " ".join("".join(map(str, bits)) + ":" + str(b) for bits, b in self.vectors)
        return f"{head}\t{self.cube} {vecs}"


@dataclass(frozen=True)
class RelevanceTable:
    n: int
    l: int
    rows: tuple[RelevanceRow, ...]

    @property
    def star_rows(self) -> list[RelevanceRow]:
        return [r for r in self.rows if r.is_star]

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rows)


@dataclass(frozen=True)
class TestSet:
    """Labeled input vectors; inputs are unique and sorted lexicographically (x1 first)."""

    __test__ = False  # keep pytest from collecting this class

    n: int
    vectors: tuple[Vector, ...]

    def __post_init__(self):
        seen = {}
        for bits, label in self.vectors:
            if len(bits) != self.n:
                raise ValueError(f"vector {bits} has length {len(bits)}, expected {self.n}")
            if seen.setdefault(bits, label) != label:
                raise ValueError(f"vector {bits} carries conflicting labels")

    @classmethod
    def build(cls, n: int, vectors: Iterable[Vector]) -> TestSet:
        uniq = dict()
        for bits, label in vectors:
            bits = tuple(int(b) for b in bits)
            if uniq.setdefault(bits, int(label)) != int(label):
                raise ValueError(f"vector {bits} carries conflicting labels")
        return cls(n, tuple(sorted(uniq.items())))

    @classmethod
    def from_table(cls, tt: TruthTable, rows: Iterable[int]) -> TestSet:
        return cls.build(tt.n, ((row_point(tt.n, r), tt.row(r)) for r in rows))

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def row_mask(self) -> int:
        m = 0
        for bits, _ in self.vectors:
            m |= 1 << row_index(bits)
        return m

    @property
    def row_values(self) -> int:
        v = 0
        for bits, label in self.vectors:
            if label:
                v |= 1 << row_index(bits)
        return v

    def dump(self) -> str:
        lines = [f"n={self.n}"]
        lines += ["".join(map(str, bits)) + " " + str(label) for bits, label in self.vectors]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> TestSet:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("test-set file must start with a header 'n=<n>'")
        try:
            n = int(lines[0][2:])
        except ValueError:
            raise ValueError(f"bad test-set header {lines[0]!r}") from None
        vecs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2 or set(parts[0]) - {"0", "1"} or parts[1] not in ("0", "1"):
                raise ValueError(f"bad test-set line {ln!r}")
            vecs.append((tuple(int(c) for c in parts[0]), int(parts[1])))
        return cls.build(n, vecs)


def _check_target(tt: TruthTable, l: int) -> None:
    if not depends_on_all(tt):
        raise ValueError("target must depend on all its variables")
    if not 1 <= l <= tt.n:
        raise ValueError(f"need 1 <= l <= n, got l={l}, n={tt.n}")


def _labeled(tt: TruthTable, cube: Hypercube) -> tuple[Vector, ...]:
    return tuple((row_point(tt.n, r), tt.row(r)) for r in cube.rows())


def relevance_table(tt: TruthTable, l: int) -> RelevanceTable:
    _check_target(tt, l)
    rows = []
    for w in combinations(range(1, tt.n + 1), l):
        cube = find_one_hypercube(tt, w)
        rows.append(RelevanceRow(w, cube, _labeled(tt, cube) if cube else ()))
    return RelevanceTable(tt.n, l, tuple(rows))


def raw_vectors(tt: TruthTable, l: int, all_cubes: bool = False) -> list[Vector]:
    """Concatenated cube vectors, duplicates kept, rows in subset order."""
    _check_target(tt, l)
    out = []
    for w in combinations(range(1, tt.n + 1), l):
        cubes = find_hypercubes(tt, w) if all_cubes else [find_one_hypercube(tt, w)]
        for cube in cubes:
            if cube is not None:
                out.extend(_labeled(tt, cube))
    return out


def hypercube_set(tt: TruthTable, l: int, all_cubes: bool = False) -> TestSet:
    """Union of one relevance hypercube per l-subset that has one."""
    return TestSet.build(tt.n, raw_vectors(tt, l, all_cubes))
