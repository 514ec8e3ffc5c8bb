"""Truth tables of Boolean functions and the primitives built on them.

A table over n variables is stored as a Python int with 2^n bits: bit r holds
the value on input row r, and variable x_i (1-based) supplies bit i-1 of the
row index.  Row 0 is the all-zeros input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

MAX_VARS = 20


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def var_mask(n: int, i: int) -> int:
    """Bitmask of the rows of an n-variable table where x_i = 1."""
    s = 1 << (i - 1)
    unit = 2 * s
    block = ((1 << s) - 1) << s
    reps = (1 << n) // unit
    return block * (((1 << (unit * reps)) - 1) // ((1 << unit) - 1))


@lru_cache(maxsize=4096)
def _offsets(free_mask: int) -> tuple[int, ...]:
    # Row offsets of a sub-cube spanned by the variables in free_mask,
    # listed in the order of the sub-cube's own rows.
    positions = [b for b in range(free_mask.bit_length()) if free_mask >> b & 1]
    offs = [0]
    for p in positions:
        offs += [o | (1 << p) for o in offs]
    return tuple(offs)


def _mask_of(vars_: Iterable[int]) -> int:
    m = 0
    for v in vars_:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class TruthTable:
    """Complete value table of an n-variable Boolean function."""

    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise ValueError(f"variable count {self.n} outside 0..{MAX_VARS}")
        if not 0 <= self.bits <= full_mask(self.n):
            raise ValueError(f"table value does not fit {self.n} variables")

    @classmethod
    def from_values(cls, values: Sequence[int]) -> TruthTable:
        n = len(values).bit_length() - 1
        if len(values) != 1 << n:
            raise ValueError(f"table length {len(values)} is not a power of two")
        bits = 0
        for r, v in enumerate(values):
            if v:
                bits |= 1 << r
        return cls(n, bits)

    @classmethod
    def from_function(cls, n: int, fn) -> TruthTable:
        """Tabulate ``fn(*point)`` over all 2^n points (x1 first)."""
        bits = 0
        for r in range(1 << n):
            if fn(*((r >> j) & 1 for j in range(n))):
                bits |= 1 << r
        return cls(n, bits)

    @classmethod
    def var(cls, n: int, i: int) -> TruthTable:
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} outside 1..{n}")
        return cls(n, var_mask(n, i))

    @classmethod
    def const(cls, n: int, value: int) -> TruthTable:
        return cls(n, full_mask(n) if value else 0)

    @classmethod
    def parse(cls, text: str) -> TruthTable:
        """Parse the ``tt:<n>:<hex>`` text form."""
        parts = text.strip().split(":")
        if len(parts) != 3 or parts[0] != "tt":
            raise ValueError(f"malformed truth table {text!r}")
        try:
            n = int(parts[1])
            bits = int(parts[2], 16)
        except ValueError:
            raise ValueError(f"malformed truth table {text!r}") from None
        if not 0 <= n <= MAX_VARS:
            raise ValueError(f"malformed truth table {text!r}: bad variable count")
        if bits > full_mask(n):
            raise ValueError(f"malformed truth table {text!r}: too many bits for n={n}")
        return cls(n, bits)

    @property
    def hex(self) -> str:
        digits = max(1, (1 << self.n) // 4)
        return format(self.bits, f"0{digits}x")

    def __str__(self) -> str:
        return f"tt:{self.n}:{self.hex}"

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def values(self) -> tuple[int, ...]:
        return tuple((self.bits >> r) & 1 for r in range(self.size))

    @cached_property
    def _rowstr(self) -> str:
        return format(self.bits, f"0{self.size}b")[::-1]

    def row(self, r: int) -> int:
        return (self.bits >> r) & 1

    def __call__(self, *point: int) -> int:
        return evaluate(self, point)

    def __invert__(self) -> TruthTable:
        return TruthTable(self.n, self.bits ^ full_mask(self.n))

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == full_mask(self.n)

    def weight(self) -> int:
        return self.bits.bit_count()


def row_index(point: Sequence[int]) -> int:
    r = 0
    for j, b in enumerate(point):
        if b not in (0, 1, True, False):
            raise ValueError(f"point component {b!r} is not a bit")
        if b:
            r |= 1 << j
    return r


def row_point(n: int, r: int) -> tuple[int, ...]:
    return tuple((r >> j) & 1 for j in range(n))


def evaluate(tt: TruthTable, point: Sequence[int]) -> int:
    if len(point) != tt.n:
        raise ValueError(f"point has {len(point)} components, table has {tt.n} variables")
    return tt.row(row_index(point))


@dataclass(frozen=True)
class PartialAssignment:
    """A fixing of some variables to constants.

    ``mask`` has bit i-1 set when x_i is bound; ``values`` holds the bound
    constants at the same positions, so it is also the row-index contribution
    of the bound part.
    """

    mask: int = 0
    values: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.values & ~self.mask:
            raise ValueError("assignment values outside its bound variables")

    @classmethod
    def of(cls, bindings: dict[int, int] | Iterable[tuple[int, int]] = ()) -> PartialAssignment:
        items = bindings.items() if isinstance(bindings, dict) else bindings
        mask = values = 0
        for var, bit in items:
            if var < 1:
                raise ValueError(f"variable index {var} must be positive")
            if mask >> (var - 1) & 1:
                raise ValueError(f"variable x{var} bound twice")
            if bit not in (0, 1):
                raise ValueError(f"binding x{var}={bit!r} is not a bit")
            mask |= 1 << (var - 1)
            if bit:
                values |= 1 << (var - 1)
        return cls(mask, values)

    @property
    def bound(self) -> tuple[int, ...]:
        return tuple(b + 1 for b in range(self.mask.bit_length()) if self.mask >> b & 1)

    @property
    def bindings(self) -> dict[int, int]:
        return {v: (self.values >> (v - 1)) & 1 for v in self.bound}

    def free(self, n: int) -> tuple[int, ...]:
        return tuple(i for i in range(1, n + 1) if not self.mask >> (i - 1) & 1)

    def union(self, other: PartialAssignment) -> PartialAssignment:
        if self.mask & other.mask:
            raise ValueError("assignments overlap")
        return PartialAssignment(self.mask | other.mask, self.values | other.values)

    def extends(self, other: PartialAssignment) -> bool:
        """True iff every binding of ``other`` is also made, identically, here."""
        return (self.mask & other.mask) == other.mask and (self.values & other.mask) == other.values

    def __str__(self) -> str:
        return ",".join(f"{v}={b}" for v, b in self.bindings.items())


@dataclass(frozen=True)
class SimilarityWitness:
    """A transform (permutation, input polarities, output polarity).

    Polarities follow the exponent convention z^1 = z, z^0 = not z.  Applied to
    g it gives the function x -> g^out(x_perm[0]^pol[0], ..., x_perm[n-1]^pol[n-1]).
    """

    perm: tuple[int, ...]
    input_polarity: tuple[int, ...]
    output_polarity: int

    @property
    def input_negs(self) -> tuple[int, ...]:
        return tuple(1 - s for s in self.input_polarity)

    @property
    def output_neg(self) -> int:
        return 1 - self.output_polarity

    def apply(self, g: TruthTable) -> TruthTable:
        n = g.n
        args = []
        for p, s in zip(self.perm, self.input_polarity):
            a = TruthTable.var(n, p)
            args.append(a if s else ~a)
        out = compose(g, args)
        return out if self.output_polarity else ~out

    def inverse(self) -> SimilarityWitness:
        n = len(self.perm)
        perm = [0] * n
        pol = [0] * n
        for i, p in enumerate(self.perm):
            perm[p - 1] = i + 1
            pol[p - 1] = self.input_polarity[i]
        return SimilarityWitness(tuple(perm), tuple(pol), self.output_polarity)

    @classmethod
    def identity(cls, n: int) -> SimilarityWitness:
        return cls(tuple(range(1, n + 1)), (1,) * n, 1)


def restrict(tt: TruthTable, p: PartialAssignment) -> TruthTable:
    """Projection of ``tt`` under ``p``, on the free variables in ascending order."""
    if p.mask >> tt.n:
        raise ValueError(f"assignment binds a variable beyond x{tt.n}")
    if p.mask == 0:
        return tt
    free_mask = full_mask_vars(tt.n) & ~p.mask
    s = tt._rowstr
    base = p.values
    sub = "".join(s[base + o] for o in _offsets(free_mask))
    return TruthTable(free_mask.bit_count(), int(sub[::-1], 2))


@lru_cache(maxsize=None)
def full_mask_vars(n: int) -> int:
    return (1 << n) - 1


def restrictions(tt: TruthTable, subset: Iterable[int]) -> list[TruthTable]:
    """All projections of ``tt`` onto ``subset``, one per complement assignment.

    Complement assignments run in ascending order, with the smallest complement
    variable as the least significant bit.
    """
    smask = _mask_of(subset)
    if smask >> tt.n:
        raise ValueError("subset contains a variable beyond the table")
    k = smask.bit_count()
    comp = full_mask_vars(tt.n) & ~smask
    s = tt._rowstr
    inner = _offsets(smask)
    out = []
    for base in _offsets(comp):
        sub = "".join(s[base + o] for o in inner)
        out.append(TruthTable(k, int(sub[::-1], 2)))
    return out


def relevant_vars(tt: TruthTable) -> frozenset[int]:
    out = []
    bits = tt.bits
    for i in range(1, tt.n + 1):
        m = var_mask(tt.n, i)
        if (bits & m) >> (1 << (i - 1)) != bits & ~m & full_mask(tt.n):
            out.append(i)
    return frozenset(out)


def depends_on_all(tt: TruthTable) -> bool:
    return len(relevant_vars(tt)) == tt.n


def is_constant_subcube(tt: TruthTable, p: PartialAssignment) -> bool:
    return restrict(tt, p).is_constant()


def compose(outer: TruthTable, args: Sequence[TruthTable]) -> TruthTable:
    """Table of outer(args[0], ..., args[m-1]); all args share one variable count."""
    if len(args) != outer.n:
        raise ValueError(f"outer function takes {outer.n} arguments, got {len(args)}")
    if not args:
        raise ValueError("cannot compose a 0-ary function without a variable count")
    n = args[0].n
    full = full_mask(n)
    result = 0
    for r in range(outer.size):
        if not outer.row(r):
            continue
        term = full
        for j, a in enumerate(args):
            term &= a.bits if r >> j & 1 else a.bits ^ full
            if not term:
                break
        result |= term
    return TruthTable(n, result)


def embed(tt: TruthTable, vars_: Sequence[int], n: int) -> TruthTable:
    """Re-express a table over ``vars_`` as a table over x1..xn."""
    return compose(tt, [TruthTable.var(n, v) for v in vars_])


def _check_subset(tt: TruthTable, subset: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(set(subset)))
    if any(not 1 <= v <= tt.n for v in s):
        raise ValueError(f"subset {s} not within 1..{tt.n}")
    if not 1 < len(s) < tt.n:
        raise ValueError(f"bound-set candidate must satisfy 1 < |S| < n, got |S|={len(s)}, n={tt.n}")
    return s


def is_bound_set(tt: TruthTable, subset: Iterable[int]) -> Optional[TruthTable]:
    """Return an inner function h with tt = g(h(x_S), rest), or None.

    The returned h is the restriction at the first complement assignment (in
    ``restrictions`` order) whose restriction is non-constant.
    """
    s = _check_subset(tt, subset)
    h = None
    for r in restrictions(tt, s):
        if r.is_constant():
            continue
        if h is None:
            h = r
        elif r != h and r != ~h:
            return None
    return h


def decompose(tt: TruthTable, subset: Iterable[int]) -> Optional[tuple[TruthTable, TruthTable]]:
    """Return ``(h, g)`` with tt = g(h(x_S), x_rest), or None if S is not bound.

    g's first variable is the output of h; the remaining ones are the
    complement of S in ascending order.
    """
    s = _check_subset(tt, subset)
    h = is_bound_set(tt, s)
    if h is None:
        return None
    g_bits = 0
    for c, r in enumerate(restrictions(tt, s)):
        if r.is_constant():
            lo = hi = r.bits & 1
        elif r == h:
            lo, hi = 0, 1
        else:
            lo, hi = 1, 0
        g_bits |= lo << (2 * c) | hi << (2 * c + 1)
    return h, TruthTable(tt.n - len(s) + 1, g_bits)


def is_prime(tt: TruthTable) -> bool:
    if tt.n < 3:
        raise ValueError("primality is defined only for n >= 3")
    if not depends_on_all(tt):
        raise ValueError("primality requires a table depending on all its variables")
    for k in range(2, tt.n):
        for s in itertools.combinations(range(1, tt.n + 1), k):
            if is_bound_set(tt, s) is not None:
                return False
    return True


def similar(f: TruthTable, g: TruthTable) -> Optional[SimilarityWitness]:
    """Search all n!*2^n*2 transforms for one taking g to f."""
    if f.n != g.n:
        raise ValueError(f"variable-count mismatch: {f.n} vs {g.n}")
    n = f.n
    wf, wg = f.weight(), g.weight()
    outs = [s for s in (1, 0) if wf == (wg if s else (1 << n) - wg)]
    if not outs:
        return None
    if n == 0:
        return SimilarityWitness((), (), outs[0])
    variables = [TruthTable.var(n, i) for i in range(1, n + 1)]
    negated = [~v for v in variables]
    target_pos = f.bits
    target_neg = f.bits ^ full_mask(n)
    for perm in itertools.permutations(range(1, n + 1)):
        for pol in itertools.product((1, 0), repeat=n):
            args = [variables[p - 1] if s else negated[p - 1] for p, s in zip(perm, pol)]
            bits = compose(g, args).bits
            for out in outs:
                if bits == (target_pos if out else target_neg):
                    return SimilarityWitness(perm, pol, out)
    return None
