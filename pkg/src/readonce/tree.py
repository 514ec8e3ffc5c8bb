"""Read-once formula trees: parsing, printing, canonical form, evaluation.

A tree is represented by its root node.  Leaves carry literals; gates carry
either one of the symbols ``and``/``or``/``xor`` (any arity >= 2) or an
explicit prime truth table (arity >= 3).  ``Not`` nodes only occur in raw
trees and are removed by :func:`canonicalize`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Optional, Union

from .boolfn import TruthTable, depends_on_all, full_mask, is_prime, var_mask

SYMBOLS = ("and", "or", "xor")


class FormulaError(ValueError):
    pass


class FormulaSyntaxError(FormulaError):
    pass


class ReadOnceViolation(FormulaError):
    pass


class LabelError(FormulaError):
    pass


class BasisError(FormulaError):
    pass


@dataclass(frozen=True)
class Leaf:
    var: int
    negated: bool = False


@dataclass(frozen=True)
class Gate:
    op: str
    children: tuple
    label: Optional[TruthTable] = None

    @property
    def arity(self) -> int:
        return len(self.children)


@dataclass(frozen=True)
class Not:
    child: "Node"


Node = Union[Leaf, Gate, Not]


def prime(label: TruthTable, *children: Node) -> Gate:
    return Gate("prime", tuple(children), label)


def and_(*children: Node) -> Gate:
    return Gate("and", tuple(children))


def or_(*children: Node) -> Gate:
    return Gate("or", tuple(children))


def xor(*children: Node) -> Gate:
    return Gate("xor", tuple(children))


def lit(var: int, negated: bool = False) -> Leaf:
    return Leaf(var, negated)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"p:[0-9a-fA-F]+|[A-Za-z_][A-Za-z0-9_]*|\d+|\S")
_VALID = re.compile(r"~|\(|\)|,|and|or|xor|p:[0-9a-fA-F]+|x\d+")


def _tokenize(text: str) -> list[str]:
    tokens = _TOKEN.findall(text)
    for tok in tokens:
        if not _VALID.fullmatch(tok):
            raise FormulaSyntaxError(f"unexpected token {tok!r}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of formula" + (f", expected {expected!r}" if expected else ""))
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"unexpected token {tok!r}, expected {expected!r}")
        self.i += 1
        return tok

    def expr(self) -> Node:
        tok = self.take()
        if tok == "~":
            return Not(self.expr())
        if tok.startswith("x") and tok[1:].isdigit():
            v = int(tok[1:])
            if v < 1:
                raise FormulaSyntaxError(f"unexpected token {tok!r}: variables are numbered from 1")
            return Leaf(v)
        if tok in SYMBOLS or tok.startswith("p:"):
            self.take("(")
            children = [self.expr()]
            while self.peek() == ",":
                self.take(",")
                children.append(self.expr())
            self.take(")")
            if len(children) < 2:
                raise FormulaSyntaxError(f"gate {tok!r} needs at least two arguments")
            if tok in SYMBOLS:
                return Gate(tok, tuple(children))
            m = len(children)
            if m < 3:
                raise LabelError(f"prime label {tok!r} has arity {m}; prime labels need arity >= 3")
            value = int(tok[2:], 16)
            if value > full_mask(m):
                raise LabelError(f"prime label {tok!r} does not fit {m} arguments")
            label = TruthTable(m, value)
            if not depends_on_all(label) or not is_prime(label):
                raise LabelError(f"label {tok!r} is not a prime function")
            return Gate("prime", tuple(children), label)
        raise FormulaSyntaxError(f"unexpected token {tok!r}")


def parse(text: str, l: Optional[int] = None) -> Node:
    """Parse a formula and return its canonical tree.

    Raises FormulaSyntaxError, ReadOnceViolation, LabelError or BasisError.
    """
    p = _Parser(_tokenize(text))
    node = p.expr()
    if p.peek() is not None:
        raise FormulaSyntaxError(f"unexpected token {p.peek()!r} after end of formula")
    _check_read_once(node)
    tree = canonicalize(node)
    if l is not None:
        for g in gates(tree):
            if g.op == "prime" and g.arity > l:
                raise BasisError(f"prime label p:{g.label.hex} has arity {g.arity} > l={l}")
    return tree


def _check_read_once(node: Node) -> None:
    seen = set()
    for leaf in leaves(node):
        if leaf.var in seen:
            raise ReadOnceViolation(f"variable x{leaf.var} appears more than once")
        seen.add(leaf.var)


# -- printing ----------------------------------------------------------------

def format_formula(node: Node) -> str:
    if isinstance(node, Leaf):
        return ("~" if node.negated else "") + f"x{node.var}"
    if isinstance(node, Not):
        return "~" + format_formula(node.child)
    head = f"p:{node.label.hex}" if node.op == "prime" else node.op
    return head + "(" + ",".join(format_formula(c) for c in node.children) + ")"


# -- structure ---------------------------------------------------------------

def leaves(node: Node) -> Iterator[Leaf]:
    if isinstance(node, Leaf):
        yield node
    elif isinstance(node, Not):
        yield from leaves(node.child)
    else:
        for c in node.children:
            yield from leaves(c)


def variables(node: Node) -> frozenset[int]:
    return frozenset(leaf.var for leaf in leaves(node))


def gates(node: Node) -> Iterator[Gate]:
    """Internal nodes in pre-order."""
    if isinstance(node, Not):
        yield from gates(node.child)
    elif isinstance(node, Gate):
        yield node
        for c in node.children:
            yield from gates(c)


def canonicalize(node: Node, negate: bool = False) -> Node:
    """Push negations down to literals and prime labels; merge same-symbol gates."""
    if isinstance(node, Not):
        return canonicalize(node.child, not negate)
    if isinstance(node, Leaf):
        return Leaf(node.var, node.negated != negate)
    if node.op == "prime":
        label = ~node.label if negate else node.label
        return Gate("prime", tuple(canonicalize(c) for c in node.children), label)
    op = node.op
    if op == "xor":
        kids = [canonicalize(c, negate and i == 0) for i, c in enumerate(node.children)]
    else:
        if negate:
            op = "or" if op == "and" else "and"
        kids = [canonicalize(c, negate) for c in node.children]
    flat = []
    for k in kids:
        if isinstance(k, Gate) and k.op == op:
            flat.extend(k.children)
        else:
            flat.append(k)
    return Gate(op, tuple(flat))


def truth_table(node: Node, n: Optional[int] = None) -> TruthTable:
    """Table of the formula.

    Without ``n`` the table is over the tree's own variables in ascending order;
    with ``n`` it is over x1..xn.
    """
    vs = sorted(variables(node))
    if n is None:
        pos = {v: j + 1 for j, v in enumerate(vs)}
        k = len(vs)
    else:
        if vs and vs[-1] > n:
            raise ValueError(f"tree uses x{vs[-1]} but only {n} variables requested")
        pos = {v: v for v in vs}
        k = n
    full = full_mask(k)

    def ev(nd: Node) -> int:
        if isinstance(nd, Leaf):
            b = var_mask(k, pos[nd.var])
            return b ^ full if nd.negated else b
        if isinstance(nd, Not):
            return ev(nd.child) ^ full
        vals = [ev(c) for c in nd.children]
        if nd.op == "and":
            return reduce(lambda a, b: a & b, vals)
        if nd.op == "or":
            return reduce(lambda a, b: a | b, vals)
        if nd.op == "xor":
            return reduce(lambda a, b: a ^ b, vals)
        out = 0
        for r in range(nd.label.size):
            if nd.label.row(r):
                term = full
                for j, v in enumerate(vals):
                    term &= v if r >> j & 1 else v ^ full
                out |= term
        return out

    return TruthTable(k, ev(node))


def validate(node: Node, l: Optional[int] = None) -> list[str]:
    """List invariant violations, each prefixed with its kind."""
    out = []
    seen = set()
    for leaf in leaves(node):
        if leaf.var in seen:
            out.append(f"read-once: variable x{leaf.var} appears more than once")
        seen.add(leaf.var)

    def walk(nd: Node, parent_op: Optional[str]) -> None:
        if isinstance(nd, Leaf):
            return
        if isinstance(nd, Not):
            out.append("negation: output negation on an internal node")
            walk(nd.child, None)
            return
        if nd.arity < 2:
            out.append(f"arity: {nd.op} node with {nd.arity} children")
        if nd.op in SYMBOLS:
            if nd.op == parent_op:
                out.append(f"adjacency: {nd.op} node directly below another {nd.op} node")
        elif nd.op == "prime":
            lab = nd.label
            if lab is None or lab.n != nd.arity:
                out.append(f"label: prime label arity does not match {nd.arity} children")
            elif lab.n < 3 or not depends_on_all(lab) or not is_prime(lab):
                out.append(f"label: p:{lab.hex} is not a prime function")
            if l is not None and nd.arity > l:
                out.append(f"basis: prime node of arity {nd.arity} exceeds l={l}")
        else:
            out.append(f"label: unknown gate symbol {nd.op!r}")
        for c in nd.children:
            walk(c, nd.op)

    walk(node, None)
    return out


def lca(node: Node, vars_) -> Node:
    want = frozenset(vars_)
    if not want:
        raise ValueError("lca of an empty variable set")
    missing = want - variables(node)
    if missing:
        raise ValueError(f"variables {sorted(missing)} are not leaves of the tree")
    cur = node
    while True:
        if isinstance(cur, Not):
            cur = cur.child
            continue
        if isinstance(cur, Leaf):
            return cur
        for c in cur.children:
            if want <= variables(c):
                cur = c
                break
        else:
            return cur


def is_conservative(node: Node, u) -> bool:
    u = frozenset(u)
    for g in gates(node):
        if g.op != "prime":
            continue
        hit = sum(1 for c in g.children if variables(c) & u)
        if hit not in (0, 1, g.arity):
            return False
    return True


# -- random generation -------------------------------------------------------

def random_prime(m: int, rng: random.Random) -> TruthTable:
    while True:
        t = TruthTable(m, rng.getrandbits(1 << m))
        if depends_on_all(t) and is_prime(t):
            return t


def random_tree(n: int, l: int, seed: int, prime_prob: float = 0.4) -> Node:
    """Seeded random canonical tree on x1..xn with prime labels of arity <= l.

    The shuffled variable list is cut into consecutive blocks at random points
    at every gate; gate symbols and literal signs are drawn uniformly.
    """
    if n < 1 or l < 2:
        raise ValueError("need n >= 1 and l >= 2")
    rng = random.Random(seed)
    vs = list(range(1, n + 1))
    rng.shuffle(vs)

    def build(block: list[int]) -> Node:
        k = len(block)
        if k == 1:
            return Leaf(block[0], rng.random() < 0.5)
        if min(l, k) >= 3 and rng.random() < prime_prob:
            m = rng.randint(3, min(l, k))
            op = "prime"
        else:
            m = rng.randint(2, k)
            op = rng.choice(SYMBOLS)
        cuts = sorted(rng.sample(range(1, k), m - 1))
        parts = [block[a:b] for a, b in zip([0] + cuts, cuts + [k])]
        kids = tuple(build(p) for p in parts)
        if op == "prime":
            return Gate("prime", kids, random_prime(m, rng))
        return Gate(op, kids)

    return canonicalize(build(vs))
