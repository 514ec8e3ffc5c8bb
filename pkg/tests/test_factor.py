import random

import pytest

from oracles import readonce_closure
from readonce.boolfn import TruthTable, depends_on_all, is_prime
from readonce.factor import _symbol_partition, factor, is_read_once, trees_equivalent
from readonce.tree import (
    Not,
    and_,
    canonicalize,
    format_formula,
    gates,
    lit,
    or_,
    parse,
    random_tree,
    truth_table,
    validate,
)


def test_factor_d(d):
    assert format_formula(factor(d, 3)) == "p:e4(x1,x2,x3)"
    assert factor(d, 2) is None
    assert factor(d) is not None


def test_factor_round_trip_example():
    t = parse("or(x1, and(x2,~x3))")
    tt = truth_table(t)
    back = factor(tt, 2)
    assert back is not None and truth_table(back) == tt
    assert trees_equivalent(back, t)


def test_factor_literals_and_constants():
    assert format_formula(factor(TruthTable.var(1, 1))) == "x1"
    assert format_formula(factor(~TruthTable.var(1, 1))) == "~x1"
    assert factor(TruthTable.const(3, 1), 2) is None
    assert is_read_once(TruthTable.const(3, 0), 2)
    assert not is_read_once(TruthTable.const(3, 0), 2, include_constants=False)


def test_factor_keeps_original_indices_when_variables_are_irrelevant():
    # x2 and x4 with x1, x3 irrelevant
    tt = TruthTable.from_function(4, lambda a, b, c, e: b ^ e)
    t = factor(tt, 2)
    assert format_formula(t) in ("xor(x2,x4)", "xor(~x2,~x4)")
    assert truth_table(t, n=4) == tt


def test_factor_parity_flattens():
    tt = TruthTable.from_function(5, lambda *x: sum(x) % 2)
    t = factor(tt, 2)
    assert t.op == "xor" and len(t.children) == 5


def test_factor_prime_with_composite_inputs():
    t = parse("p:e4(and(x1,x4),x2,or(x3,x5))")
    tt = truth_table(t)
    assert factor(tt, 2) is None
    back = factor(tt, 3)
    assert trees_equivalent(back, t)


def test_factor_rejects_non_read_once():
    maj = TruthTable.from_function(3, lambda a, b, c: (a and b) or (b and c) or (a and c))
    assert is_prime(maj)
    assert format_formula(factor(maj, 3)) == "p:e8(x1,x2,x3)"
    # x1 x2 or x3 x4 or x1 x4 is not read-once over any basis of arity < 4
    f = TruthTable.from_function(4, lambda a, b, c, e: (a and b) or (c and e) or (a and e))
    assert factor(f, 3) is None
    assert factor(f, 4) is not None


def test_trees_equivalent_examples():
    t = parse("or(x1,and(x2,x3))")
    assert trees_equivalent(t, t)
    dm = canonicalize(Not(and_(lit(1, True), lit(2, True))))
    assert trees_equivalent(or_(lit(1), lit(2)), dm)
    assert not trees_equivalent(t, parse("or(x2,and(x1,x3))"))
    with pytest.raises(ValueError):
        trees_equivalent(t, parse("or(x1,x2)"))


def test_trees_equivalent_checks_structure():
    # same function written with a different leaf partition is impossible for
    # canonical trees, so build a non-canonical one by hand
    flat = or_(lit(1), lit(2), lit(3))
    nested = or_(lit(1), or_(lit(2), lit(3)))
    assert truth_table(flat) == truth_table(nested)
    assert not trees_equivalent(flat, nested)


def test_round_trip_on_random_trees():
    for seed in range(400):
        rng = random.Random(seed)
        n, l = rng.randint(1, 8), rng.choice((3, 4))
        t = random_tree(n, l, seed)
        tt = truth_table(t)
        back = factor(tt, l)
        assert back is not None
        assert validate(back, l) == []
        assert truth_table(back) == tt
        assert trees_equivalent(back, t)


@pytest.mark.parametrize("l", [2, 3])
def test_factor_soundness_n3_against_closure(l):
    expected = readonce_closure(3, l)
    accepted = {b for b in range(256) if is_read_once(TruthTable(3, b), l)}
    assert accepted == expected


def test_factor_soundness_n2_every_table_is_read_once():
    assert all(is_read_once(TruthTable(2, b), 2) for b in range(16))


def test_every_reconstructed_gate_depends_on_all_its_leaves():
    for seed in range(100):
        t = random_tree(6, 3, seed)
        back = factor(truth_table(t), 3)
        for g in gates(back):
            assert depends_on_all(truth_table(g))


def test_symbol_split_and_prime_root_are_exclusive():
    seen = set()
    for seed in range(300):
        t = random_tree(5, 4, seed)
        tt = truth_table(t)
        if t.op == "prime":
            assert _symbol_partition(tt) is None
        else:
            assert _symbol_partition(tt)[0] == t.op
            assert not is_prime(tt)
        seen.add(t.op)
    assert seen == {"and", "or", "xor", "prime"}
