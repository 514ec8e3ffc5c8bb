import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_hypercubes
from readonce.boolfn import TruthTable, depends_on_all, evaluate
from readonce.hypercube import find_hypercubes
from readonce.testgen import (
    TestSet,
    hypercube_set,
    raw_vectors,
    relevance_table,
    size_bound,
)
from readonce.tree import random_tree, truth_table


def test_size_bound_examples():
    assert size_bound(3, 2) == 12
    assert size_bound(5, 3) == 80
    for n in range(1, 8):
        assert size_bound(n, n) == 2 ** n
    with pytest.raises(ValueError):
        size_bound(2, 3)


def test_reltable_or3(or3):
    table = relevance_table(or3, 2)
    assert [r.w for r in table.rows] == [(1, 2), (1, 3), (2, 3)]
    assert table.star_rows == []
    for row in table.rows:
        (third,) = set(range(1, 4)) - set(row.w)
        assert row.cube.fix.bindings == {third: 0}
        assert len(row.vectors) == 4


def test_reltable_d_has_one_star(d):
    table = relevance_table(d, 2)
    assert [r.w for r in table.star_rows] == [(2, 3)]
    assert not table.rows[0].is_star and not table.rows[1].is_star
    assert str(table.rows[2]) == "w=2,3\t*"


def test_reltable_full_cube(d, f1):
    for tt in (d, f1):
        table = relevance_table(tt, tt.n)
        assert len(table.rows) == 1
        assert table.rows[0].cube.dim == tt.n and table.rows[0].cube.fix.bindings == {}


def test_reltable_rejects_irrelevant_and_bad_l(or2):
    with pytest.raises(ValueError):
        relevance_table(TruthTable.from_function(3, lambda a, b, c: a or b), 2)
    with pytest.raises(ValueError):
        relevance_table(or2, 3)


def test_hypercube_set_or3(or3):
    raw = raw_vectors(or3, 2)
    assert len(raw) == 12
    ts = hypercube_set(or3, 2)
    # golden: the three cubes share the zero vector and each pair shares a weight-1 vector
    assert len(ts) == 7 <= size_bound(3, 2)
    assert all(sum(bits) <= 2 for bits, _ in ts.vectors)


def test_hypercube_set_d_uses_two_cubes(d):
    ts = hypercube_set(d, 2)
    cubes = [r.cube for r in relevance_table(d, 2).rows if r.cube]
    assert len(cubes) == 2
    rows = {r for c in cubes for r in c.rows()}
    assert ts.row_mask == sum(1 << r for r in rows)


def test_hypercube_set_single_variable():
    ts = hypercube_set(TruthTable.var(1, 1), 1)
    assert ts.vectors == (((0,), 0), ((1,), 1))


def test_test_set_dump_and_load(or3):
    ts = hypercube_set(or3, 2)
    text = ts.dump()
    assert text.splitlines()[:3] == ["n=3", "000 0", "001 1"]
    assert TestSet.load(text) == ts


@pytest.mark.parametrize("text", ["", "3\n000 0", "n=3\n00 1", "n=3\n000 2", "n=3\n000 0\n000 1"])
def test_test_set_load_rejects(text):
    with pytest.raises(ValueError):
        TestSet.load(text)


def _targets(count, max_n=6):
    rng = random.Random(11)
    for seed in range(count):
        n = rng.randint(1, max_n)
        l = rng.randint(1, n)
        yield truth_table(random_tree(n, max(l, 2), seed)), l


def test_generated_sets_respect_bound_and_labels():
    for tt, l in _targets(300):
        raw = raw_vectors(tt, l)
        ts = hypercube_set(tt, l)
        assert len(ts) <= len(raw) <= size_bound(tt.n, l)
        for bits, label in ts.vectors:
            assert evaluate(tt, bits) == label


def test_star_rows_match_brute_force():
    for tt, l in _targets(150, max_n=5):
        vals = list(tt.values)
        for row in relevance_table(tt, l).rows:
            assert row.is_star == (brute_hypercubes(tt.n, vals, set(row.w)) == [])


def test_every_row_cube_is_contained():
    for tt, l in _targets(150):
        ts = hypercube_set(tt, l)
        have = {bits for bits, _ in ts.vectors}
        for row in relevance_table(tt, l).rows:
            if row.is_star:
                continue
            cube_pts = set(row.cube.points(tt.n))
            assert len(cube_pts) == 2 ** l and cube_pts <= have
            assert {b for b, _ in row.vectors} == cube_pts


def test_all_cubes_mode_is_a_superset(d):
    one = hypercube_set(d, 2)
    every = hypercube_set(d, 2, all_cubes=True)
    assert one.row_mask & ~every.row_mask == 0
    n_cubes = sum(len(find_hypercubes(d, w)) for w in combinations(range(1, 4), 2))
    assert len(raw_vectors(d, 2, all_cubes=True)) == 4 * n_cubes


@settings(max_examples=100)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))), st.data())
def test_bound_holds_for_arbitrary_full_tables(nb, data):
    n, b = nb
    tt = TruthTable(n, b)
    if not depends_on_all(tt):
        return
    l = data.draw(st.integers(1, n))
    assert len(raw_vectors(tt, l)) <= size_bound(n, l)
