from fractions import Fraction

from hypothesis import given, strategies as st

from operadix.linalg import (Echelon, Quotient, UnionFind, inverse, matmul, nullspace, rank,
                             identity, rref)

small = st.integers(min_value=-3, max_value=3)


def matrices(rows=4, cols=5):
    return st.integers(1, rows).flatmap(
        lambda r: st.integers(1, cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def sparse(row):
    return {j: Fraction(x) for j, x in enumerate(row) if x}


@given(matrices())
def test_sparse_rank_matches_dense_rref(m):
    ech = Echelon(len(m[0]))
    for row in m:
        ech.add(sparse(row))
    assert len(ech) == rank(m)


@given(matrices())
def test_pivots_independent_of_insertion_order(m):
    a, b = Echelon(len(m[0])), Echelon(len(m[0]))
    for row in m:
        a.add(sparse(row))
    for row in reversed(m):
        b.add(sparse(row))
    assert sorted(a.rows) == sorted(b.rows)


@given(matrices())
def test_quotient_kills_relations_and_keeps_least_labels(m):
    q = Quotient(len(m[0]), relations=[sparse(r) for r in m])
    for r in m:
        assert q.project(sparse(r)) == {}
    assert len(q) + q.rank == len(m[0])
    # a kept coordinate projects to its own basis vector
    for pos, i in enumerate(q.kept):
        assert q.project_index(i) == {pos: 1}


@given(matrices())
def test_nullspace_vectors_are_killed(m):
    n = len(m[0])
    basis = nullspace(m, ncols=n)
    assert len(basis) == n - rank(m)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_when_full_rank(m):
    if rank(m) < 3:
        return
    assert matmul(m, inverse(m)) == identity(3)


def test_rref_small_case():
    rows, pivots = rref([[2, 4], [1, 3]])
    assert pivots == [0, 1]
    assert rows == [[1, 0], [0, 1]]


def test_union_find_uses_least_representative():
    uf = UnionFind(5)
    uf.union(4, 2)
    uf.union(2, 3)
    assert uf.find(4) == 2 and uf.find(3) == 2
    assert uf.classes() == {0: [0], 1: [1], 2: [2, 3, 4]}


def test_merges_and_relations_agree():
    a = Quotient(4, merges=[(1, 3)], relations=[{0: 1, 2: 1}])
    b = Quotient(4, relations=[{1: 1, 3: -1}, {0: 1, 2: 1}])
    assert a.kept == b.kept == [0, 1]
    assert a.project({2: 1, 3: 1}) == b.project({2: 1, 3: 1}) == {0: -1, 1: 1}
