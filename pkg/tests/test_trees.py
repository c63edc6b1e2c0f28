from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from operadix.errors import CapGuardError, SchemaError
from operadix.trees import (LEAF, LabelSetPair, admissible, aut_group, aut_order,
                            brute_force_u_star, count_table, count_table_csv, cross_validate,
                            enumerate_trees, equivariance_certificate, inputs, parse,
                            sized_labels, size, term, u_minus_set, u_set, u_star_set, vertex,
                            vertices)


def naive_trees(k, cap=3):
    """Every ordered coloured tree with k vertices, canonicalised afterwards."""
    if k == 0:
        return {LEAF}
    out = set()
    for coloured in (True, False):
        for a in range(cap + 1):
            for split in product(range(k), repeat=a):
                if sum(split) != k - 1:
                    continue
                for kids in product(*[sorted(naive_trees(s, cap), key=term) for s in split]):
                    out.add(vertex(coloured, kids))
    return out


def naive_count(n, k):
    return sum(1 for T in naive_trees(k) if inputs(T) == n and admissible(T))


FROZEN = {(1, 0): 1, (0, 1): 1, (1, 1): 2, (2, 1): 1, (3, 1): 1, (0, 2): 2, (1, 2): 5, (2, 2): 5,
          (3, 2): 5, (0, 3): 5, (1, 3): 15, (2, 3): 23, (3, 3): 27}


def test_counts_match_the_naive_oracle_and_the_frozen_table():
    table = count_table(3, 3)
    for (n, k), want in FROZEN.items():
        assert table[(n, k)] == want == naive_count(n, k)


def test_enumerate_two_inputs_two_vertices():
    assert [term(T) for T in enumerate_trees(2, 2)] == [
        "C1(C2(.,.))", "C2(.,C1(.))", "C2(.,U1(.))", "C3(.,.,C0)", "U1(C2(.,.))"]


def test_counting_table_csv():
    lines = count_table_csv(count_table(1, 1)).splitlines()
    assert lines[0] == "n,k,count"
    assert "1,1,2" in lines


@settings(max_examples=60)
@given(st.integers(0, 3), st.integers(0, 3))
def test_term_round_trip(n, k):
    for T in enumerate_trees(n, k):
        assert parse(term(T)) == T
        assert inputs(T) == n and size(T) == k and len(vertices(T)) == k


def test_parse_canonicalises_and_rejects_garbage():
    assert term(parse("C2(U1(.),.)")) == "C2(.,U1(.))"
    for bad in ("C2(.,", "X1(.)", "C2(.)", ""):
        with pytest.raises(SchemaError):
            parse(bad)


def test_automorphism_orders():
    assert aut_order(parse("C2(.,.)")) == 2
    assert aut_order(parse("C3(.,.,.)")) == 6
    assert aut_order(parse("C2(U1(.),U1(.))")) == 2
    assert aut_order(parse("C2(C2(.,.),C2(.,.))")) == 8
    assert aut_order(parse("C2(.,U1(.))")) == 1


def test_label_sets_must_nest_and_hold_the_identity():
    with pytest.raises(SchemaError):
        LabelSetPair({1: ["a"]}, {1: ["a"]})
    with pytest.raises(SchemaError):
        LabelSetPair({1: ["id"], 2: ["p"]}, {1: ["id"], 2: ["q"]})


def test_unary_example():
    T = parse("U1(.)")
    L = LabelSetPair({1: ["id", "a"]}, {1: ["id", "a", "b"]})
    assert u_set(T, L) == {("id", (None,)), ("a", (None,))}
    assert u_star_set(T, L) == brute_force_u_star(T, L) == {("id", (None,))}
    assert u_minus_set(T, L) == frozenset()


def test_inclusions_and_equivariance_on_a_symmetric_tree():
    T = parse("C2(C1(.),C1(.))")
    L = sized_labels({1: (1, 2), 2: (1, 2)})
    assert u_minus_set(T, L) <= u_star_set(T, L) <= u_set(T, L)
    cert = equivariance_certificate(T, L, aut_group(T))
    assert cert and cert.checked > 0


def test_cross_validation_small():
    assert cross_validate(max_vertices=2, arity_cap=2, max_labels=2)


def test_equal_label_sets_on_coloured_trees():
    for k in range(1, 3):
        for n in range(3):
            for T in enumerate_trees(n, k):
                if not any(v.coloured for v in vertices(T)):
                    continue
                ars = sorted({v.arity for v in vertices(T)})
                L = sized_labels({m: (2, 2) for m in ars})
                assert u_minus_set(T, L) == u_set(T, L) == u_star_set(T, L)


def test_equal_label_sets_without_coloured_vertex():
    # with no coloured vertex u- is empty, so u* only holds identity-labelled unary vertices
    T = parse("U1(U1(.))")
    L = sized_labels({1: (2, 2)})
    assert u_minus_set(T, L) == frozenset()
    assert u_star_set(T, L) == brute_force_u_star(T, L) != u_set(T, L)


def test_cap_guard(monkeypatch):
    monkeypatch.setenv("OPERADIX_CAP_GUARD", "4")
    T = parse("C2(C2(.,.),.)")
    with pytest.raises(CapGuardError):
        brute_force_u_star(T, sized_labels({2: (2, 3), 1: (1, 1)}))
