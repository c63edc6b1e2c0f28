from math import comb

import pytest
from hypothesis import given, strategies as st

from operadix.algebras import (Algebra, AlgebraMap, algebra_from_presentation, associative_algebra, cellular_extension,
                               check_algebra_axioms, check_algebra_map, dual_numbers,
                               free_algebra, free_map, ground_algebra, group_algebra_c2,
                               identity_map, initial_algebra, one_step_ideal_dim,
                               reflexive_check, zero_algebra)
from operadix.ambient import Presentation
from operadix.base_cat import Morphism, vect_n
from operadix.checks import Violation
from operadix.errors import SchemaError
from operadix.operads import PositivePart, UAss, UCom


def weight_profile(F, W):
    out = [0] * (W + 1)
    for a in range(F.dim):
        out[F.weight(a)] += 1
    return out


@pytest.mark.parametrize("d", [1, 2, 3])
def test_free_algebra_dimensions_against_word_and_monomial_counts(d):
    W = 3
    # words of length k for uAss, monomials of degree k for uCom
    assert weight_profile(free_algebra(UAss(4), vect_n(d, "x"), W), W) == [d ** k for k in range(W + 1)]
    assert weight_profile(free_algebra(UCom(4), vect_n(d, "x"), W), W) == \
        [comb(k + d - 1, k) for k in range(W + 1)]


@pytest.mark.parametrize("P", [UAss(4), UCom(4)], ids=["uAss", "uCom"])
def test_small_algebras_satisfy_the_axioms(P):
    for A in (dual_numbers(P), group_algebra_c2(P), ground_algebra(P), initial_algebra(P),
              free_algebra(P, vect_n(1, "x"), 2)):
        assert check_algebra_axioms(A, max_arity=3), A.name


def test_presented_dual_numbers_match_the_table():
    P = UAss(4)
    pres = Presentation(P, vect_n(1, "x"), [{(2, 0, (0, 0)): 1}], 2)
    D = algebra_from_presentation(pres, check=True)
    assert D.dim == 2
    assert one_step_ideal_dim(pres) == 2
    assert check_algebra_axioms(D, max_arity=3)


def test_reflexive_section():
    P = UCom(4)
    assert reflexive_check(dual_numbers(P), 2)


def test_nonassociative_table_is_rejected():
    P = UAss(4)
    # every product equal to 1 makes x . 1 = 1, so 1 is not a unit
    with pytest.raises(SchemaError):
        associative_algebra(P, ("1", "x"), lambda i, j: {0: 1}, {0: 1})


def test_broken_action_is_witnessed():
    P = UCom(3)
    D = dual_numbers(P)
    bad = Algebra(P, D.carrier, lambda n, p, args: {1: 1} if n == 2 and args == (1, 1)
                  else D.gamma(n, p, args), name="bad")
    v = check_algebra_axioms(bad, max_arity=3)
    assert isinstance(v, Violation) and v.witness


def test_zero_algebra_needs_empty_arity_zero():
    with pytest.raises(SchemaError):
        zero_algebra(UCom(3))
    Z = zero_algebra(PositivePart(UCom(3)))
    assert Z.dim == 0 and check_algebra_axioms(Z, max_arity=3)


def test_algebra_maps():
    P = UCom(4)
    D, Q = dual_numbers(P), ground_algebra(P)
    assert check_algebra_map(identity_map(D))
    aug = AlgebraMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="aug")
    assert check_algebra_map(aug)
    wrong = AlgebraMap(D, Q, lambda a: {0: 1}, name="wrong")
    assert not check_algebra_map(wrong)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2))
def test_free_functor_is_a_map_of_algebras(rows):
    P = UAss(3)
    FX = free_algebra(P, vect_n(2, "x"), 2)
    f = Morphism.from_matrix(vect_n(2, "x"), vect_n(2, "x"), rows)
    assert check_algebra_map(free_map(FX, FX, f), max_arity=2)


def test_cellular_extension_adds_a_free_generator():
    P = UCom(4)
    Q = ground_algebra(P)
    Qu, inc = cellular_extension(Q, ["u"], W=2)
    assert Qu.dim == 3  # 1, u, u^2 in weight <= 2
    assert check_algebra_map(inc, max_arity=2)
