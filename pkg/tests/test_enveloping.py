from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from operadix.algebras import (AlgebraMap, associative_algebra, dual_numbers, free_algebra,
                               ground_algebra, group_algebra_c2, identity_map)
from operadix.base_cat import vect_n
from operadix.enveloping import (associative_oracle, check_relative, commutative_oracle,
                                 compare_envelopes, env_algebra, env_operad, env_operad_free,
                                 relative_env)
from operadix.errors import SchemaError, TruncationError
from operadix.monoids import check_monoid_map
from operadix.operads import UAss, UCom, check_operad_axioms


def free_dims(P, d, K, n):
    # summands P(n + k) (x)_{S_k} X^k, counted by hand
    if isinstance(P, UAss):
        return sum(factorial(n + k) // factorial(k) * d ** k for k in range(K + 1))
    return sum(comb(k + d - 1, k) for k in range(K + 1))


@pytest.mark.parametrize("P", [UAss(6), UCom(6)], ids=["uAss", "uCom"])
@pytest.mark.parametrize("d", [1, 2])
def test_free_envelope_dimensions(P, d):
    K = 2
    env = env_operad(P, free_algebra(P, vect_n(d, "x"), K), K, max_arity=2, check=False,
                     stabilization=False)
    assert env.operad.profile() == [free_dims(P, d, K, n) for n in range(3)]
    assert compare_envelopes(env.operad, env_operad_free(P, d, K, max_arity=2), 2)


def test_dual_numbers_oracles():
    for P, oracle, dim in ((UCom(6), commutative_oracle, 2), (UAss(6), associative_oracle, 4)):
        env = env_operad(P, dual_numbers(P), 3, max_arity=1)
        assert env.stabilized is True
        assert env.operad.dim(1) == dim
        f = oracle(env)
        assert f.matrix().is_iso() and check_monoid_map(f)
        assert env.eta_bar_matrix.is_iso()


def quadratic(P, c):
    """Q[x]/(x^2 - c)."""
    return associative_algebra(P, ("1", "x"),
                               lambda i, j: {1: 1} if i + j == 1 else ({0: 1} if i + j == 0 else {0: c}),
                               {0: 1}, name=f"Q[x]/(x2-{c})")


@settings(max_examples=6)
@given(st.integers(-3, 3))
def test_envelope_of_a_quadratic_algebra(c):
    P = UCom(6)
    env = env_operad(P, quadratic(P, c), 3, max_arity=1)
    f = commutative_oracle(env)
    assert f.matrix().is_iso() and check_monoid_map(f)
    P = UAss(6)
    env = env_operad(P, quadratic(P, c), 3, max_arity=1)
    g = associative_oracle(env)
    assert env.operad.dim(1) == 4 and g.matrix().is_iso() and check_monoid_map(g)


def test_envelope_is_an_operad():
    # composites of weight up to 2K need the base operad to arity 2 + 2K + 1
    P = UAss(9)
    env = env_operad(P, group_algebra_c2(P), 3, max_arity=2, check=False)
    assert env.stabilized is True
    assert env.operad.profile() == [2, 4, 16]
    assert check_operad_axioms(env.operad, max_arity=2)


def test_short_base_truncation_raises_instead_of_dropping_terms():
    P = UAss(6)
    env = env_operad(P, group_algebra_c2(P), 3, max_arity=2, check=False)
    with pytest.raises(TruncationError):
        check_operad_axioms(env.operad, max_arity=2)


def test_ground_algebra_envelope_is_the_operad():
    for P in (UAss(5), UCom(5)):
        env = env_operad(P, ground_algebra(P), 2, max_arity=2)
        assert env.operad.profile() == [P.dim(0), P.dim(1), P.dim(2)]


def test_unstable_cap_is_flagged():
    P = UAss(6)
    env = env_operad(P, dual_numbers(P), 1, max_arity=1, check=False)
    assert env.stabilized is False
    assert env.profile != env.profile_next


def test_enveloping_algebra_is_a_monoid():
    P = UAss(6)
    E = env_algebra(env_operad(P, dual_numbers(P), 3, max_arity=1))
    assert E.dim == 4


def test_relative_envelope_with_identity():
    P = UCom(6)
    D = dual_numbers(P)
    rel = relative_env(P, D, D, identity_map(D), K=2, K_rel=1, check=False)
    assert check_relative(rel)


def test_relative_envelope_along_augmentation():
    P = UCom(6)
    D, Q = dual_numbers(P), ground_algebra(P)
    aug = AlgebraMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="aug")
    assert check_relative(relative_env(P, D, Q, aug, K=2, K_rel=1, check=False))


def test_wrong_operad_is_rejected():
    with pytest.raises(SchemaError):
        env_operad(UAss(5), dual_numbers(UCom(5)), 2)
