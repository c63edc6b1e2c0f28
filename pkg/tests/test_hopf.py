import pytest

from operadix.algebras import AlgebraMap, check_algebra_axioms, dual_numbers, ground_algebra
from operadix.enveloping import commutative_oracle
from operadix.errors import SchemaError
from operadix.hopf import (Bialgebra, HopfOperad, canonical_monoid_map, check_bialgebra,
                           check_comonoid, check_env_bialgebra, check_env_hopf, check_hopf_operad,
                           collapse_check, env_hopf, group_bialgebra_c2, hopf_for,
                           initial_bialgebra, match_bialgebra, naturality_check, tensor_algebra,
                           tensor_envelopes, trivial_bialgebra, uass_hopf, ucom_hopf, unit_algebra)
from operadix.operads import UAss, UCom


@pytest.mark.parametrize("H", [ucom_hopf(UCom(4)), uass_hopf(UAss(4))], ids=["uCom", "uAss"])
def test_hopf_operads(H):
    assert check_hopf_operad(H)


def test_wrong_comultiplication_is_caught():
    P = UAss(3)
    # sigma -> sigma (x) id is counital on one side only
    bad = HopfOperad(P, lambda n, b: {b * P.dim(n): 1}, lambda n, b: 1)
    assert not check_hopf_operad(bad)


def test_comonoid_checker():
    assert check_comonoid(2, lambda a: {a * 2 + a: 1}, lambda a: 1)
    assert not check_comonoid(2, lambda a: {a * 2 + a: 1}, lambda a: 2)


@pytest.mark.parametrize("P", [UCom(4), UAss(4)], ids=["uCom", "uAss"])
def test_tensor_of_algebras(P):
    H = hopf_for(P)
    D = dual_numbers(P)
    DD = tensor_algebra(H, D, D)
    assert DD.dim == 4 and check_algebra_axioms(DD, max_arity=3)
    assert check_algebra_axioms(unit_algebra(H), max_arity=3)


@pytest.mark.parametrize("P", [UCom(4), UAss(4)], ids=["uCom", "uAss"])
def test_bialgebras(P):
    H = hopf_for(P)
    for Bi in (group_bialgebra_c2(H), trivial_bialgebra(H), initial_bialgebra(H)):
        assert check_bialgebra(Bi), Bi.algebra.name


def test_dual_numbers_with_grouplike_x_is_not_a_bialgebra():
    H = ucom_hopf(UCom(4))
    D = dual_numbers(H.operad)
    Bi = Bialgebra(H, D, lambda a: {a * 2 + a: 1}, lambda a: 1)
    assert not check_bialgebra(Bi)
    with pytest.raises(SchemaError):
        env_hopf(Bi, 3)


def test_envelope_of_group_bialgebra_over_ucom():
    H = ucom_hopf(UCom(5))
    eh = env_hopf(group_bialgebra_c2(H), 3, check=False)
    assert eh.env.stabilized is True
    assert check_env_hopf(eh) and check_env_bialgebra(eh)
    f = commutative_oracle(eh.env)
    assert f.matrix().is_iso()
    assert match_bialgebra(eh, f)


def test_envelope_of_group_bialgebra_over_uass():
    H = uass_hopf(UAss(6))
    eh = env_hopf(group_bialgebra_c2(H), 3)
    assert eh.monoid.dim == 4
    assert check_env_bialgebra(eh)


def test_canonical_map_collapse_and_naturality():
    P = UCom(5)
    H = ucom_hopf(P)
    Bi = group_bialgebra_c2(H)
    A = Bi.algebra
    env_AB, env_A, env_B, can = tensor_envelopes(H, A, A, 2)
    f, cert = canonical_monoid_map(env_AB, env_A, env_B, can)
    assert cert
    assert collapse_check(H, env_AB, env_A, env_B, can, Bi.counit_vec)
    D = dual_numbers(P)
    Q = ground_algebra(P)
    aug = AlgebraMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="aug")
    assert naturality_check(H, aug, A, 2)
