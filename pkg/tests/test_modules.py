import pytest

from operadix.algebras import Algebra, check_algebra_axioms, dual_numbers, group_algebra_c2
from operadix.base_cat import Morphism, vect_n
from operadix.enveloping import env_algebra, env_operad
from operadix.errors import StabilizationError
from operadix.modules import (AModule, check_amodule_map, check_equivariance_total,
                              check_module_axioms, end_map_to_module, free_module,
                              free_module_comparison, free_module_map, from_monoid_module,
                              linear_end_operad, module_from_square_zero, module_to_end_map,
                              regular_module, roundtrip, semidirect, square_zero_check,
                              tensor_module, to_monoid_module, zero_module)
from operadix.monoids import check_monoid_module, regular_monoid_module
from operadix.operads import UAss, UCom, check_operad_morphism


@pytest.fixture(scope="module", params=["uAss", "uCom"])
def setting(request):
    P = UAss(6) if request.param == "uAss" else UCom(6)
    D = dual_numbers(P)
    return P, D, env_operad(P, D, 3, max_arity=1)


def test_module_axioms_on_standard_modules(setting):
    P, D, _ = setting
    for M in (regular_module(D), tensor_module(D, vect_n(2, "v")), zero_module(D)):
        assert check_module_axioms(M, max_arity=3), M.name
        assert check_equivariance_total(M, 3)


def test_broken_associativity_is_witnessed(setting):
    P, D, _ = setting
    M = regular_module(D)
    bad = AModule(D, M.carrier, lambda n, k, p, a: {0: 1} if (n, a) == (2, (1, 1)) else M.mu(n, k, p, a),
                  name="bad")
    v = check_module_axioms(bad, max_arity=3)
    assert not v and v.axiom.startswith("(2)")


def test_round_trips(setting):
    P, D, env = setting
    for M in (regular_module(D), tensor_module(D, vect_n(2, "v"))):
        assert roundtrip(env, M=M)
    assert roundtrip(env, Y=regular_monoid_module(env_algebra(env)))


def test_conversion_requires_stabilized_envelope():
    P = UAss(6)
    D = dual_numbers(P)
    env = env_operad(P, D, 1, max_arity=1, check=False)
    assert env.stabilized is False
    with pytest.raises(StabilizationError):
        to_monoid_module(regular_module(D), env)
    with pytest.raises(StabilizationError):
        from_monoid_module(None, env)  # the guard runs before the module is read


def test_env_module_is_a_monoid_module(setting):
    P, D, env = setting
    Y = to_monoid_module(tensor_module(D, vect_n(2, "v")), env)
    assert check_monoid_module(Y)


def test_module_maps(setting):
    P, D, _ = setting
    M = regular_module(D)
    assert check_amodule_map(M, M, Morphism.identity(M.carrier))
    # D is commutative, so multiplication by x commutes with every action
    times_x = Morphism(M.carrier, M.carrier, [{1: 1}, {}])
    assert check_amodule_map(M, M, times_x)
    assert not check_amodule_map(M, M, Morphism(M.carrier, M.carrier, [{0: 1}, {}]))


@pytest.mark.parametrize("d", [1, 2])
def test_free_module_is_env_tensor_m0(setting, d):
    P, D, env = setting
    F = free_module(D, vect_n(d, "m"), 4)
    assert check_module_axioms(F, max_arity=3)
    C, Y = free_module_comparison(F, env)
    assert C.is_iso()
    assert F.dim == env.operad.dim(1) * d


def test_free_module_naturality(setting):
    P, D, env = setting
    F1, F2 = free_module(D, vect_n(1, "m"), 4), free_module(D, vect_n(2, "m"), 4)
    g = Morphism(vect_n(1, "m"), vect_n(2, "m"), [{0: 1, 1: -3}])
    C1, _ = free_module_comparison(F1, env)
    C2, _ = free_module_comparison(F2, env)
    side = Morphism(C1.cod, C2.cod, [{e * 2 + j: c for j, c in g.data[0].items()}
                                     for e in range(C1.cod.dim)])
    assert free_module_map(F1, F2, g).then(C2) == C1.then(side)
    assert check_amodule_map(F1, F2, free_module_map(F1, F2, g))


def test_semidirect_product(setting):
    P, D, _ = setting
    for M in (regular_module(D), tensor_module(D, vect_n(2, "v"))):
        S = semidirect(M)
        assert check_algebra_axioms(S, max_arity=3)
        assert square_zero_check(S, S.m_indices, A=D, M=M)
        A2, M2 = module_from_square_zero(S, S.m_indices, S.a_indices)
        assert check_module_axioms(M2, max_arity=3)


def test_square_zero_fault_is_detected():
    P = UCom(4)
    D = dual_numbers(P)
    S = semidirect(regular_module(D))
    bad = Algebra(P, S.carrier, lambda n, p, args: {S.dim - 1: 1} if n == 2 and max(args) < 2
                  else S.gamma(n, p, args), name="faulty")
    v = square_zero_check(bad, S.m_indices)
    assert not v and v.axiom == "square zero"


def test_end_operad_packaging_round_trip():
    P = UAss(3)
    C = group_algebra_c2(P)
    M = regular_module(C)
    E = linear_end_operad(C.carrier, M.carrier, 3)
    phi = module_to_end_map(M)
    assert check_operad_morphism(phi, max_arity=3)
    A2, M2 = end_map_to_module(phi, E)
    for n in range(4):
        for p in range(P.dim(n)):
            for k in range(1, n + 1):
                for t in M.arg_tuples(n, k):
                    assert M2.mu(n, k, p, t) == M.mu(n, k, p, t)
