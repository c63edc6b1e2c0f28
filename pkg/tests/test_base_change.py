import warnings

import pytest

from operadix.algebras import AlgebraMap, dual_numbers, free_algebra, ground_algebra
from operadix.base_cat import vect_n
from operadix.base_change import (algebra_base_change, check_functoriality, counit_map, extend,
                                  free_extension_check, hom_bijection, module_hom_basis, restrict,
                                  triangle_identities, unit_map)
from operadix.enveloping import algebra_monoid
from operadix.linalg import rank
from operadix.monoids import (MonoidMap, check_monoid_module, free_monoid_module, opposite,
                              regular_monoid_module, table_monoid, tensor_monoid)
from operadix.operads import UAss, UCom


def monoids():
    D = algebra_monoid(dual_numbers(UCom(4)))
    Q = algebra_monoid(ground_algebra(UCom(4)))
    DA = algebra_monoid(dual_numbers(UAss(4)))
    T = tensor_monoid(DA, opposite(DA))
    return {
        "unit": MonoidMap(Q, D, lambda a: {0: 1}, name="Q->D"),
        "aug": MonoidMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="D->Q"),
        "incl": MonoidMap(DA, T, lambda a: {a * 2: 1}, name="D->DxD^op"),
        "id": MonoidMap(D, D, lambda a: {a: 1}, name="id"),
    }


MAPS = monoids()


@pytest.mark.parametrize("name", sorted(MAPS))
def test_triangle_identities_and_hom_bijection(name):
    f = MAPS[name]
    for X in (regular_monoid_module(f.source), free_monoid_module(f.source, vect_n(2))):
        Y = regular_monoid_module(f.target)
        assert triangle_identities(f, X, Y)
        assert hom_bijection(f, X, Y)


@pytest.mark.parametrize("name", sorted(MAPS))
@pytest.mark.parametrize("d", [1, 2])
def test_unit_on_free_modules_is_f_tensor_id(name, d):
    assert free_extension_check(MAPS[name], vect_n(d))


def test_extension_along_the_identity_changes_nothing():
    f = MAPS["id"]
    X = free_monoid_module(f.source, vect_n(2))
    FX = extend(f, X)
    assert FX.dim == X.dim and check_monoid_module(FX)
    assert unit_map(f, X, FX).is_iso()


def test_extension_along_augmentation_kills_x():
    f = MAPS["aug"]
    FX = extend(f, regular_monoid_module(f.source))
    assert FX.dim == 1
    assert check_monoid_module(restrict(f, regular_monoid_module(f.target)))


def test_counit_is_surjective_for_the_unit_map():
    f = MAPS["unit"]
    Y = regular_monoid_module(f.target)
    eps = counit_map(f, Y)
    # D (x)_Q D has dimension 4 and maps onto D
    assert eps.dom.dim == 4 and rank(eps.matrix()) == 2


def test_hom_space_dimension():
    D = MAPS["id"].source
    R = regular_monoid_module(D)
    # endomorphisms of D as a module over itself are right multiplications
    assert len(module_hom_basis(R, R)) == 2


def test_envelope_level_base_change_and_functoriality():
    P = UAss(7)
    F = free_algebra(P, vect_n(1, "x"), 2)
    D = dual_numbers(P)
    Q = ground_algebra(P)
    f = AlgebraMap(F, D, lambda a: {a: 1} if a < 2 else {}, name="F->D")
    g = AlgebraMap(D, Q, lambda a: {0: 1} if a == 0 else {}, name="D->Q")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bf = algebra_base_change(P, f, 2, K_B=3)
        bg = algebra_base_change(P, g, 3, env_A=bf.env_B)
        bgf = algebra_base_change(P, f.then(g), 2, env_A=bf.env_A, env_B=bg.env_B)
    assert bf.matrix().cod.dim == 4
    assert check_functoriality(bf, bg, bgf)
    assert free_extension_check(bf.monoid_map, vect_n(1))


def test_unstable_envelope_warns():
    P = UAss(7)
    F = free_algebra(P, vect_n(1, "x"), 2)
    D = dual_numbers(P)
    f = AlgebraMap(F, D, lambda a: {a: 1} if a < 2 else {}, name="F->D")
    with pytest.warns(UserWarning):
        algebra_base_change(P, f, 2, K_B=3)


def test_noncommutative_target():
    E = table_monoid(("1",), {(0, 0): {0: 1}}, {0: 1}, name="Q")
    f = MonoidMap(E, MAPS["incl"].target, lambda a: {0: 1}, name="Q->T")
    assert triangle_identities(f, regular_monoid_module(E), regular_monoid_module(f.target))
    assert free_extension_check(f, vect_n(1))
