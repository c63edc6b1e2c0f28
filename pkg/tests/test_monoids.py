from hypothesis import given, strategies as st

from operadix.base_cat import Morphism, vect_n
from operadix.monoids import (MonoidMap, MonoidModule, check_module_map, check_monoid,
                              check_monoid_map, check_monoid_module, free_monoid_module, opposite,
                              regular_monoid_module, table_monoid, tensor_monoid)


def c2():
    return table_monoid(("1", "g"), {(i, j): {(i + j) % 2: 1} for i in range(2) for j in range(2)},
                        {0: 1}, name="C2")


def dual():
    return table_monoid(("1", "x"), {(i, j): ({i + j: 1} if i + j < 2 else {})
                                     for i in range(2) for j in range(2)}, {0: 1}, name="D")


def test_small_monoids():
    for E in (c2(), dual(), opposite(dual()), tensor_monoid(dual(), opposite(c2()))):
        assert check_monoid(E), E.name


def test_nonassociative_table_is_witnessed():
    # xy = x and every other product of generators is y: (xy)y = y but x(yy) = x
    worse = table_monoid(("1", "x", "y"),
                         {(i, j): ({j: 1} if i == 0 else {i: 1} if j == 0 else {1: 1} if (i, j) == (1, 2)
                                   else {2: 1}) for i in range(3) for j in range(3)}, {0: 1})
    assert not check_monoid(worse)


@given(st.integers(0, 1))
def test_regular_and_free_modules(d):
    E = dual()
    assert check_monoid_module(regular_monoid_module(E))
    assert check_monoid_module(free_monoid_module(E, vect_n(d + 1)))


def test_module_maps():
    E = c2()
    R = regular_monoid_module(E)
    # right multiplication by g commutes with the left action
    g = Morphism(R.carrier, R.carrier, [{1: 1}, {0: 1}])
    assert check_module_map(R, R, g)
    proj = Morphism(R.carrier, R.carrier, [{0: 1}, {}])
    assert not check_module_map(R, R, proj)


def test_monoid_maps():
    E = c2()
    sign = table_monoid(("1",), {(0, 0): {0: 1}}, {0: 1}, name="Q")
    assert check_monoid_map(MonoidMap(E, sign, lambda a: {0: 1}))
    assert not check_monoid_map(MonoidMap(E, sign, lambda a: {0: 1} if a == 0 else {}))


def test_broken_module_action_is_caught():
    E = dual()
    M = MonoidModule(E, E.carrier, lambda e, m: {m: 1}, name="trivial x")
    assert not check_monoid_module(M)
