from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from operadix.base_cat import (FINSET, VECTQ, Morphism, Obj, SymObj, associator, coequalizer,
                               coinvariants, coproduct, curry, evaluation, finset, internal_hom,
                               morphism_from_json, morphism_to_json, obj_from_json, obj_to_json,
                               quotient_by, swap, symobj_from_json, symobj_to_json, tensor,
                               tensor_maps, uncurry, vect_n)
from operadix.errors import CategoryMismatch, SchemaError

entries = st.integers(-2, 2)


def linear_maps(m, n):
    return st.lists(st.lists(entries, min_size=m, max_size=m), min_size=n, max_size=n).map(
        lambda rows: Morphism.from_matrix(vect_n(m), vect_n(n), rows))


@given(linear_maps(2, 3), linear_maps(3, 2), linear_maps(2, 2), linear_maps(2, 2))
def test_tensor_is_functorial(f, g, h, k):
    lhs = tensor_maps(f.then(g), h.then(k))
    rhs = tensor_maps(f, h).then(tensor_maps(g, k))
    assert lhs == rhs


@given(linear_maps(2, 3), linear_maps(3, 2))
def test_swap_is_natural(f, g):
    left = tensor_maps(f, g).then(swap(f.cod, g.cod))
    right = swap(f.dom, g.dom).then(tensor_maps(g, f))
    assert left == right


def test_swap_squares_to_identity():
    x, y = vect_n(2), vect_n(3)
    assert swap(x, y).then(swap(y, x)) == Morphism.identity(tensor(x, y))


@given(linear_maps(6, 2))
def test_curry_uncurry_round_trip(f):
    # Z = Q^3, X = Q^2, f: Z (x) X -> Q^2
    z, x = vect_n(3, "z"), vect_n(2, "x")
    f = Morphism(tensor(z, x), f.cod, f.data)
    assert uncurry(curry(f, x), x) == f


def test_finset_curry_and_evaluation():
    x, y = finset(["a", "b"]), finset(["0", "1", "2"])
    assert internal_hom(x, y).dim == 9
    z = finset(["u"])
    f = Morphism(tensor(z, x), y, [2, 0])
    g = curry(f, x)
    h = tensor_maps(g, Morphism.identity(x)).then(evaluation(x, y))
    assert h.data == f.data


def test_associator_is_identity_on_row_major_bases():
    x, y, z = vect_n(2), vect_n(1), vect_n(3)
    a = associator(x, y, z)
    assert a.matrix() == Morphism.identity(a.dom).matrix()


def test_inverse_and_iso():
    f = Morphism.from_matrix(vect_n(2), vect_n(2), [[1, 1], [0, 2]])
    assert f.is_iso()
    assert f.then(f.inverse()) == Morphism.identity(vect_n(2))
    assert f.inverse().matrix() == [[1, Fraction(-1, 2)], [0, Fraction(1, 2)]]


def test_coproduct_cotuple():
    x, y = vect_n(1), vect_n(2)
    c = coproduct([x, y])
    f = Morphism(x, vect_n(1), [{0: 3}])
    g = Morphism(y, vect_n(1), [{0: 1}, {}])
    h = c.cotuple([f, g])
    assert c.injections[0].then(h) == f and c.injections[1].then(h) == g


def test_coequalizer_factors_exactly_the_coequalizing_maps():
    x, y = vect_n(1), vect_n(3)
    f = Morphism(x, y, [{0: 1}])
    g = Morphism(x, y, [{1: 1}])
    q = coequalizer(f, g)
    assert q.obj.dim == 2
    good = Morphism(y, vect_n(1), [{0: 1}, {0: 1}, {0: 5}])
    assert q.proj.then(q.factor(good)) == good
    with pytest.raises(ValueError):
        q.factor(Morphism(y, vect_n(1), [{0: 1}, {}, {}]))


def test_finset_coequalizer_merges_orbits():
    x, y = finset(["p", "q"]), finset(["a", "b", "c", "d"])
    q = coequalizer(Morphism(x, y, [0, 2]), Morphism(x, y, [1, 3]))
    assert q.obj.basis == ("a", "c")


def test_quotient_by_span():
    q = quotient_by(vect_n(3), [{0: 1, 1: -1, 2: 1}])
    assert q.obj.dim == 2


def test_coinvariants_of_the_sign_and_permutation_actions():
    c = vect_n(2)
    flip = Morphism(c, c, [{1: 1}, {0: 1}])
    assert coinvariants(SymObj(c, 2, [flip])).obj.dim == 1
    sign = Morphism(c, c, [{0: -1}, {1: -1}])
    assert coinvariants(SymObj(c, 2, [sign])).obj.dim == 0
    s = finset(["x", "y", "z"])
    orbit = coinvariants(SymObj(s, 2, [Morphism(s, s, [1, 0, 2])]))
    assert orbit.obj.basis == ("x", "z")


def test_coxeter_violation_is_rejected():
    c = vect_n(1)
    bad = Morphism(c, c, [{0: 2}])
    with pytest.raises(SchemaError):
        SymObj(c, 2, [bad])


def test_category_mismatch():
    with pytest.raises(CategoryMismatch):
        Morphism(vect_n(1), finset(["a"]), [{0: 1}])


def test_json_round_trips():
    x = Obj(VECTQ, ("a", "b"))
    assert obj_from_json(obj_to_json(x)) == x
    f = Morphism.from_matrix(x, x, [[Fraction(1, 3), 0], [2, -1]])
    assert morphism_from_json(morphism_to_json(f)) == f
    assert morphism_to_json(f)["matrix"][0][0] == "1/3"
    s = finset(["u", "v"])
    g = Morphism(s, s, [1, 0])
    assert morphism_from_json(morphism_to_json(g)) == g
    sym = SymObj(x, 2, [Morphism(x, x, [{1: 1}, {0: 1}])])
    back = symobj_from_json(symobj_to_json(sym))
    assert back.degree == 2 and back.gens == sym.gens


def test_float_scalars_are_rejected():
    with pytest.raises(SchemaError):
        morphism_from_json({"cat": VECTQ, "dom": ["a"], "cod": ["a"], "matrix": [[0.5]]})
    assert FINSET != VECTQ
