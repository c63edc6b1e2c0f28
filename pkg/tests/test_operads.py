from math import factorial

import pytest

from operadix.base_cat import finset, vect_n
from operadix.checks import Violation
from operadix.errors import CapGuardError, SchemaError, TruncationError
from operadix.operads import (EndOperad, PatchedOperad, UAss, UCom, augmentation, builtin,
                              check_operad_axioms, check_operad_morphism, identity_morphism,
                              tensor_operads, total_composition, truncate)
from operadix.serialize import operad_from_json, operad_to_json


def test_layer_dimensions():
    assert [UAss(5).dim(n) for n in range(6)] == [factorial(n) for n in range(6)]
    assert [UCom(5).dim(n) for n in range(6)] == [1] * 6


@pytest.mark.parametrize("P", [UAss(4), UCom(4)], ids=["uAss", "uCom"])
def test_builtin_axioms(P):
    assert check_operad_axioms(P)


def test_linear_and_finite_set_endomorphism_operads():
    assert check_operad_axioms(EndOperad(vect_n(2), 3))
    E = EndOperad(finset(["a", "b"]), 2)
    assert [E.dim(n) for n in range(3)] == [2, 4, 16]
    assert check_operad_axioms(E)


def test_finite_set_end_respects_cap_guard(monkeypatch):
    monkeypatch.setenv("OPERADIX_CAP_GUARD", "100")
    with pytest.raises(CapGuardError):
        EndOperad(finset(["a", "b", "c"]), 2)


def test_tensor_operad_axioms():
    T = tensor_operads(UAss(3), UCom(3))
    assert [T.dim(n) for n in range(4)] == [1, 1, 2, 6]
    assert check_operad_axioms(T)


def test_augmentation_and_identity_are_morphisms():
    assert check_operad_morphism(augmentation(UAss(4)))
    assert check_operad_morphism(identity_morphism(UCom(4)))


def test_patched_composition_is_caught():
    P = UAss(3)
    bad = PatchedOperad(P, {(2, 2, 1, 0, 0): {1: 1}})
    v = check_operad_axioms(bad)
    assert isinstance(v, Violation)


def test_total_composition_shape():
    f = total_composition(UAss(4), 2, (1, 2))
    assert f.dom.dim == 2 * 1 * 2 and f.cod.dim == 6
    assert f.is_iso() is False


def test_truncation_errors():
    with pytest.raises(TruncationError):
        UAss(2).dim(3)
    with pytest.raises(SchemaError):
        builtin("Lie", 3)


def test_table_round_trip():
    T = truncate(UAss(3), 3)
    back = operad_from_json(operad_to_json(T, 3))
    assert [back.dim(n) for n in range(4)] == [1, 1, 2, 6]
    assert check_operad_axioms(back)
    for a in range(2):
        for b in range(2):
            assert back.compose(2, 2, 1, a, b) == UAss(3).compose(2, 2, 1, a, b)
