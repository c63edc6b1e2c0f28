import json
from fractions import Fraction

import pytest

from operadix import serialize as ser
from operadix.algebras import check_algebra_axioms, dual_numbers, group_algebra_c2
from operadix.base_cat import str_to_q
from operadix.errors import SchemaError
from operadix.hopf import group_bialgebra_c2, ucom_hopf
from operadix.modules import check_module_axioms, compare_modules, regular_module
from operadix.operads import UAss, UCom


def test_rationals_are_exact_strings():
    assert ser.vec_to_json({1: Fraction(-2, 3)}, 3) == ["0/1", "-2/3", "0/1"]
    assert ser.vec_from_json(["1/2", "0", 3], 3) == {0: Fraction(1, 2), 2: 3}
    with pytest.raises(SchemaError):
        str_to_q(0.5)
    with pytest.raises(SchemaError):
        str_to_q("1/0")


def test_dumps_is_canonical():
    assert ser.dumps({"b": 1, "a": [1, 2]}) == ser.dumps({"a": [1, 2], "b": 1})


def test_atomic_write(tmp_path):
    path = tmp_path / "out.json"
    ser.write_atomic(str(path), "first")
    ser.write_atomic(str(path), "second")
    assert path.read_text() == "second"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


def test_explicit_algebra_round_trip():
    P = UAss(4)
    A = group_algebra_c2(P)
    d = json.loads(ser.dumps(ser.algebra_to_json(A, "uAss", max_arity=3)))
    B = ser.algebra_from_json(d, P)
    assert check_algebra_axioms(B, max_arity=3)
    for args in [(0, 1), (1, 1), (1, 0, 1)]:
        for p in range(P.dim(len(args))):
            assert B.gamma(len(args), p, args) == A.gamma(len(args), p, args)


def test_presented_algebra_from_sparse_terms():
    d = {"generators": {"cat": "vectq", "basis": ["x"]}, "weight_cap": 2,
         "relations": [[{"terms": [[2, 0, [0, 0], "1"]]}, {"terms": []}]]}
    A = ser.algebra_from_json(d, UCom(4))
    assert A.dim == 2
    back = ser.algebra_from_json(ser.presentation_to_json(A, "uCom"), UCom(4))
    assert back.dim == 2


@pytest.mark.parametrize("bad", [
    {"generators": {"cat": "vectq", "basis": ["x"]}, "weight_cap": 0},
    {"generators": {"cat": "vectq", "basis": ["x"]}, "weight_cap": 2,
     "relations": [[{"terms": [[2, 0, [0, 5], "1"]]}, {"terms": []}]]},
    {"generators": {"cat": "vectq", "basis": ["x"]}, "weight_cap": 2,
     "relations": [[{"terms": [[2, 0, [0], "1"]]}, {"terms": []}]]},
    {"carrier": {"cat": "vectq", "basis": ["1"]}, "max_arity": 1, "actions": {"0": [["1"]]}},
    {"weight_cap": 2},
])
def test_schema_errors(bad):
    with pytest.raises(SchemaError):
        ser.algebra_from_json(bad, UCom(4))


def test_module_round_trip():
    P = UAss(4)
    D = dual_numbers(P)
    M = regular_module(D)
    d = json.loads(ser.dumps(ser.module_to_json(M, ser.algebra_to_json(D, "uAss", 3), 3)))
    M2 = ser.module_from_json(d, P)
    assert check_module_axioms(M2, max_arity=3)
    assert compare_modules(M, M2, 3)


def test_bialgebra_round_trip():
    H = ucom_hopf(UCom(4))
    Bi = group_bialgebra_c2(H)
    back = ser.bialgebra_from_json(json.loads(ser.dumps(ser.bialgebra_to_json(Bi, "uCom"))), H)
    assert [back.delta(a) for a in range(2)] == [Bi.delta(a) for a in range(2)]
    assert [back.counit(a) for a in range(2)] == [1, 1]


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError):
        ser.read_json(str(tmp_path / "nope.json"))
    (tmp_path / "broken.json").write_text("{")
    with pytest.raises(SchemaError):
        ser.read_json(str(tmp_path / "broken.json"))
