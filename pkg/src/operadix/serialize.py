"""JSON encodings of operads, algebras, modules, monoids and bialgebras.

Rationals travel as "p/q" strings.  Dense vectors are lists over a stated
basis; action tables are matrices whose columns run over (p, arguments) with
p slowest and the arguments in lexicographic order.
"""

from __future__ import annotations

import json
import os
import tempfile
from itertools import product

from .algebras import Algebra, PresentedAlgebra, free_algebra
from .ambient import Presentation
from .base_cat import (VECTQ, Obj, label_str, morphism_from_json, morphism_to_json, obj_from_json,
                       obj_to_json, q_to_str, str_to_q, symobj_from_json, symobj_to_json)
from .errors import SchemaError
from .operads import TableOperad, builtin


# -- plumbing ------------------------------------------------------------------

def dumps(data):
    """Deterministic JSON text."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise SchemaError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def vec_to_json(v, dim):
    return [q_to_str(v.get(i, 0)) for i in range(dim)]


def vec_from_json(x, dim):
    if not isinstance(x, list) or len(x) != dim:
        raise SchemaError(f"expected a coordinate list of length {dim}")
    out = {}
    for i, s in enumerate(x):
        c = str_to_q(s)
        if c:
            out[i] = c
    return out


def _matrix_to_json(cols, dim):
    """Columns (sparse vectors) as rows of strings."""
    return [[q_to_str(col.get(r, 0)) for col in cols] for r in range(dim)]


def _matrix_from_json(rows, dim, ncols):
    if not isinstance(rows, list) or len(rows) != dim:
        raise SchemaError(f"matrix needs {dim} rows")
    cols = [{} for _ in range(ncols)]
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != ncols:
            raise SchemaError(f"matrix row {r} needs {ncols} entries")
        for c, s in enumerate(row):
            x = str_to_q(s)
            if x:
                cols[c][r] = x
    return cols


# -- operads -----------------------------------------------------------------

def operad_to_json(P, N=None):
    N = P.max_arity if N is None else N
    unit = morphism_to_json(_vec_morphism(Obj(VECTQ, ("1",)), P.layer(1).carrier, [P.unit()]))
    comp = {}
    for n in range(1, N + 1):
        for m in range(0, N - n + 2):
            for i in range(1, n + 1):
                dom = Obj(VECTQ, tuple(f"{label_str(a)}|{label_str(b)}"
                                       for a in P.basis(n) for b in P.basis(m)))
                cols = [P.compose(n, m, i, a, b) for a in range(P.dim(n)) for b in range(P.dim(m))]
                comp[f"{n},{m},{i}"] = morphism_to_json(
                    _vec_morphism(dom, P.layer(n + m - 1).carrier, cols))
    return {"truncation": N, "name": P.name,
            "layers": [symobj_to_json(P.layer(n)) for n in range(N + 1)],
            "unit": unit, "comp": comp}


def _vec_morphism(dom, cod, cols):
    from .base_cat import Morphism
    return Morphism(Obj(VECTQ, tuple(map(label_str, dom.basis))),
                    Obj(VECTQ, tuple(map(label_str, cod.basis))), cols)


def operad_from_json(d):
    try:
        layers = [symobj_from_json(x) for x in d["layers"]]
        unit = morphism_from_json(d["unit"]).data[0]
        comp = {}
        for key, f in d["comp"].items():
            n, m, i = (int(t) for t in key.split(","))
            comp[(n, m, i)] = morphism_from_json(f)
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise SchemaError(f"bad operad encoding: {exc}") from exc
    if len(layers) != d.get("truncation", len(layers) - 1) + 1:
        raise SchemaError("truncation does not match the number of layers")
    return TableOperad(layers, unit, comp, name=d.get("name", "table"))


def load_operad(ref, N):
    """Built-in name, inline JSON operad, or path to one."""
    if isinstance(ref, dict):
        return operad_from_json(ref)
    if isinstance(ref, str) and ref.endswith(".json"):
        return operad_from_json(read_json(ref))
    return builtin(ref, N)


# -- algebras ------------------------------------------------------------------

def _sparse_terms(x):
    """{"terms": [[k, p, [xs], "c"], ...]} -> free-label dict."""
    out = {}
    try:
        for k, p, xs, c in x["terms"]:
            if len(xs) != k:
                raise SchemaError(f"term weight {k} with {len(xs)} generators")
            lab = (int(k), int(p), tuple(int(t) for t in xs))
            out[lab] = out.get(lab, 0) + str_to_q(c)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad sparse element: {exc}") from exc
    return {lab: c for lab, c in out.items() if c}


def _element(x, FX):
    if isinstance(x, dict):
        return _sparse_terms(x)
    v = vec_from_json(x, FX.dim)
    return {FX.carrier.basis[i]: c for i, c in v.items()}


def presentation_from_json(d, P):
    try:
        gens = obj_from_json(d["generators"]) if isinstance(d["generators"], dict) else \
            Obj(VECTQ, tuple(d["generators"]))
        W = int(d["weight_cap"])
        raw = d.get("relations", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad presentation: {exc}") from exc
    if W < 1:
        raise SchemaError("weight cap must be positive")
    FX = free_algebra(P, gens, W)
    rels = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError("each relation is a pair [lhs, rhs]")
        lhs, rhs = (_element(x, FX) for x in pair)
        r = dict(lhs)
        for lab, c in rhs.items():
            r[lab] = r.get(lab, 0) - c
        for (k, p, xs) in r:
            if k > W or p >= P.dim(k) or any(not 0 <= x < gens.dim for x in xs):
                raise SchemaError(f"relation term {(k, p, xs)} out of range")
        r = {lab: c for lab, c in r.items() if c}
        if r:
            rels.append(r)
    return Presentation(P, gens, rels, W)


def presentation_to_json(A, ref):
    pres = A.presentation
    FX = free_algebra(A.operad, pres.gens, pres.weight_cap)
    rels = []
    for r in pres.relations:
        v = FX.quotient.project(FX.ambient.from_labels(r))
        rels.append([vec_to_json(v, FX.dim), vec_to_json({}, FX.dim)])
    return {"operad": ref, "generators": obj_to_json(pres.gens), "relations": rels,
            "weight_cap": pres.weight_cap}


def _action_columns(P, n, dims):
    for p in range(P.dim(n)):
        for args in product(*[range(d) for d in dims]):
            yield p, args


def algebra_to_json(A, ref, max_arity=None):
    """Explicit form: carrier plus one action matrix per arity."""
    P = A.operad
    N = A.max_arity if max_arity is None else min(max_arity, A.max_arity)
    actions = {}
    for n in range(N + 1):
        cols = [A.gamma(n, p, args) for p, args in _action_columns(P, n, [A.dim] * n)]
        actions[str(n)] = _matrix_to_json(cols, A.dim)
    out = {"operad": ref, "carrier": obj_to_json(A.carrier), "max_arity": N, "actions": actions,
           "name": A.name}
    if A.presentation is not None and isinstance(A, PresentedAlgebra):
        out["presentation"] = presentation_to_json(A, ref)
    return out


def algebra_from_json(d, P):
    """Presented form (key "generators") or explicit form (key "actions")."""
    if "generators" in d:
        pres = presentation_from_json(d, P)
        return PresentedAlgebra(pres, name=d.get("name", "A"))
    try:
        carrier = obj_from_json(d["carrier"])
        N = int(d["max_arity"])
        raw = d["actions"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad algebra encoding: {exc}") from exc
    if N > P.max_arity:
        raise SchemaError(f"algebra arity {N} exceeds operad truncation {P.max_arity}")
    table = {}
    for n in range(N + 1):
        if str(n) not in raw:
            raise SchemaError(f"missing action matrix for arity {n}")
        keys = list(_action_columns(P, n, [carrier.dim] * n))
        cols = _matrix_from_json(raw[str(n)], carrier.dim, len(keys))
        for key, col in zip(keys, cols):
            table[(n,) + key] = col
    A = Algebra(P, carrier, lambda n, p, args: dict(table[(n, p, tuple(args))]), max_arity=N,
                name=d.get("name", "A"))
    return A


# -- modules -------------------------------------------------------------------

def module_to_json(M, algebra_json, max_arity=None):
    from .modules import AModule  # noqa: F401  (type of M)
    P = M.operad
    N = M.max_arity if max_arity is None else min(max_arity, M.max_arity)
    dA, dM = M.algebra.dim, M.dim
    actions = {}
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            dims = [dM if j == k else dA for j in range(1, n + 1)]
            cols = [M.mu(n, k, p, args) for p, args in _action_columns(P, n, dims)]
            actions[f"{n},{k}"] = {"slot": k, "matrix": _matrix_to_json(cols, dM)}
    return {"algebra": algebra_json, "carrier": obj_to_json(M.carrier), "max_arity": N,
            "actions": actions, "name": M.name}


def module_from_json(d, P):
    from .modules import AModule
    try:
        A = algebra_from_json(d["algebra"], P)
        carrier = obj_from_json(d["carrier"])
        N = int(d["max_arity"])
        raw = d["actions"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad module encoding: {exc}") from exc
    if N > A.max_arity:
        raise SchemaError(f"module arity {N} exceeds the algebra's {A.max_arity}")
    table = {}
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            entry = raw.get(f"{n},{k}")
            if entry is None:
                raise SchemaError(f"missing module action {n},{k}")
            if entry.get("slot") != k:
                raise SchemaError(f"action {n},{k} has slot {entry.get('slot')}")
            dims = [carrier.dim if j == k else A.dim for j in range(1, n + 1)]
            keys = list(_action_columns(P, n, dims))
            cols = _matrix_from_json(entry["matrix"], carrier.dim, len(keys))
            for key, col in zip(keys, cols):
                table[(n, k) + key] = col
    return AModule(A, carrier, lambda n, k, p, args: dict(table[(n, k, p, tuple(args))]),
                   max_arity=N, name=d.get("name", "M"))


# -- monoids, envelopes, bialgebras ----------------------------------------------

def monoid_to_json(E):
    d = E.dim
    cols = [E.mult(i, j) for i in range(d) for j in range(d)]
    return {"carrier": obj_to_json(E.carrier), "dim": d, "unit": vec_to_json(E.unit, d),
            "structure_constants": _matrix_to_json(cols, d)}


def monoid_map_to_json(f):
    return {"source_dim": f.source.dim, "target_dim": f.target.dim,
            "matrix": _matrix_to_json([f(a) for a in range(f.source.dim)], f.target.dim)}


def cols_to_json(cols, dim):
    return _matrix_to_json(cols, dim)


def envelope_to_json(env, max_arity=None, structure=True):
    PA = env.operad
    out = {"summary": env.summary(), "eta_bar": morphism_to_json(_vec_morphism(
        env.eta_bar_matrix.dom, env.eta_bar_matrix.cod, env.eta_bar_matrix.data))}
    if structure:
        N = PA.max_arity if max_arity is None else min(max_arity, PA.max_arity)
        out["operad"] = operad_to_json(PA, N) if N >= 1 else {
            "truncation": 0, "layers": [symobj_to_json(PA.layer(0))]}
    return out


def bialgebra_from_json(d, H):
    from .hopf import Bialgebra
    A = algebra_from_json(d["algebra"], H.operad)
    dim = A.dim
    try:
        delta_cols = _matrix_from_json(d["delta"], dim * dim, dim)
        counit = vec_from_json(d["counit"], dim)
    except KeyError as exc:
        raise SchemaError(f"bad bialgebra encoding: missing {exc}") from exc
    return Bialgebra(H, A, lambda a: dict(delta_cols[a]), lambda a: counit.get(a, 0))


def bialgebra_to_json(Bi, ref):
    A = Bi.algebra
    d = A.dim
    return {"algebra": algebra_to_json(A, ref, max_arity=min(3, A.max_arity)),
            "delta": _matrix_to_json([Bi.delta(a) for a in range(d)], d * d),
            "counit": [q_to_str(Bi.counit(a)) for a in range(d)]}
