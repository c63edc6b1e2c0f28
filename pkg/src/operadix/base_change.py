"""Restriction and extension of scalars along monoid maps, and the induced
map of enveloping algebras for a map of algebras."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product

from .base_cat import VECTQ, Morphism, Obj
from .checks import Certificate, Violation
from .enveloping import env_functor, env_operad
from .errors import DescentError, SchemaError
from .linalg import Quotient, nullspace, vaxpy
from .monoids import (MonoidMap, MonoidModule, check_module_map, check_monoid_map,
                      free_monoid_module)


def restrict(f: MonoidMap, Y: MonoidModule):
    """f*Y: same carrier, e . y = f(e) . y."""
    return MonoidModule(f.source, Y.carrier, lambda e, y: Y.act_vec(f(e), {y: 1}),
                        name=f"f*{Y.name}")


class Extended(MonoidModule):
    """f_!X = N (x)_M X as a quotient of N (x) X (Kronecker indexing n * dim X + x)."""

    def __init__(self, f: MonoidMap, X: MonoidModule):
        self.f, self.X = f, X
        M, N = f.source, f.target
        dX = X.dim
        rels = []
        for n, m, x in product(range(N.dim), range(M.dim), range(X.dim)):
            r = {}
            for b, c in N.times({n: 1}, f(m)).items():
                vaxpy(r, {b * dX + x: 1}, c)
            for y, c in X.act(m, x).items():
                vaxpy(r, {n * dX + y: 1}, -c)
            if r:
                rels.append(r)
        self.quotient = Quotient(N.dim * dX, relations=rels)
        self.relations = rels
        labels = tuple((N.carrier.basis[i // dX], X.carrier.basis[i % dX])
                       for i in self.quotient.kept)
        super().__init__(N, Obj(VECTQ, labels), self._act, name=f"f!{X.name}")
        self._check_descent()

    def cls(self, n, x):
        """The class [n (x) x]."""
        return self.quotient.project({n * self.X.dim + x: 1})

    def cls_vec(self, nv, xv):
        out = {}
        for n, a in nv.items():
            for x, b in xv.items():
                vaxpy(out, self.cls(n, x), a * b)
        return out

    def _lift(self, q):
        return divmod(self.quotient.lift(q), self.X.dim)

    def _act(self, e, q):
        n, x = self._lift(q)
        return self.cls_vec(self.f.target.mult(e, n), {x: 1})

    def _check_descent(self):
        N, dX = self.f.target, self.X.dim
        for e in range(N.dim):
            for r in self.relations:
                moved = {}
                for i, c in r.items():
                    n, x = divmod(i, dX)
                    for b, d in N.mult(e, n).items():
                        vaxpy(moved, {b * dX + x: 1}, c * d)
                if not self.quotient.is_zero(moved):
                    raise DescentError("left action does not descend to N (x)_M X",
                                       {"e": e, "relation": r})


def extend(f: MonoidMap, X: MonoidModule):
    return Extended(f, X)


def unit_map(f, X, FX=None):
    """eta_X: X -> f*f_!X, x -> [1 (x) x]."""
    FX = FX or extend(f, X)
    return Morphism(X.carrier, FX.carrier,
                    [FX.cls_vec(f.target.unit, {x: 1}) for x in range(X.dim)])


def counit_map(f, Y, FY=None):
    """eps_Y: f_!f*Y -> Y, [n (x) y] -> n . y."""
    FY = FY or extend(f, restrict(f, Y))
    cols = []
    for q in range(FY.dim):
        n, y = FY._lift(q)
        cols.append(Y.act(n, y))
    return Morphism(FY.carrier, Y.carrier, cols)


def extend_map(f, g: Morphism, FX, FX2):
    """f_!(g): [n (x) x] -> [n (x) g(x)]."""
    cols = []
    for q in range(FX.dim):
        n, x = FX._lift(q)
        cols.append(FX2.cls_vec({n: 1}, g.data[x]))
    return Morphism(FX.carrier, FX2.carrier, cols)


def triangle_identities(f, X, Y):
    """eps_{f_!X} . f_!(eta_X) = id and f*(eps_Y) . eta_{f*Y} = id."""
    FX = extend(f, X)
    eta = unit_map(f, X, FX)
    FFX = extend(f, restrict(f, FX))
    first = extend_map(f, eta, FX, FFX).then(counit_map(f, FX, FFX))
    if first != Morphism.identity(FX.carrier):
        return Violation("adjunction", "triangle (extend)", {"module": X.name})
    rY = restrict(f, Y)
    FrY = extend(f, rY)
    second = unit_map(f, rY, FrY).then(counit_map(f, Y, FrY))
    if second != Morphism.identity(Y.carrier):
        return Violation("adjunction", "triangle (restrict)", {"module": Y.name})
    return Certificate("adjunction", 2)


def module_hom_basis(A, B):
    """Basis of the module maps A -> B (same monoid) as Morphisms."""
    E = A.monoid
    dA, dB = A.dim, B.dim
    # unknown L[b][a] at position b * dA + a; L(e.a) = e.L(a)
    rows = []
    for e in range(E.dim):
        for a in range(dA):
            lhs = {}
            for a2, c in A.act(e, a).items():
                for b in range(dB):
                    vaxpy(lhs, {(b, b * dA + a2): 1}, c)
            for b in range(dB):
                for b2, c in B.act(e, b).items():
                    vaxpy(lhs, {(b2, b * dA + a): 1}, -c)
            for b in range(dB):
                row = [0] * (dA * dB)
                for (bb, pos), c in lhs.items():
                    if bb == b:
                        row[pos] = c
                if any(row):
                    rows.append(row)
    sol = nullspace(rows, ncols=dA * dB)
    out = []
    for v in sol:
        out.append(Morphism(A.carrier, B.carrier,
                            [{b: v[b * dA + a] for b in range(dB) if v[b * dA + a]}
                             for a in range(dA)]))
    return out


def hom_bijection(f, X, Y):
    """Mod_N(f_!X, Y) <-> Mod_M(X, f*Y) by phi -> phi . eta and psi -> eps . f_!psi,
    checked mutually inverse on bases of both hom spaces."""
    FX = extend(f, X)
    rY = restrict(f, Y)
    eta = unit_map(f, X, FX)
    FrY = extend(f, rY)
    eps = counit_map(f, Y, FrY)
    left = module_hom_basis(FX, Y)
    right = module_hom_basis(X, rY)
    if len(left) != len(right):
        return Violation("hom bijection", "dimension", {"dims": (len(left), len(right))})

    def to_right(phi):
        return eta.then(phi)

    def to_left(psi):
        return extend_map(f, psi, FX, FrY).then(eps)

    count = 0
    for phi in left:
        count += 1
        psi = to_right(phi)
        if not check_module_map(X, rY, psi) or to_left(psi) != phi:
            return Violation("hom bijection", "phi round trip", {"count": count})
    for psi in right:
        count += 1
        phi = to_left(psi)
        if not check_module_map(FX, Y, phi) or to_right(phi) != psi:
            return Violation("hom bijection", "psi round trip", {"count": count})
    return Certificate("hom bijection", count, {"dim": len(left)})


def free_extension_check(f, C):
    """f_!(M (x) C) = N (x) C, and under that iso the unit is f (x) id_C."""
    M, N = f.source, f.target
    X = free_monoid_module(M, C)
    FX = extend(f, X)
    NC = free_monoid_module(N, C)
    dC = C.dim
    # kappa: N (x) C -> f_!(M (x) C), n (x) c -> [n (x) (1 (x) c)]
    kappa = Morphism(NC.carrier, FX.carrier,
                     [FX.cls_vec({t // dC: 1}, {u * dC + t % dC: e for u, e in M.unit.items()})
                      for t in range(NC.dim)])
    if not kappa.is_iso():
        return Violation("free extension", "N (x) C iso", {"dims": (NC.dim, FX.dim)})
    if not check_module_map(NC, FX, kappa):
        return Violation("free extension", "iso is not a module map", {})
    unit = unit_map(f, X, FX).then(kappa.inverse())
    expected = Morphism(X.carrier, NC.carrier,
                        [{b * dC + t % dC: c for b, c in f(t // dC).items()}
                         for t in range(X.dim)])
    if unit != expected:
        return Violation("free extension", "unit = f (x) id_C", {})
    return Certificate("free extension", X.dim)


# -- change of algebra -----------------------------------------------------------

@dataclass
class BaseChange:
    env_A: object
    env_B: object
    operad_map: object
    monoid_map: MonoidMap

    def matrix(self):
        return self.monoid_map.matrix()

    def restrict(self, Y):
        return restrict(self.monoid_map, Y)

    def extend(self, X):
        return extend(self.monoid_map, X)

    def restrict_module(self, M, force=False):
        """f* on A-modules, through the monoid-module equivalence."""
        from .modules import from_monoid_module, to_monoid_module
        Y = to_monoid_module(M, self.env_B, force=force)
        return from_monoid_module(self.restrict(_retarget(Y, self.monoid_map.target)),
                                  self.env_A, force=force)

    def extend_module(self, M, force=False):
        from .modules import from_monoid_module, to_monoid_module
        X = to_monoid_module(M, self.env_A, force=force)
        return from_monoid_module(self.extend(_retarget(X, self.monoid_map.source)),
                                  self.env_B, force=force)


def _retarget(Y, E):
    """Same module, monoid object replaced by an equal one."""
    return MonoidModule(E, Y.carrier, Y.act, name=Y.name)


def algebra_base_change(P, f, K, K_B=None, max_arity=1, route="auto", env_A=None, env_B=None):
    """Env_P(A) -> Env_P(B) induced by an algebra map f: A -> B."""
    env_A = env_A or env_operad(P, f.source, K, max_arity=max_arity, route=route, check=False)
    env_B = env_B or env_operad(P, f.target, K if K_B is None else K_B, max_arity=max_arity,
                                route=route, check=False)
    for env in (env_A, env_B):
        if env.stabilized is not True:
            warnings.warn(f"envelope of {env.algebra.name} not certified stable "
                          f"at cap {env.K}", stacklevel=2)
    F, g = env_functor(env_A, env_B, lambda n, p: {p: 1}, f)
    cert = check_monoid_map(g)
    if not cert:
        raise SchemaError(f"induced map of enveloping algebras fails: {cert}")
    return BaseChange(env_A, env_B, F, g)


def check_functoriality(bc_f, bc_g, bc_gf):
    """Matrix of Env(g . f) equals Env(g) . Env(f)."""
    if bc_f.matrix().then(bc_g.matrix()) != bc_gf.matrix():
        return Violation("base change", "functoriality", {})
    return Certificate("base change", 1)
