"""Monoids in VectQ and their modules, given by structure-constant functions."""

from __future__ import annotations

from itertools import product

from .base_cat import VECTQ, Morphism, Obj
from .checks import Certificate, Violation
from .linalg import lincomb, vaxpy


class Monoid:
    """Carrier with unit vector and mult(i, j) -> vector on basis indices."""

    def __init__(self, carrier, unit, mult, name="E"):
        self.carrier = carrier
        self.unit = dict(unit)
        self._mult = mult
        self._cache = {}
        self.name = name

    @property
    def dim(self):
        return self.carrier.dim

    def mult(self, i, j):
        key = (i, j)
        out = self._cache.get(key)
        if out is None:
            out = self._mult(i, j)
            self._cache[key] = out
        return out

    def times(self, u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                vaxpy(out, self.mult(i, j), x * y)
        return out

    def table(self):
        return {(i, j): self.mult(i, j) for i in range(self.dim) for j in range(self.dim)}

    def __repr__(self):
        return f"Monoid({self.name}, dim={self.dim})"


def check_monoid(E):
    d = E.dim
    count = 0
    for a in range(d):
        count += 1
        if E.times(E.unit, {a: 1}) != {a: 1} or E.times({a: 1}, E.unit) != {a: 1}:
            return Violation(E.name, "unit", {"a": a})
    for a, b, c in product(range(d), repeat=3):
        count += 1
        if E.times(E.mult(a, b), {c: 1}) != E.times({a: 1}, E.mult(b, c)):
            return Violation(E.name, "associativity", {"a": a, "b": b, "c": c})
    return Certificate(E.name, count)


def table_monoid(basis, table, unit, name="E"):
    """Monoid from an explicit dict {(i, j): vector}."""
    return Monoid(Obj(VECTQ, tuple(basis)), unit, lambda i, j: dict(table[(i, j)]), name=name)


def opposite(E):
    return Monoid(E.carrier, E.unit, lambda i, j: E.mult(j, i), name=f"{E.name}^op")


def tensor_monoid(E, F):
    """E (x) F with (a (x) b)(c (x) d) = ac (x) bd, Kronecker indexing."""
    df = F.dim

    def mult(i, j):
        a, b = divmod(i, df)
        c, d = divmod(j, df)
        u, v = E.mult(a, c), F.mult(b, d)
        return {x * df + y: s * t for x, s in u.items() for y, t in v.items()}

    unit = {x * df + y: s * t for x, s in E.unit.items() for y, t in F.unit.items()}
    carrier = Obj(VECTQ, tuple((a, b) for a in E.carrier.basis for b in F.carrier.basis))
    return Monoid(carrier, unit, mult, name=f"{E.name}x{F.name}")


class MonoidMap:
    def __init__(self, source, target, fn, name="f"):
        self.source, self.target = source, target
        self._fn = fn
        self._cache = {}
        self.name = name

    def __call__(self, a):
        out = self._cache.get(a)
        if out is None:
            out = self._fn(a)
            self._cache[a] = out
        return out

    def apply(self, v):
        return lincomb((c, self(a)) for a, c in v.items())

    def matrix(self):
        return Morphism(self.source.carrier, self.target.carrier,
                        [self(a) for a in range(self.source.dim)])

    def then(self, other):
        return MonoidMap(self.source, other.target, lambda a: other.apply(self(a)),
                         name=f"{other.name}.{self.name}")


def monoid_map_from_matrix(E, F, f: Morphism, name="f"):
    return MonoidMap(E, F, lambda a: dict(f.data[a]), name=name)


def check_monoid_map(f):
    E, F = f.source, f.target
    if f.apply(E.unit) != F.unit:
        return Violation(f.name, "unit", {})
    count = 1
    for a, b in product(range(E.dim), repeat=2):
        count += 1
        if f.apply(E.mult(a, b)) != F.times(f(a), f(b)):
            return Violation(f.name, "multiplicativity", {"a": a, "b": b})
    return Certificate(f.name, count)


class MonoidModule:
    """Left module: act(e, m) -> vector on basis indices."""

    def __init__(self, monoid, carrier, act, name="M"):
        self.monoid = monoid
        self.carrier = carrier
        self._act = act
        self._cache = {}
        self.name = name

    @property
    def dim(self):
        return self.carrier.dim

    def act(self, e, m):
        key = (e, m)
        out = self._cache.get(key)
        if out is None:
            out = self._act(e, m)
            self._cache[key] = out
        return out

    def act_vec(self, ev, mv):
        out = {}
        for e, x in ev.items():
            for m, y in mv.items():
                vaxpy(out, self.act(e, m), x * y)
        return out

    def matrix(self, e):
        """Action of a basis element as an endomorphism."""
        return Morphism(self.carrier, self.carrier, [self.act(e, m) for m in range(self.dim)])

    def tables(self):
        return {e: self.matrix(e) for e in range(self.monoid.dim)}


def check_monoid_module(M):
    E = M.monoid
    count = 0
    for m in range(M.dim):
        count += 1
        if M.act_vec(E.unit, {m: 1}) != {m: 1}:
            return Violation(M.name, "unit", {"m": m})
    for a, b in product(range(E.dim), repeat=2):
        for m in range(M.dim):
            count += 1
            if M.act_vec(E.mult(a, b), {m: 1}) != M.act_vec({a: 1}, M.act(b, m)):
                return Violation(M.name, "associativity", {"a": a, "b": b, "m": m})
    return Certificate(M.name, count)


def regular_monoid_module(E):
    return MonoidModule(E, E.carrier, lambda e, m: E.mult(e, m), name=f"{E.name}-reg")


def free_monoid_module(E, X):
    """E (x) X with action on the left factor."""
    dx = X.dim
    carrier = Obj(VECTQ, tuple((e, x) for e in E.carrier.basis for x in X.basis))

    def act(e, m):
        a, x = divmod(m, dx)
        return {b * dx + x: c for b, c in E.mult(e, a).items()}

    return MonoidModule(E, carrier, act, name=f"{E.name}x{X}")


def check_module_map(M, N, f: Morphism):
    """f commutes with the actions of every monoid basis element."""
    E = M.monoid
    for e in range(E.dim):
        for m in range(M.dim):
            if f.apply(M.act(e, m)) != N.act_vec({e: 1}, f.data[m]):
                return Violation("module map", "equivariance", {"e": e, "m": m})
    return Certificate("module map", E.dim * M.dim)
