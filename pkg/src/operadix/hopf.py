"""Hopf operads, bialgebras over them, and the Hopf structure they induce on P_A.

Tensor squares are indexed the Kronecker way: basis pair (i, j) of V (x) V
sits at position i * dim V + j.  Counits are scalar-valued.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebras import Algebra, AlgebraMap, check_algebra_map, group_algebra_c2, initial_algebra
from .base_cat import VECTQ, Obj
from .checks import Certificate, Violation
from .enveloping import env_algebra, env_operad, induced_map
from .errors import SchemaError
from .linalg import lincomb, vaxpy
from .monoids import MonoidMap, check_monoid_map, tensor_monoid
from .operads import (OperadMorphism, TensorOperad, UAss, UCom, check_operad_morphism)


def _kron(u, v, d):
    return {a * d + b: x * y for a, x in u.items() for b, y in v.items()}


def _apply_left(delta, w, d):
    """(delta (x) id)(w) for w in V (x) V; result indexed in V^(x)3."""
    out = {}
    for t, c in w.items():
        i, j = divmod(t, d)
        for s, e in delta(i).items():
            vaxpy(out, {s * d + j: 1}, c * e)
    return out


def _apply_right(delta, w, d):
    out = {}
    for t, c in w.items():
        i, j = divmod(t, d)
        for s, e in delta(j).items():
            vaxpy(out, {i * d * d + s: 1}, c * e)
    return out


def check_comonoid(d, delta, counit, name="C"):
    """Coassociativity and both counit laws on the d basis vectors."""
    count = 0
    for i in range(d):
        w = delta(i)
        count += 1
        if _apply_left(delta, w, d) != _apply_right(delta, w, d):
            return Violation(name, "coassociativity", {"basis": i})
        left, right = {}, {}
        for t, c in w.items():
            a, b = divmod(t, d)
            vaxpy(left, {b: 1}, c * counit(a))
            vaxpy(right, {a: 1}, c * counit(b))
        count += 1
        if left != {i: 1} or right != {i: 1}:
            return Violation(name, "counit", {"basis": i})
    return Certificate(name, count)


class HopfOperad:
    """An operad with layerwise comultiplication delta(n, b) into P(n) (x) P(n)
    and counit(n, b) in Q."""

    def __init__(self, operad, delta, counit, name=None):
        self.operad = operad
        self._delta = delta
        self._counit = counit
        self._cache = {}
        self.name = name or f"Hopf({operad.name})"

    @property
    def max_arity(self):
        return self.operad.max_arity

    def delta(self, n, b):
        key = (n, b)
        out = self._cache.get(key)
        if out is None:
            out = self._delta(n, b)
            self._cache[key] = out
        return out

    def counit(self, n, b):
        return self._counit(n, b)

    def delta_vec(self, n, v):
        return lincomb((c, self.delta(n, b)) for b, c in v.items())

    def counit_vec(self, n, v):
        return sum((c * self.counit(n, b) for b, c in v.items()), 0)

    def square(self):
        return TensorOperad(self.operad, self.operad)

    def delta_morphism(self):
        return OperadMorphism(self.operad, self.square(), self.delta, name="Delta")

    def counit_morphism(self):
        def fn(n, b):
            e = self.counit(n, b)
            return {0: e} if e else {}
        return OperadMorphism(self.operad, UCom(self.operad.max_arity), fn, name="e")


def ucom_hopf(P):
    """uCom with every layer the unit comonoid."""
    if not isinstance(P, UCom):
        raise SchemaError("ucom_hopf expects uCom")
    return HopfOperad(P, lambda n, b: {0: 1}, lambda n, b: 1)


def uass_hopf(P):
    """uAss with sigma -> sigma (x) sigma, every permutation grouplike."""
    if not isinstance(P, UAss):
        raise SchemaError("uass_hopf expects uAss")
    return HopfOperad(P, lambda n, b: {b * P.dim(n) + b: 1}, lambda n, b: 1)


def hopf_for(P):
    if isinstance(P, UCom):
        return ucom_hopf(P)
    if isinstance(P, UAss):
        return uass_hopf(P)
    raise SchemaError(f"no Hopf structure known for {P.name}")


def check_hopf_operad(H, max_arity=None):
    """Layerwise comonoids whose structure maps are operad morphisms."""
    P = H.operad
    N = P.max_arity if max_arity is None else max_arity
    count = 0
    for n in range(N + 1):
        cert = check_comonoid(P.dim(n), lambda b, n=n: H.delta(n, b),
                              lambda b, n=n: H.counit(n, b), name=f"{H.name}({n})")
        if not cert:
            return cert
        count += cert.checked
    for f in (H.delta_morphism(), H.counit_morphism()):
        cert = check_operad_morphism(f, max_arity=N)
        if not cert:
            return cert
        count += cert.checked
    return Certificate(H.name, count)


# -- algebras over a Hopf operad ------------------------------------------------

def tensor_algebra(H, A, B):
    """A (x) B with gamma(p; a_i (x) b_i) = sum gamma(p'; a) (x) gamma(p''; b)."""
    P = H.operad
    dB = B.dim
    carrier = Obj(VECTQ, tuple((a, b) for a in A.carrier.basis for b in B.carrier.basis))

    def action(n, p, args):
        pairs = [divmod(t, dB) for t in args]
        xs = [a for a, _ in pairs]
        ys = [b for _, b in pairs]
        out = {}
        for q, c in H.delta(n, p).items():
            q1, q2 = divmod(q, P.dim(n))
            vaxpy(out, _kron(A.gamma(n, q1, xs), B.gamma(n, q2, ys), dB), c)
        return out

    top = min(A.max_arity, B.max_arity)
    return Algebra(P, carrier, action, max_arity=top, name=f"{A.name}x{B.name}")


def unit_algebra(H):
    """Q with gamma(p; 1, ..., 1) = counit(p)."""
    def action(n, p, args):
        e = H.counit(n, p)
        return {0: e} if e else {}
    return Algebra(H.operad, Obj(VECTQ, ("1",)), action, name="I")


@dataclass
class Bialgebra:
    """A P-algebra with comultiplication delta(a) in A (x) A and counit(a) in Q."""
    hopf: HopfOperad
    algebra: Algebra
    delta_fn: object
    counit_fn: object

    def delta(self, a):
        return self.delta_fn(a)

    def counit(self, a):
        return self.counit_fn(a)

    def delta_vec(self, v):
        return lincomb((c, self.delta(a)) for a, c in v.items())

    def counit_vec(self, v):
        return sum((c * self.counit(a) for a, c in v.items()), 0)


def check_bialgebra(Bi, max_arity=3):
    """Comonoid axioms and both structure maps being algebra maps."""
    A, H = Bi.algebra, Bi.hopf
    cert = check_comonoid(A.dim, Bi.delta, Bi.counit, name=f"{A.name} coalgebra")
    if not cert:
        return cert
    count = cert.checked
    AA = tensor_algebra(H, A, A)
    I = unit_algebra(H)
    N = min(max_arity, A.max_arity)
    for f in (AlgebraMap(A, AA, Bi.delta, name="Delta_A"),
              AlgebraMap(A, I, lambda a: {0: Bi.counit(a)} if Bi.counit(a) else {}, name="e_A")):
        cert = check_algebra_map(f, max_arity=N)
        if not cert:
            return cert
        count += cert.checked
    return Certificate(f"{A.name} bialgebra", count)


def group_bialgebra_c2(H):
    """Q[C2] with both basis elements grouplike."""
    A = group_algebra_c2(H.operad)
    return Bialgebra(H, A, lambda a: {a * 2 + a: 1}, lambda a: 1)


def trivial_bialgebra(H):
    return Bialgebra(H, unit_algebra(H), lambda a: {0: 1}, lambda a: 1)


def initial_bialgebra(H):
    """P(0) with the arity-0 layer of the Hopf structure."""
    return Bialgebra(H, initial_algebra(H.operad), lambda c: H.delta(0, c),
                     lambda c: H.counit(0, c))


# -- the canonical map P_{A (x) B} -> P_A (x) P_B ---------------------------------

def _split(env, zs, dB):
    """Expand generator values of A (x) B into (coef, as, bs) triples."""
    vals = [list(env.gen_value(z).items()) for z in zs]
    for combo in product(*vals):
        coef = 1
        xs, ys = [], []
        for t, c in combo:
            coef *= c
            a, b = divmod(t, dB)
            xs.append({a: 1})
            ys.append({b: 1})
        yield coef, xs, ys


def canonical_map(H, env_AB, env_A, env_B):
    """[p; a_1 (x) b_1, ...] -> sum [p'; a] (x) [p''; b] over delta(p)."""
    P = H.operad
    T = TensorOperad(env_A.operad, env_B.operad)
    dB = env_B.algebra.dim
    S = env_AB.operad

    def fn(n, b):
        k, p, zs = S.label(n, b)
        out = {}
        for q, c in H.delta(n + k, p).items():
            q1, q2 = divmod(q, P.dim(n + k))
            for coef, xs, ys in _split(env_AB, zs, dB):
                u = env_A.embed(n, k, {q1: 1}, xs)
                v = env_B.embed(n, k, {q2: 1}, ys)
                vaxpy(out, T.pair(n, u, v), c * coef)
        return out

    return OperadMorphism(S, T, fn, name="can")


def tensor_envelopes(H, A, B, K, max_arity=1, stabilization=False):
    """(env of A (x) B, env of A, env of B, canonical map) at a common cap."""
    P = H.operad
    kw = dict(max_arity=max_arity, route="canonical", check=False, stabilization=stabilization)
    env_A = env_operad(P, A, K, **kw)
    env_B = env_A if B is A else env_operad(P, B, K, **kw)
    env_AB = env_operad(P, tensor_algebra(H, A, B), K, **kw)
    return env_AB, env_A, env_B, canonical_map(H, env_AB, env_A, env_B)


def env_counit(H, env, counit):
    """P_A -> uCom: [p; xs] -> e(p) * prod counit(x)."""
    S = env.operad

    def fn(n, b):
        k, p, xs = S.label(n, b)
        e = H.counit(n + k, p)
        for x in xs:
            e *= counit(env.gen_value(x))
        return {0: e} if e else {}

    return OperadMorphism(S, UCom(S.max_arity), fn, name="e_A")


def tensor_morphism(F, G, source=None):
    """F (x) G between tensor operads (Kronecker indexing on both sides)."""
    S = source or TensorOperad(F.source, G.source)
    T = TensorOperad(F.target, G.target)

    def fn(n, b):
        a, c = divmod(b, G.source.dim(n))
        return T.pair(n, F(n, a), G(n, c))

    return OperadMorphism(S, T, fn, name=f"{F.name}x{G.name}")


def collapse_check(H, env_AB, env_A, env_B, can, counit_B, max_arity=1):
    """(id (x) e_B) . can equals the map induced by a (x) b -> counit_B(b) a."""
    dB = env_B.algebra.dim
    eB = env_counit(H, env_B, counit_B)
    PA = env_A.operad
    lhs = OperadMorphism(env_AB.operad, PA, lambda n, b: _collapse(can(n, b), eB, n, PA, env_B))
    rhs = induced_map(env_AB, env_A, lambda n, p: {p: 1},
                      lambda t: {t // dB: counit_B({t % dB: 1})} if counit_B({t % dB: 1}) else {})
    count = 0
    for n in range(max_arity + 1):
        for b in range(env_AB.operad.dim(n)):
            count += 1
            if lhs(n, b) != rhs(n, b):
                return Violation("collapse", "counit collapse", {"n": n, "b": b})
    return Certificate("collapse", count)


def _collapse(w, eB, n, PA, env_B):
    d = env_B.operad.dim(n)
    out = {}
    for t, c in w.items():
        a, b = divmod(t, d)
        e = eB(n, b).get(0, 0)
        if e:
            vaxpy(out, {a: 1}, c * e)
    return out


def naturality_check(H, f, B, K, max_arity=1):
    """can . P_{f (x) id} = (P_f (x) id) . can for an algebra map f: A -> A'."""
    A, A2 = f.source, f.target
    env_AB, env_A, env_B, can = tensor_envelopes(H, A, B, K, max_arity)
    env_A2B, env_A2, _, can2 = tensor_envelopes(H, A2, B, K, max_arity)
    dB = B.dim
    ident = lambda n, p: {p: 1}  # noqa: E731
    top = induced_map(env_AB, env_A2B, ident,
                      lambda t: _kron(f(t // dB), {t % dB: 1}, dB), name="P(fxid)")
    Pf = induced_map(env_A, env_A2, ident, lambda a: f(a), name="P(f)")
    idB = OperadMorphism(env_B.operad, env_B.operad, lambda n, b: {b: 1}, name="id")
    side = tensor_morphism(Pf, idB, source=can.target)
    count = 0
    for n in range(max_arity + 1):
        for b in range(env_AB.operad.dim(n)):
            count += 1
            if can2.apply(n, top(n, b)) != side.apply(n, can(n, b)):
                return Violation("naturality", "square", {"n": n, "b": b})
    return Certificate("naturality", count)


# -- Hopf structure on P_A and bialgebra structure on Env ------------------------

@dataclass
class EnvHopf:
    bialgebra: Bialgebra
    env: object
    env_square: object
    delta: OperadMorphism      # P_A -> P_A (x) P_A
    counit: OperadMorphism     # P_A -> uCom
    hopf: HopfOperad
    monoid: object = None      # Env_P(A)
    certificate: object = None

    def env_delta(self, u):
        return self.delta(1, u)

    def env_counit(self, u):
        return self.counit(1, u).get(0, 0)


def env_hopf(Bi, K, max_arity=1, check=True):
    """Delta on P_A as P_A -> P_{A (x) A} -> P_A (x) P_A, with its counit."""
    H, A = Bi.hopf, Bi.algebra
    if check:
        cert = check_bialgebra(Bi, max_arity=min(3, A.max_arity))
        if not cert:
            raise SchemaError(f"invalid bialgebra input: {cert}")
    env_AA, env_A, _, can = tensor_envelopes(H, A, A, K, max_arity, stabilization=True)
    first = induced_map(env_A, env_AA, lambda n, p: {p: 1},
                        lambda x: Bi.delta_vec({x: 1}), name="P(Delta_A)")
    delta = first.then(can)
    counit = env_counit(H, env_A, Bi.counit_vec)
    PA = env_A.operad
    hop = HopfOperad(PA, delta, lambda n, b: counit(n, b).get(0, 0), name=f"Hopf({PA.name})")
    out = EnvHopf(Bi, env_A, env_AA, delta, counit, hop)
    if PA.max_arity >= 1:
        out.monoid = env_algebra(env_A)
    if check:
        out.certificate = check_env_hopf(out)
        if not out.certificate:
            raise SchemaError(f"induced Hopf structure fails: {out.certificate}")
    return out


def check_env_hopf(eh):
    """Hopf axioms on P_A in range, then the bialgebra axioms on Env."""
    cert = check_hopf_operad(eh.hopf)
    if not cert:
        return cert
    count = cert.checked
    if eh.monoid is not None:
        c2 = check_env_bialgebra(eh)
        if not c2:
            return c2
        count += c2.checked
    return Certificate("P_A Hopf", count)


def check_env_bialgebra(eh):
    """Delta(uv) = Delta(u) Delta(v) and e(uv) = e(u) e(v) on basis pairs of Env."""
    E = eh.monoid
    EE = tensor_monoid(E, E)
    d = E.dim
    cert = check_comonoid(d, eh.env_delta, eh.env_counit, name="Env coalgebra")
    if not cert:
        return cert
    count = cert.checked
    count += 1
    if eh.delta.apply(1, E.unit) != EE.unit or sum(eh.env_counit(u) * c for u, c in E.unit.items()) != 1:
        return Violation("Env bialgebra", "unit", {})
    for u, v in product(range(d), repeat=2):
        count += 1
        uv = E.mult(u, v)
        if eh.delta.apply(1, uv) != EE.times(eh.env_delta(u), eh.env_delta(v)):
            return Violation("Env bialgebra", "multiplicativity", {"u": u, "v": v})
        if sum(c * eh.env_counit(w) for w, c in uv.items()) != eh.env_counit(u) * eh.env_counit(v):
            return Violation("Env bialgebra", "counit multiplicativity", {"u": u, "v": v})
    return Certificate("Env bialgebra", count)


def match_bialgebra(eh, f: MonoidMap):
    """(f (x) f) Delta_A = Delta_Env f and e_Env f = e_A for f: A -> Env."""
    Bi = eh.bialgebra
    d = eh.monoid.dim
    count = 0
    for a in range(Bi.algebra.dim):
        count += 1
        lhs = {}
        for t, c in Bi.delta(a).items():
            x, y = divmod(t, Bi.algebra.dim)
            vaxpy(lhs, _kron(f(x), f(y), d), c)
        fa = f(a)
        if lhs != eh.delta.apply(1, fa):
            return Violation("bialgebra match", "comultiplication", {"a": a})
        if sum(c * eh.env_counit(u) for u, c in fa.items()) != Bi.counit(a):
            return Violation("bialgebra match", "counit", {"a": a})
    return Certificate("bialgebra match", count)


def canonical_monoid_map(env_AB, env_A, env_B, can):
    """The arity-1 part Env(A (x) B) -> Env(A) (x) Env(B), checked multiplicative."""
    E = env_algebra(env_AB)
    T = tensor_monoid(env_algebra(env_A), env_algebra(env_B))
    f = MonoidMap(E, T, lambda u: can(1, u), name="can_1")
    return f, check_monoid_map(f)
