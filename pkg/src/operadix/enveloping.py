"""Enveloping operads P_A and enveloping algebras Env_P(A) = P_A(1).

P_A(n) is computed as the quotient of the free-formula space
(+)_{k<=K} P(n+k) (x)_{Sigma_k} X^(x)k by the operadic ideal generated by the
relations of a presentation of A.  Two presentations are available: the
one A carries (free or presented algebras) and the canonical one built from
the full multiplication table of a finite A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import perms
from .algebras import Algebra, AlgebraMap, canonical_presentation, unit_term
from .ambient import Ambient, Presentation, relation_weight
from .base_cat import VECTQ, Morphism, Obj
from .checks import Certificate, Violation
from .errors import SchemaError, StabilizationError, TruncationError
from .linalg import Quotient, lincomb
from .monoids import Monoid, MonoidMap, check_monoid
from .operads import Operad, OperadMorphism, check_operad_axioms, check_operad_morphism


def _reorder(n, k, m, l, i):
    """tau with (p o_i q) . tau in the label order [reals, xs, ys].

    Natural inputs of p o_i q, p in P(n+k), q in P(m+l): a_1..a_{i-1},
    b_1..b_m, y_1..y_l, a_{i+1}..a_n, x_1..x_k.  tau[r-1] is the target
    position of the input at natural position r.
    """
    R = n + m - 1
    tau = []
    for r in range(1, n + k + m + l):
        if r < i + m:
            tau.append(r)
        elif r < i + m + l:
            tau.append(R + k + (r - i - m) + 1)
        else:
            tau.append(r - l)
    return tuple(tau)


class EnvOperad(Operad):
    """P_A truncated at generator weight K, over base operad P."""

    def __init__(self, P, pres: Presentation, K, max_arity=None, name=None):
        self.base = P
        self.pres = pres
        self.d = pres.ngens
        self.K = K if self.d else 0
        w0 = any(relation_weight(r) == 0 for r in pres.relations)
        top = P.max_arity - self.K - (1 if w0 else 0)
        if max_arity is None:
            max_arity = top
        if max_arity > top or max_arity < 0:
            raise TruncationError(
                f"P_A up to arity {max_arity} with cap {K} needs P beyond arity {P.max_arity}")
        # arity 0-only envelopes are allowed; Operad wants N >= 1
        super().__init__(max(max_arity, 1), name or f"{P.name}_A")
        self.max_arity = max_arity
        self.permutation_basis = False
        self._data = {}
        self._spills = {}
        self.overflow = []

    def check_arity(self, n):
        if n < 0 or n > self.max_arity:
            raise TruncationError(f"{self.name}: arity {n} outside 0..{self.max_arity}")

    def data(self, n):
        out = self._data.get(n)
        if out is None:
            self.check_arity(n)
            amb = Ambient(self.base, n, self.d, self.K)
            merges, rels = amb.coinvariance()
            rels += list(amb.ideal_relations(self.pres.relations))
            quo = Quotient(len(amb), merges=merges, relations=rels)
            out = (amb, quo)
            self._data[n] = out
        return out

    def label(self, n, b):
        amb, quo = self.data(n)
        return amb.labels[quo.kept[b]]

    def project(self, n, v):
        return self.data(n)[1].project(v)

    def _basis(self, n):
        amb, quo = self.data(n)
        return tuple(amb.labels[i] for i in quo.kept)

    def _act(self, n, j, b):
        amb, quo = self.data(n)
        k, p, xs = amb.labels[quo.kept[b]]
        return quo.project(amb.vec(k, self.base.act(n + k, j, p), xs))

    def _compose(self, n, m, i, a, b):
        k, p, xs = self.label(n, a)
        l, q, ys = self.label(m, b)
        P = self.base
        R = n + m - 1
        if k + l > self.K:
            return self._spill_compose(n, m, i, (k, p, xs), (l, q, ys))
        r = P.compose(n + k, m + l, i, p, q)
        r = P.act_perm(R + k + l, _reorder(n, k, m, l, i), r)
        amb, quo = self.data(R)
        return quo.project(amb.vec(k + l, r, xs + ys))

    def _spill(self, K2, R):
        """(cap-K2 envelope, inverse of the comparison of kept labels) at arity R,
        or a string saying why the larger cap cannot be used."""
        key = (K2, R)
        if key in self._spills:
            return self._spills[key]
        w0 = any(relation_weight(r) == 0 for r in self.pres.relations)
        need = R + K2 + (1 if w0 else 0)
        if need > self.base.max_arity:
            out = f"needs the base operad to arity {need}"
        else:
            big = EnvOperad(self.base, self.pres, K2, max_arity=R)
            amb, quo = big.data(R)
            cols = [quo.project(amb.vec(k, {p: 1}, xs)) for (k, p, xs) in self.basis(R)]
            cmp = Morphism(Obj(VECTQ, self.basis(R)), Obj(VECTQ, big.basis(R)), cols)
            out = (big, cmp.inverse()) if cmp.is_iso() else "unstable"
        self._spills[key] = out
        return out

    def _spill_compose(self, n, m, i, left, right):
        # the composite has weight above K: compute it at a larger cap and
        # read it back through the (invertible) comparison of kept labels
        (k, p, xs), (l, q, ys) = left, right
        R = n + m - 1
        spill = self._spill(k + l, R)
        if isinstance(spill, str):
            self.overflow.append((n, m, i, left, right))
            if not self.pres.relations:
                # weight above K spans an operad ideal in the free case
                return {}
            if spill == "unstable":
                raise StabilizationError(
                    f"{self.name}: composite of weight {k + l} at arity {R} is not determined "
                    f"at cap {self.K}; the truncation has not stabilized")
            raise TruncationError(f"{self.name}: composite of weight {k + l} at arity {R} {spill}")
        big, back = spill
        P = self.base
        r = P.compose(n + k, m + l, i, p, q)
        r = P.act_perm(R + k + l, _reorder(n, k, m, l, i), r)
        amb, quo = big.data(R)
        return back.apply(quo.project(amb.vec(k + l, r, xs + ys)))

    def _unit(self):
        return self.eta(1, self.base.unit())

    def eta(self, n, pvec):
        """eta_A: P(n) -> P_A(n), p -> [p;]."""
        amb, quo = self.data(n)
        return quo.project(amb.vec(0, pvec, ()))

    def generator(self, x):
        """[id; x] in P_A(0)."""
        amb, quo = self.data(0)
        return quo.project(amb.vec(1, self.base.unit(), (x,)))

    def plug(self, n, pvec, zvecs):
        """pvec in P_A(n+k) with elements of P_A(0) plugged into its last k inputs."""
        e = self.unit()
        return self.gamma(pvec, [(1, e)] * n + [(0, z) for z in zvecs])

    def profile(self):
        return [self.dim(n) for n in range(self.max_arity + 1)]


@dataclass
class EnvelopingOperad:
    base: Operad
    algebra: Algebra
    operad: EnvOperad
    route: str
    K: int
    eta_bar_matrix: Morphism = None
    profile: list = field(default_factory=list)
    profile_next: list = None
    stabilized: bool = None
    certificate: object = None

    def eta(self, n, pvec):
        return self.operad.eta(n, pvec)

    def eta_morphism(self):
        PA = self.operad
        return OperadMorphism(self.base, PA, lambda n, p: PA.eta(n, {p: 1}), name="eta")

    def eta_bar(self, avec):
        return lincomb((c, self.eta_bar_matrix.data[a]) for a, c in avec.items())

    def gen_value(self, x):
        """Element of A named by generator x of the presentation in use."""
        if self.route == "canonical":
            return {x: 1}
        return self.algebra.generator(x)

    def embed(self, n, k, pvec, bvecs):
        """[p; b_1, ..., b_k] in P_A(n) for p in P(n+k) and elements b_j of A."""
        T = self.operad
        if self.route == "canonical" and k <= T.K:
            amb, quo = T.data(n)
            out = {}
            for combo in product(*[list(b.items()) for b in bvecs]):
                coef = 1
                bs = []
                for b, c in combo:
                    coef *= c
                    bs.append(b)
                amb.vec(k, pvec, bs, coef, out)
            return quo.project(out)
        return T.plug(n, self.eta(n + k, pvec), [self.eta_bar(b) for b in bvecs])

    def summary(self):
        return {"route": self.route, "K": self.K, "profile": self.profile,
                "profile_next": self.profile_next, "stabilized": self.stabilized,
                "overflow": len(self.operad.overflow)}


def _eta_bar(A, PA, route):
    """A -> P_A(0): the label of a (presented route) or [id; a] (canonical)."""
    cols = []
    amb, quo = PA.data(0)
    for a in range(A.dim):
        if route == "canonical":
            cols.append(PA.generator(a))
        else:
            k, p, xs = A.carrier.basis[a]
            if k > PA.K:
                raise TruncationError("algebra weight exceeds envelope cap")
            cols.append(quo.project(amb.vec(k, {p: 1}, xs)))
    return Morphism(A.carrier, Obj(VECTQ, PA.basis(0)), cols)


def _presentation_for(A, K, route):
    if route == "auto":
        route = "presentation" if A.presentation is not None else "canonical"
    if route == "presentation":
        if A.presentation is None:
            raise SchemaError("algebra has no presentation; use the canonical route")
        return route, A.presentation
    if route == "canonical":
        return route, canonical_presentation(A, K)
    raise SchemaError(f"unknown route {route!r}")


def env_operad(P, A, K, max_arity=None, route="auto", check=True, check_arity=None,
               stabilization=True):
    """P_A at summand cap K with its dimension profile at K and K+1."""
    if A.operad is not P and A.operad.name != P.name:
        raise SchemaError("algebra is over a different operad")
    route, pres = _presentation_for(A, K, route)
    PA = EnvOperad(P, pres, K, max_arity=max_arity)
    env = EnvelopingOperad(P, A, PA, route, K)
    env.eta_bar_matrix = _eta_bar(A, PA, route)
    if not env.eta_bar_matrix.is_iso():
        raise StabilizationError(
            f"A -> P_A(0) is not invertible at cap {K} (dims {A.dim} vs {PA.dim(0)})")
    env.profile = PA.profile()
    if stabilization:
        try:
            route2, pres2 = _presentation_for(A, K + 1, route)
            if route2 == "presentation" and pres2.weight_cap < K + 1:
                pres2 = Presentation(pres2.operad, pres2.gens, pres2.relations, K + 1)
            PA2 = EnvOperad(P, pres2, K + 1, max_arity=PA.max_arity)
            env.profile_next = PA2.profile()
            env.stabilized = env.profile_next == env.profile
        except TruncationError:
            env.profile_next, env.stabilized = None, None
    if check:
        top = PA.max_arity if check_arity is None else min(check_arity, PA.max_arity)
        cert = check_operad_axioms(PA, max_arity=top) if top >= 1 else Certificate(PA.name)
        if not cert:
            raise SchemaError(f"computed envelope violates the operad axioms: {cert}")
        env.certificate = cert
    return env


def env_algebra(env):
    """Env_P(A) = P_A(1) with composition as multiplication."""
    PA = env.operad
    if PA.max_arity < 1:
        raise TruncationError("envelope not computed in arity 1")
    E = Monoid(Obj(VECTQ, PA.basis(1)), PA.unit(),
               lambda i, j: PA.compose(1, 1, 1, i, j), name=f"Env({env.algebra.name})")
    cert = check_monoid(E)
    if not cert:
        raise SchemaError(f"enveloping algebra is not a monoid: {cert}")
    return E


# -- free case, lean orbit implementation ----------------------------------------

class FreeEnvOperad(Operad):
    """P_{F(X)} via orbit representatives (permutation-basis operads only)."""

    def __init__(self, P, d, K, max_arity=None):
        if not P.permutation_basis:
            raise SchemaError("orbit implementation needs a permutation basis")
        self.base, self.d, self.K = P, d, (K if d else 0)
        top = P.max_arity - self.K
        max_arity = top if max_arity is None else max_arity
        if max_arity > top:
            raise TruncationError("free envelope arity exceeds the operad truncation")
        super().__init__(max(max_arity, 1), f"{P.name}_F")
        self.max_arity = max_arity
        self._orbits = {}
        self.overflow = []

    def check_arity(self, n):
        if n < 0 or n > self.max_arity:
            raise TruncationError(f"{self.name}: arity {n} outside 0..{self.max_arity}")

    def orbits(self, n):
        out = self._orbits.get(n)
        if out is not None:
            return out
        P, d = self.base, self.d
        labels = [(k, p, xs) for k in range(self.K + 1) for p in range(P.dim(n + k))
                  for xs in product(range(d), repeat=k)]
        rep = {}
        reps = []
        for lab in labels:
            if lab in rep:
                continue
            orbit = [lab]
            rep[lab] = lab
            stack = [lab]
            while stack:
                k, p, xs = stack.pop()
                for j in range(1, k):
                    (b, _), = P.act(n + k, n + j, p).items()
                    ys = list(xs)
                    ys[j - 1], ys[j] = ys[j], ys[j - 1]
                    nxt = (k, b, tuple(ys))
                    if nxt not in rep:
                        rep[nxt] = lab
                        orbit.append(nxt)
                        stack.append(nxt)
            reps.append(lab)
        pos = {lab: q for q, lab in enumerate(reps)}
        out = (reps, {lab: pos[r] for lab, r in rep.items()})
        self._orbits[n] = out
        return out

    def _basis(self, n):
        return tuple(self.orbits(n)[0])

    def _canon(self, n, k, pvec, xs):
        _, where = self.orbits(n)
        out = {}
        for b, c in pvec.items():
            t = where[(k, b, tuple(xs))]
            out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c}

    def _act(self, n, j, b):
        k, p, xs = self.orbits(n)[0][b]
        return self._canon(n, k, self.base.act(n + k, j, p), xs)

    def _compose(self, n, m, i, a, b):
        k, p, xs = self.orbits(n)[0][a]
        l, q, ys = self.orbits(m)[0][b]
        if k + l > self.K:
            self.overflow.append((n, m, i, a, b))
            return {}
        # name every input, substitute, then read off the reordering
        outer = [("a", r) for r in range(1, n + 1)] + [("x", r) for r in range(1, k + 1)]
        inner = [("b", r) for r in range(1, m + 1)] + [("y", r) for r in range(1, l + 1)]
        natural = outer[:i - 1] + inner + outer[i:]
        reals = [v for v in natural if v[0] in "ab"]
        target = reals + [v for v in natural if v[0] == "x"] + [v for v in natural if v[0] == "y"]
        where = {v: t for t, v in enumerate(target, 1)}
        tau = tuple(where[v] for v in natural)
        P = self.base
        r = P.act_perm(len(natural), tau, P.compose(n + k, m + l, i, p, q))
        return self._canon(n + m - 1, k + l, r, xs + ys)

    def _unit(self):
        return self._canon(1, 0, self.base.unit(), ())


def env_operad_free(P, X, K, max_arity=None):
    """Free-algebra envelope from the closed formula."""
    d = X.dim if isinstance(X, Obj) else int(X)
    return FreeEnvOperad(P, d, K, max_arity=max_arity)


def compare_envelopes(E1, E2, max_arity):
    """Equal bases and equal structure constants arity by arity."""
    count = 0
    for n in range(max_arity + 1):
        if E1.basis(n) != E2.basis(n):
            return Violation("envelopes", "basis", {"n": n, "dims": (E1.dim(n), E2.dim(n))})
        for b in range(E1.dim(n)):
            for j in range(1, n):
                count += 1
                if E1.act(n, j, b) != E2.act(n, j, b):
                    return Violation("envelopes", "action", {"n": n, "j": j, "b": b})
    if E1.unit() != E2.unit():
        return Violation("envelopes", "unit", {})
    for n in range(1, max_arity + 1):
        for m in range(0, max_arity - n + 2):
            for i in range(1, n + 1):
                for a in range(E1.dim(n)):
                    for b in range(E1.dim(m)):
                        count += 1
                        if E1.compose(n, m, i, a, b) != E2.compose(n, m, i, a, b):
                            return Violation("envelopes", "composition",
                                             {"n": n, "m": m, "i": i, "a": a, "b": b})
    return Certificate("envelopes", count)


# -- induced maps ------------------------------------------------------------------

def induced_map(source, target, phi, gen, name="F"):
    """Operad map source -> target on kept labels (k, p, xs): [p; xs] goes to
    [phi(p); gen(x_1), ..., gen(x_k)], where phi(n, p) is a vector of the
    target's base operad and gen(x) an element of the target's algebra."""
    S = source.operad

    def fn(n, b):
        k, p, xs = S.label(n, b)
        return target.embed(n, k, phi(n + k, p), [gen(x) for x in xs])

    return OperadMorphism(S, target.operad, fn, name=name)


def env_functor(env_A, env_B, phi, psi, arity=1):
    """(phi: P -> Q, psi: A -> phi*B) induce P_A -> Q_B and Env(A) -> Env(B)."""
    F = induced_map(env_A, env_B, phi, lambda x: psi.apply(env_A.gen_value(x)), name="env(phi,psi)")
    EA, EB = env_algebra(env_A), env_algebra(env_B)
    return F, MonoidMap(EA, EB, lambda a: F(1, a), name="Env(phi,psi)")


def operad_map_fn(f):
    """phi(n, p) callable from an OperadMorphism (or None for the identity)."""
    if f is None:
        return lambda n, p: {p: 1}
    return lambda n, p: f(n, p)


def check_pair_map(phi, psi, max_arity=None):
    """psi is an algebra map over phi: psi(gamma(p; a)) = gamma(phi p; psi a)."""
    from .algebras import check_algebra_map
    return check_algebra_map(psi, max_arity=max_arity, phi=operad_map_fn(phi))


# -- relative envelope ---------------------------------------------------------------

class PullbackAlgebra(Algebra):
    """B as an algebra over P_A through alpha: gamma([p; xs]; bs) = gamma_B(p; bs, alpha(xs))."""

    def __init__(self, env_A, B, alpha, max_arity=None):
        PA = env_A.operad
        self.env_A, self.B, self.alpha = env_A, B, alpha
        self._gens = [alpha.apply(env_A.gen_value(x)) for x in range(PA.d)]

        def action(n, u, args):
            k, p, xs = PA.label(n, u)
            return B.gamma_vec(n + k, {p: 1}, [{b: 1} for b in args] + [self._gens[x] for x in xs])

        top = PA.max_arity if max_arity is None else min(max_arity, PA.max_arity)
        super().__init__(PA, B.carrier, action, max_arity=top, name=f"{B.name}_alpha")


@dataclass
class RelativeEnvelope:
    env_A: EnvelopingOperad
    env_B: EnvelopingOperad
    env_rel: EnvelopingOperad
    forward: OperadMorphism   # P_B -> (P_A)_{B_alpha}
    backward: OperadMorphism  # (P_A)_{B_alpha} -> P_B
    arity: int
    certificate: object = None


def relative_env(P, A, B, alpha, K, K_rel=1, arity=1, K_B=None, check=True):
    """(P_A)_{B_alpha} and P_B with the maps induced by the universal properties."""
    K_B = K + K_rel if K_B is None else K_B
    env_A = env_operad(P, A, K, max_arity=arity + K_rel + 1, check=False, stabilization=False)
    B_alpha = PullbackAlgebra(env_A, B, alpha)
    env_rel = env_operad(env_A.operad, B_alpha, K_rel, max_arity=arity, route="canonical",
                         check=False, stabilization=False)
    env_B = env_operad(P, B, K_B, max_arity=arity, route="canonical", check=False,
                       stabilization=False)
    gens = [alpha.apply(env_A.gen_value(x)) for x in range(env_A.operad.d)]

    def back(n, b):
        # (k', [p; xs], bs) -> [p; bs, alpha(xs)]
        kk, u, bs = env_rel.operad.label(n, b)
        k, p, xs = env_A.operad.label(n + kk, u)
        return env_B.embed(n, kk + k, {p: 1}, [{y: 1} for y in bs] + [gens[x] for x in xs])

    backward = OperadMorphism(env_rel.operad, env_B.operad, back, name="G")
    forward = induced_map(env_B, env_rel, lambda n, p: env_A.eta(n, {p: 1}),
                          lambda b: {b: 1}, name="F")
    rel = RelativeEnvelope(env_A, env_B, env_rel, forward, backward, arity)
    if check:
        rel.certificate = check_relative(rel)
        if not rel.certificate:
            raise SchemaError(f"relative envelope comparison failed: {rel.certificate}")
    return rel


def check_relative(rel):
    F, G = rel.forward, rel.backward
    S, T = rel.env_B.operad, rel.env_rel.operad
    count = 0
    for n in range(rel.arity + 1):
        if S.dim(n) != T.dim(n):
            return Violation("relative envelope", "dimension", {"n": n, "dims": (S.dim(n), T.dim(n))})
        for b in range(S.dim(n)):
            count += 1
            if G.apply(n, F(n, b)) != {b: 1}:
                return Violation("relative envelope", "G.F = id", {"n": n, "b": b})
        for b in range(T.dim(n)):
            count += 1
            if F.apply(n, G(n, b)) != {b: 1}:
                return Violation("relative envelope", "F.G = id", {"n": n, "b": b})
    for f in (F, G):
        cert = check_operad_morphism(f, max_arity=rel.arity)
        if not cert:
            return cert
        count += cert.checked
    return Certificate("relative envelope", count)


# -- classical oracles ---------------------------------------------------------------

def algebra_monoid(A):
    """The associative algebra underlying a uAss- or uCom-algebra."""
    return Monoid(A.carrier, A.gamma(0, 0, ()), lambda i, j: A.gamma(2, 0, (i, j)), name=A.name)


def commutative_oracle(env):
    """Env of a uCom-algebra A is A itself: a -> [mu_2; a]."""
    A = env.algebra
    E = env_algebra(env)
    return MonoidMap(algebra_monoid(A), E,
                     lambda a: env.embed(1, 1, {0: 1}, [{a: 1}]), name="a->[mu2;a]")


def associative_oracle(env):
    """Env of a uAss-algebra A is A (x) A^op: a (x) b -> [x2 x1 x3; a, b],
    i.e. the word a . m . b."""
    from .monoids import opposite, tensor_monoid
    M = algebra_monoid(env.algebra)
    T = tensor_monoid(M, opposite(M))
    E = env_algebra(env)
    word = perms.perm_index(3)[(2, 1, 3)]
    d = M.dim

    def fn(t):
        a, b = divmod(t, d)
        return env.embed(1, 2, {word: 1}, [{a: 1}, {b: 1}])

    return MonoidMap(T, E, fn, name="a(x)b->[amb]")
