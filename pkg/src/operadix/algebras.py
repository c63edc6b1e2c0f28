"""Algebras over truncated operads: free, presented, explicit and checked."""

from __future__ import annotations

from itertools import product

from .ambient import Ambient, Presentation, relation_weight
from .base_cat import VECTQ, Morphism, Obj
from .checks import Certificate, Violation, cap_guard
from .errors import CapGuardError, DescentError, SchemaError, TruncationError
from .linalg import Quotient, lincomb, vaxpy
from .operads import UAss, UCom


class Algebra:
    """A carrier with actions gamma_n(p; a_1..a_n) on basis indices.

    ``action(n, p, args)`` returns a sparse vector over the carrier.
    Overflowing weight components (truncated algebras) are dropped and
    logged in ``overflow``.
    """

    def __init__(self, operad, carrier, action, max_arity=None, name="A"):
        self.operad = operad
        self.carrier = carrier
        self._action = action
        self.max_arity = operad.max_arity if max_arity is None else min(max_arity, operad.max_arity)
        self.name = name
        self.presentation = None
        self.overflow = []
        self._cache = {}

    @property
    def dim(self):
        return self.carrier.dim

    def gamma(self, n, p, args):
        if n > self.max_arity:
            raise TruncationError(f"{self.name}: action of arity {n} beyond {self.max_arity}")
        key = (n, p, tuple(args))
        out = self._cache.get(key)
        if out is None:
            out = self._action(n, p, key[2])
            self._cache[key] = out
        return out

    def gamma_vec(self, n, pvec, argvecs):
        out = {}
        supports = [list(v.items()) for v in argvecs]
        for p, c in pvec.items():
            for combo in product(*supports):
                coef = c
                idx = []
                for a, x in combo:
                    coef *= x
                    idx.append(a)
                vaxpy(out, self.gamma(n, p, idx), coef)
        return out

    def constant(self, p=0):
        return self.gamma(0, p, ())

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, over {self.operad.name})"


# -- free and presented ------------------------------------------------------

def free_composite(P, p, labels):
    """gamma(p; [p_1; xs_1], ..., [p_s; xs_s]) in free labels: (weight, pvec, xs)."""
    k = sum(lab[0] for lab in labels)
    pvec = P.gamma({p: 1}, [(lab[0], {lab[1]: 1}) for lab in labels])
    xs = tuple(x for lab in labels for x in lab[2])
    return k, pvec, xs


def _weight_tuples(pool, count, budget):
    """Tuples of `count` labels from pool (sorted by weight) with total weight <= budget."""
    if count == 0:
        yield ()
        return
    for lab in pool:
        if lab[0] > budget:
            break
        for rest in _weight_tuples(pool, count - 1, budget - lab[0]):
            yield (lab,) + rest


class PresentedAlgebra(Algebra):
    """Quotient of the weight-truncated free algebra by a saturated ideal."""

    def __init__(self, pres: Presentation, max_arity=None, saturate=True, name="A"):
        P, W, d = pres.operad, pres.weight_cap, pres.ngens
        amb = Ambient(P, 0, d, W)
        merges, rels = amb.coinvariance()
        quo = Quotient(len(amb), merges=merges, relations=rels)
        self.ambient = amb
        self.free_reps = [amb.labels[i] for i in quo.kept]
        self.rounds = 0
        if pres.relations:
            frontier = [amb.from_labels(r) for r in pres.relations]
            frontier = [v for v in frontier if quo.echelon.add(v)]
            while frontier and saturate:
                self.rounds += 1
                new = []
                for v in frontier:
                    for inst in self._instances(P, W, amb, v):
                        if quo.echelon.add(inst):
                            new.append(inst)
                frontier = new
            quo._finish()
        self.quotient = quo
        carrier = Obj(VECTQ, tuple(amb.labels[i] for i in quo.kept))
        super().__init__(P, carrier, self._act, max_arity=max_arity, name=name)
        self.presentation = pres
        self.weight_cap = W

    def _instances(self, P, W, amb, v, pool=None):
        """gamma_n(p; co-args with v in slot i), skipping overflowing instances."""
        terms = [(amb.labels[i], c) for i, c in v.items()]
        wmax = max(lab[0] for lab, _ in terms)
        pool = self.free_reps if pool is None else pool
        for n in range(1, min(P.max_arity, max(W, 1)) + 1):
            for co in _weight_tuples(pool, n - 1, W - wmax):
                for i in range(1, n + 1):
                    for p in range(P.dim(n)):
                        out = {}
                        for lab, c in terms:
                            args = co[:i - 1] + (lab,) + co[i - 1:]
                            k, pvec, xs = free_composite(P, p, args)
                            amb.vec(k, pvec, xs, c, out)
                        if out:
                            yield out

    def _act(self, n, p, args):
        amb, quo = self.ambient, self.quotient
        labels = [amb.labels[quo.kept[a]] for a in args]
        if sum(lab[0] for lab in labels) > self.weight_cap:
            self.overflow.append((n, p, tuple(args)))
            return {}
        k, pvec, xs = free_composite(self.operad, p, labels)
        return quo.project(amb.vec(k, pvec, xs))

    def weight(self, a):
        return self.carrier.basis[a][0]

    def project_labels(self, r):
        """Class of a free-label combination {(k, p, xs): c}."""
        return self.quotient.project(self.ambient.from_labels(r))

    def generator(self, x):
        """Class of the generator with index x."""
        P = self.operad
        return self.quotient.project(self.ambient.vec(1, P.unit(), (x,)))

    def check_descent(self):
        """Every relation row, inserted into any slot with any ambient
        co-arguments, must land in the relation span."""
        amb, quo = self.ambient, self.quotient
        pool = sorted(amb.labels)
        count = 0
        for piv, row in sorted(quo.echelon.rows.items()):
            for inst in self._instances(self.operad, self.weight_cap, amb, row, pool=pool):
                count += 1
                if not quo.is_zero(inst):
                    return Violation(self.name, "descent", {"row": amb.labels[piv]})
        return Certificate(self.name, count)


def free_algebra(P, X, W, max_arity=None):
    """Free P-algebra on X truncated at weight W."""
    if W < 0:
        raise SchemaError("weight cap must be nonnegative")
    A = PresentedAlgebra(Presentation(P, X, [], W), max_arity=max_arity, name=f"F({P.name})")
    return A


def algebra_from_presentation(pres, max_arity=None, check=False):
    A = PresentedAlgebra(pres, max_arity=max_arity)
    if check:
        cert = A.check_descent()
        if not cert:
            raise DescentError("action does not descend to the quotient", cert.witness)
    return A


def one_step_ideal_dim(pres):
    """Dimension of the presented carrier computed from the one-step ideal
    span{[p o_last q; xs, ys]} (no saturation loop)."""
    amb = Ambient(pres.operad, 0, pres.ngens, pres.weight_cap)
    merges, rels = amb.coinvariance()
    quo = Quotient(len(amb), merges=merges, relations=rels + list(amb.ideal_relations(pres.relations)))
    return len(quo)


# -- explicit algebras ---------------------------------------------------------

def unit_term(P, a, c=1):
    """Free-label combination of [id; a]."""
    return {(1, u, (a,)): c * e for u, e in P.unit().items()}


def canonical_presentation(A, K):
    """Generators = basis of A, relations [q; b] = [id; gamma(q; b)] for q of arity <= K."""
    P = A.operad
    d = A.dim
    rels = []
    for m in range(0, min(K, A.max_arity) + 1):
        for q in range(P.dim(m)):
            for bs in product(range(d), repeat=m):
                r = {(m, q, bs): 1}
                for a, c in A.gamma(m, q, bs).items():
                    for lab, e in unit_term(P, a, c).items():
                        r[lab] = r.get(lab, 0) - e
                r = {lab: c for lab, c in r.items() if c}
                if r:
                    rels.append(r)
    return Presentation(P, A.carrier, rels, K)


def associative_algebra(P, basis, mult, unit, name="A", check=True):
    """uAss- or uCom-algebra from a multiplication table on basis indices."""
    carrier = Obj(VECTQ, tuple(basis))
    d = carrier.dim
    table = {}
    for i in range(d):
        for j in range(d):
            table[(i, j)] = {a: c for a, c in dict(mult(i, j)).items() if c}
    unit = {a: c for a, c in dict(unit).items() if c}

    def times(u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                vaxpy(out, table[(i, j)], x * y)
        return out

    if isinstance(P, UAss):
        from .perms import all_perms

        def action(n, p, args):
            sigma = all_perms(n)[p]
            out = unit
            for s in sigma:
                out = times(out, {args[s - 1]: 1})
            return out
    elif isinstance(P, UCom):
        def action(n, p, args):
            out = unit
            for a in args:
                out = times(out, {a: 1})
            return out
    else:
        raise SchemaError("associative_algebra expects uAss or uCom")
    A = Algebra(P, carrier, action, name=name)
    A.table = table
    A.unit_vec = unit
    A.times = times
    if check:
        cert = check_algebra_axioms(A, max_arity=3)
        if not cert:
            raise SchemaError(f"table does not define a {P.name}-algebra: {cert}")
    return A


def dual_numbers(P):
    """Q[x]/(x^2) with basis 1, x."""
    def mult(i, j):
        return {i + j: 1} if i + j < 2 else {}
    return associative_algebra(P, ("1", "x"), mult, {0: 1}, name="Q[x]/x2")


def group_algebra_c2(P):
    """Q[C2] with basis 1, g and g^2 = 1."""
    return associative_algebra(P, ("1", "g"), lambda i, j: {(i + j) % 2: 1}, {0: 1}, name="Q[C2]")


def ground_algebra(P):
    return associative_algebra(P, ("1",), lambda i, j: {0: 1}, {0: 1}, name="Q")


def initial_algebra(P):
    """P(0) with action by composition with constants."""
    carrier = P.layer(0).carrier

    def action(n, p, args):
        return P.gamma({p: 1}, [(0, {c: 1}) for c in args])

    A = Algebra(P, carrier, action, name=f"{P.name}(0)")
    A.presentation = Presentation(P, Obj(VECTQ, ()), [], 0)
    return A


def zero_algebra(P):
    """The algebra on the zero object; it only exists when P(0) = 0."""
    if P.dim(0):
        raise SchemaError("the zero carrier admits no algebra structure when P(0) is nonzero")
    return Algebra(P, Obj(VECTQ, ()), lambda n, p, args: {}, name="0")


def cellular_extension(A, new_gens, attach=(), W=2):
    """A[u]: pushout of A along F(X) -> F(X) with generators basis(A) + new_gens.

    ``attach`` relations use generator indices 0..dim A - 1 for A's basis and
    dim A + j for the j-th new generator.  Returns (A[u], canonical map A -> A[u]).
    """
    P = A.operad
    base = canonical_presentation(A, W)
    gens = Obj(VECTQ, tuple(("a", b) for b in A.carrier.basis) + tuple(("u", g) for g in new_gens))
    pres = Presentation(P, gens, base.relations + [dict(r) for r in attach], W)
    Au = PresentedAlgebra(pres, name=f"{A.name}[u]")
    inc = AlgebraMap(A, Au, lambda a: Au.project_labels(unit_term(P, a)), name="incl")
    return Au, inc


# -- maps ----------------------------------------------------------------------

class AlgebraMap:
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
        return AlgebraMap(self.source, other.target, lambda a: other.apply(self(a)),
                          name=f"{other.name}.{self.name}")


def identity_map(A):
    return AlgebraMap(A, A, lambda a: {a: 1}, name="id")


def check_algebra_map(f, max_arity=None, phi=None):
    """f(gamma(p; a)) = gamma(phi(p); f(a)) on basis elements."""
    A, B = f.source, f.target
    N = min(A.max_arity, B.max_arity) if max_arity is None else max_arity
    count = 0
    for n in range(N + 1):
        for p in range(A.operad.dim(n)):
            pv = {p: 1} if phi is None else phi(n, p)
            for args in product(range(A.dim), repeat=n):
                count += 1
                lhs = f.apply(A.gamma(n, p, args))
                rhs = B.gamma_vec(n, pv, [f(a) for a in args])
                if lhs != rhs:
                    return Violation(f.name, "algebra map", {"n": n, "p": p, "args": args})
    return Certificate(f.name, count)


def free_map(FX, FY, f):
    """F(f): F(X) -> F(Y) for a linear map f: X -> Y (same operad and cap)."""
    P = FX.operad

    def fn(a):
        k, p, xs = FX.carrier.basis[a]
        out = {}
        for combo in product(*[list(f.data[x].items()) for x in xs]):
            coef = 1
            ys = []
            for y, c in combo:
                coef *= c
                ys.append(y)
            FY.ambient.vec(k, {p: 1}, ys, coef, out)
        return FY.quotient.project(out)

    return AlgebraMap(FX, FY, fn, name="F(f)")


# -- checks --------------------------------------------------------------------

def check_algebra_axioms(A, max_arity=None):
    """Unit, equivariance and partial-composition associativity on basis
    elements; returns the first violation with its witness."""
    P = A.operad
    N = A.max_arity if max_arity is None else min(max_arity, A.max_arity)
    d = A.dim
    budget = cap_guard()
    count = 0
    e = P.unit()
    for a in range(d):
        count += 1
        if A.gamma_vec(1, e, [{a: 1}]) != {a: 1}:
            return Violation(A.name, "unit", {"a": a})
    for n in range(2, N + 1):
        for p in range(P.dim(n)):
            for args in product(range(d), repeat=n):
                base = A.gamma(n, p, args)
                for j in range(1, n):
                    count += 1
                    sw = list(args)
                    sw[j - 1], sw[j] = sw[j], sw[j - 1]
                    if A.gamma_vec(n, P.act(n, j, p), [{x: 1} for x in args]) != A.gamma(n, p, sw):
                        return Violation(A.name, "equivariance",
                                         {"n": n, "p": p, "s": j, "args": args})
                    if count > budget:
                        raise CapGuardError("algebra axiom check exceeds the cap guard")
    for n in range(1, N + 1):
        for m in range(0, N - n + 2):
            for i in range(1, n + 1):
                for p in range(P.dim(n)):
                    for q in range(P.dim(m)):
                        pq = P.compose(n, m, i, p, q)
                        for args in product(range(d), repeat=n + m - 1):
                            count += 1
                            if count > budget:
                                raise CapGuardError("algebra axiom check exceeds the cap guard")
                            lhs = A.gamma_vec(n + m - 1, pq, [{x: 1} for x in args])
                            inner = A.gamma(m, q, args[i - 1:i - 1 + m])
                            outer = [{x: 1} for x in args[:i - 1]] + [inner] + \
                                    [{x: 1} for x in args[i - 1 + m:]]
                            rhs = A.gamma_vec(n, {p: 1}, outer)
                            if lhs != rhs:
                                return Violation(A.name, "associativity",
                                                 {"n": n, "m": m, "i": i, "p": p, "q": q,
                                                  "args": args})
    return Certificate(A.name, count)


def reflexive_check(A, W):
    """Both legs F(F(A)) => F(A) of the canonical coequalizer composed with the
    section F(eta) give the identity of F(A) (checked on the basis of F(A))."""
    P = A.operad
    FA = free_algebra(P, A.carrier, W)
    e = P.unit()
    count = 0
    for idx, (k, p, xs) in enumerate(FA.carrier.basis):
        # section: [p; a_1..a_k] -> [p; [id;a_1], ..., [id;a_k]]; flatten leg
        inner = [(1, u, (a,)) for a in xs for u in e]
        if len(e) != 1:
            raise SchemaError("reflexive check expects a basis unit")
        kk, pvec, ys = free_composite(P, p, inner)
        flat = FA.quotient.project(FA.ambient.vec(kk, pvec, ys))
        # other leg: apply the action of A inside each slot: gamma(id; a) = a
        mapped = FA.quotient.project(FA.ambient.vec(k, {p: 1}, tuple(
            next(iter(A.gamma_vec(1, e, [{a: 1}]))) for a in xs)))
        count += 1
        if flat != {idx: 1} or mapped != {idx: 1}:
            return Violation(A.name, "reflexive section", {"label": (k, p, xs)})
    return Certificate(A.name, count)
