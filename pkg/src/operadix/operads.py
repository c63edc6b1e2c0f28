"""Truncated symmetric operads in VectQ (set operads are linearized).

Every layer P(n) has a fixed basis; elements are sparse dicts over basis
indices.  Partial compositions o_i are primitive, the total composition is
derived.  Nothing is computed above ``max_arity``: asking for it raises
TruncationError.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from . import perms
from .base_cat import FINSET, VECTQ, Morphism, Obj, SymObj, tensor_many
from .checks import Certificate, Violation, cap_guard
from .errors import CapGuardError, SchemaError, TruncationError
from .linalg import lincomb, vaxpy


class Operad:
    """Base class; subclasses provide _basis, _act, _compose and _unit."""

    name = "P"
    permutation_basis = False  # True when s_j maps basis elements to basis elements

    def __init__(self, max_arity, name=None):
        if max_arity < 1:
            raise SchemaError("truncation N must be at least 1")
        self.max_arity = max_arity
        if name is not None:
            self.name = name
        self._layers = {}
        self._comp_cache = {}
        self._act_cache = {}

    # -- subclass hooks --
    def _basis(self, n):
        raise NotImplementedError

    def _act(self, n, j, b):
        raise NotImplementedError

    def _compose(self, n, m, i, a, b):
        raise NotImplementedError

    def _unit(self):
        raise NotImplementedError

    # -- public surface --
    def check_arity(self, n):
        if n < 0:
            raise SchemaError("negative arity")
        if n > self.max_arity:
            raise TruncationError(f"{self.name}: arity {n} exceeds truncation {self.max_arity}")

    def layer(self, n) -> SymObj:
        self.check_arity(n)
        lay = self._layers.get(n)
        if lay is None:
            carrier = Obj(VECTQ, self._basis(n))
            lay = SymObj.from_action(carrier, n, lambda j, b: self.act(n, j, b), validate=False)
            self._layers[n] = lay
        return lay

    def basis(self, n):
        return self.layer(n).carrier.basis

    def dim(self, n):
        return self.layer(n).carrier.dim

    def unit(self):
        return dict(self._unit())

    def act(self, n, j, b):
        key = (n, j, b)
        out = self._act_cache.get(key)
        if out is None:
            out = self._act(n, j, b)
            self._act_cache[key] = out
        return out

    def act_vec(self, n, j, v):
        return lincomb((c, self.act(n, j, b)) for b, c in v.items())

    def act_perm(self, n, tau, v):
        for j in perms.action_word(tuple(tau)):
            v = self.act_vec(n, j, v)
        return v

    def compose(self, n, m, i, a, b):
        key = (n, m, i, a, b)
        out = self._comp_cache.get(key)
        if out is None:
            if not 1 <= i <= n:
                raise SchemaError(f"slot {i} out of range for arity {n}")
            self.check_arity(n + m - 1)
            out = self._compose(n, m, i, a, b)
            self._comp_cache[key] = out
        return out

    def compose_vec(self, n, m, i, u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                vaxpy(out, self.compose(n, m, i, a, b), x * y)
        return out

    def gamma(self, p, qs, s=None):
        """Total composition of p in P(s) with q_j = (n_j, vector) plugged
        into every slot.  Constants go in first (right to left), then the
        remaining slots right to left, so no intermediate arity exceeds
        max(s, n_1 + ... + n_s)."""
        s = len(qs) if s is None else s
        if len(qs) != s:
            raise SchemaError("one operation per slot required")
        self.check_arity(sum(n for n, _ in qs))
        cur, arity = p, s
        for j in range(s, 0, -1):
            nj, q = qs[j - 1]
            if nj == 0:
                cur = self.compose_vec(arity, 0, j, cur, q)
                arity -= 1
        rest = [(nj, q) for nj, q in qs if nj]
        for j in range(len(rest), 0, -1):
            nj, q = rest[j - 1]
            cur = self.compose_vec(arity, nj, j, cur, q)
            arity += nj - 1
        return cur

    def gamma_left(self, p, qs):
        """Same composite assembled left to right (for order independence)."""
        cur, arity, offset = p, len(qs), 0
        for j, (nj, q) in enumerate(qs, 1):
            cur = self.compose_vec(arity, nj, offset + 1, cur, q)
            arity += nj - 1
            offset += nj
        return cur

    def is_permutation_layer(self, n):
        return self.permutation_basis or self.layer(n).is_permutation_action()

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, N={self.max_arity})"


class UAss(Operad):
    """Unital associative operad: P(n) is spanned by Sigma_n; a permutation
    sigma is the word x_sigma(1) ... x_sigma(n)."""

    name = "uAss"
    permutation_basis = True

    def _basis(self, n):
        return perms.all_perms(n)

    def _act(self, n, j, b):
        sigma = perms.all_perms(n)[b]
        return {perms.perm_index(n)[perms.compose(perms.transposition(n, j), sigma)]: 1}

    def act_perm(self, n, tau, v):
        idx = perms.perm_index(n)
        ps = perms.all_perms(n)
        tau = tuple(tau)
        return {idx[perms.compose(tau, ps[b])]: c for b, c in v.items()}

    def _compose(self, n, m, i, a, b):
        sigma = perms.all_perms(n)[a]
        rho = perms.all_perms(m)[b]
        return {perms.perm_index(n + m - 1)[perms.substitute(sigma, i, rho)]: 1}

    def _unit(self):
        return {0: 1}


class UCom(Operad):
    """Unital commutative operad: every layer is the unit object."""

    name = "uCom"
    permutation_basis = True

    def _basis(self, n):
        return (f"mu{n}",)

    def _act(self, n, j, b):
        return {0: 1}

    def act_perm(self, n, tau, v):
        return dict(v)

    def _compose(self, n, m, i, a, b):
        return {0: 1}

    def _unit(self):
        return {0: 1}


def builtin(name, N):
    table = {"uAss": UAss, "uCom": UCom}
    if name not in table:
        raise SchemaError(f"unknown built-in operad {name!r}")
    return table[name](N)


class EndOperad(Operad):
    """Endomorphism operad of a finite object.

    VectQ: basis of Hom(A^n, A) by elementary operators (o, t) sending the
    basis tensor e_t to e_o.  FinSet: basis = all functions A^n -> A, a set
    operad linearized over Q.
    """

    permutation_basis = True

    def __init__(self, carrier, max_arity, name=None):
        super().__init__(max_arity, name or "End")
        self.carrier = carrier
        self.d = carrier.dim
        if carrier.cat == FINSET:
            d = self.d
            size = sum(d ** (d ** n) for n in range(max_arity + 1)) if d else 0
            if size > cap_guard():
                raise CapGuardError(f"finite-set endomorphism operad would need {size} functions")

    @lru_cache(maxsize=None)
    def _tuples(self, n):
        tups = tuple(product(range(self.d), repeat=n))
        return tups, {t: k for k, t in enumerate(tups)}

    def _basis(self, n):
        tups, _ = self._tuples(n)
        if self.carrier.cat == VECTQ:
            return tuple((o, t) for o in range(self.d) for t in tups)
        return tuple(product(range(self.d), repeat=len(tups)))

    @lru_cache(maxsize=None)
    def _fn_index(self, n):
        return {f: k for k, f in enumerate(self._basis(n))}

    def _act(self, n, j, b):
        tups, tindex = self._tuples(n)
        if self.carrier.cat == VECTQ:
            o, t = divmod(b, len(tups))
            t = list(tups[t])
            t[j - 1], t[j] = t[j], t[j - 1]
            return {o * len(tups) + tindex[tuple(t)]: 1}
        f = self._basis(n)[b]
        g = []
        for t in tups:
            u = list(t)
            u[j - 1], u[j] = u[j], u[j - 1]
            g.append(f[tindex[tuple(u)]])
        return {self._fn_index(n)[tuple(g)]: 1}

    def _compose(self, n, m, i, a, b):
        tn, _ = self._tuples(n)
        tm, _ = self._tuples(m)
        tr, rindex = self._tuples(n + m - 1)
        if self.carrier.cat == VECTQ:
            o, t = divmod(a, len(tn))
            o2, t2 = divmod(b, len(tm))
            t, t2 = tn[t], tm[t2]
            if t[i - 1] != o2:
                return {}
            new = t[:i - 1] + t2 + t[i:]
            return {o * len(tr) + rindex[new]: 1}
        f = self._basis(n)[a]
        g = self._basis(m)[b]
        _, nindex = self._tuples(n)
        _, mindex = self._tuples(m)
        h = []
        for t in tr:
            inner = g[mindex[t[i - 1:i - 1 + m]]]
            h.append(f[nindex[t[:i - 1] + (inner,) + t[i - 1 + m:]]])
        return {self._fn_index(n + m - 1)[tuple(h)]: 1}

    def _unit(self):
        tups, tindex = self._tuples(1)
        if self.carrier.cat == VECTQ:
            return {o * len(tups) + tindex[(o,)]: 1 for o in range(self.d)}
        return {self._fn_index(1)[tuple(range(self.d))]: 1}

    def elementary(self, n, o, t):
        tups, tindex = self._tuples(n)
        return o * len(tups) + tindex[tuple(t)]

    def evaluate(self, n, v, args):
        """Apply an element of End(n) to a tuple of basis indices."""
        out = {}
        tups, tindex = self._tuples(n)
        k = tindex[tuple(args)]
        for b, c in v.items():
            o, t = divmod(b, len(tups))
            if t == k:
                out[o] = out.get(o, 0) + c
        return {o: c for o, c in out.items() if c}


def endomorphism_operad(carrier, N):
    return EndOperad(carrier, N)


class TensorOperad(Operad):
    """(P (x) Q)(n) = P(n) (x) Q(n), diagonal action, componentwise composition."""

    def __init__(self, P, Q):
        if P.max_arity != Q.max_arity:
            raise SchemaError("tensor product needs equal truncations")
        super().__init__(P.max_arity, f"({P.name}x{Q.name})")
        self.P, self.Q = P, Q
        self.permutation_basis = P.permutation_basis and Q.permutation_basis

    def _basis(self, n):
        return tuple((a, b) for a in self.P.basis(n) for b in self.Q.basis(n))

    def _kron(self, u, v, dq):
        return {a * dq + b: x * y for a, x in u.items() for b, y in v.items()}

    def _act(self, n, j, b):
        dq = self.Q.dim(n)
        a, c = divmod(b, dq)
        return self._kron(self.P.act(n, j, a), self.Q.act(n, j, c), dq)

    def _compose(self, n, m, i, a, b):
        dqn, dqm = self.Q.dim(n), self.Q.dim(m)
        a1, a2 = divmod(a, dqn)
        b1, b2 = divmod(b, dqm)
        return self._kron(self.P.compose(n, m, i, a1, b1), self.Q.compose(n, m, i, a2, b2),
                          self.Q.dim(n + m - 1))

    def _unit(self):
        return self._kron(self.P.unit(), self.Q.unit(), self.Q.dim(1))

    def pair(self, n, u, v):
        """Element u (x) v of P(n) (x) Q(n)."""
        return self._kron(u, v, self.Q.dim(n))


def tensor_operads(P, Q):
    return TensorOperad(P, Q)


class TableOperad(Operad):
    """An operad given by explicit layers and composition tables."""

    def __init__(self, layers, unit_vec, comp, name="table"):
        super().__init__(len(layers) - 1, name)
        self._given = list(layers)
        self._unit_vec = dict(unit_vec)
        self._comp = dict(comp)

    def layer(self, n):
        self.check_arity(n)
        return self._given[n]

    def _act(self, n, j, b):
        return self._given[n].gens[j - 1].data[b]

    def _compose(self, n, m, i, a, b):
        f = self._comp.get((n, m, i))
        if f is None:
            raise TruncationError(f"no composition table for {(n, m, i)}")
        return dict(f.data[a * self.dim(m) + b])

    def _unit(self):
        return self._unit_vec


class PatchedOperad(Operad):
    """A copy of P with selected composition values overridden (fault injection)."""

    def __init__(self, P, patches, name=None):
        super().__init__(P.max_arity, name or f"{P.name}*")
        self.P = P
        self.patches = dict(patches)
        self.permutation_basis = P.permutation_basis

    def _basis(self, n):
        return self.P.basis(n)

    def _act(self, n, j, b):
        return self.P.act(n, j, b)

    def _compose(self, n, m, i, a, b):
        if (n, m, i, a, b) in self.patches:
            return dict(self.patches[(n, m, i, a, b)])
        return self.P.compose(n, m, i, a, b)

    def _unit(self):
        return self.P.unit()


class PositivePart(Operad):
    """P with its arity-zero layer replaced by the zero object."""

    def __init__(self, P):
        super().__init__(P.max_arity, f"{P.name}+")
        self.P = P
        self.permutation_basis = P.permutation_basis

    def _basis(self, n):
        return () if n == 0 else self.P.basis(n)

    def _act(self, n, j, b):
        return self.P.act(n, j, b)

    def _compose(self, n, m, i, a, b):
        return self.P.compose(n, m, i, a, b)

    def _unit(self):
        return self.P.unit()


def materialize(P, N=None):
    """Explicit tables for P up to arity N (for serialization)."""
    N = P.max_arity if N is None else N
    layers = [P.layer(n) for n in range(N + 1)]
    comp = {}
    for n in range(1, N + 1):
        for m in range(0, N - n + 2):
            for i in range(1, n + 1):
                dom = tensor_many([layers[n].carrier, layers[m].carrier])
                cod = layers[n + m - 1].carrier
                cols = [P.compose(n, m, i, a, b)
                        for a in range(P.dim(n)) for b in range(P.dim(m))]
                comp[(n, m, i)] = Morphism(dom, cod, cols)
    return layers, P.unit(), comp


def truncate(P, N):
    layers, u, comp = materialize(P, N)
    return TableOperad(layers, u, comp, name=P.name)


def total_composition(P, s, ns):
    """gamma: P(s) (x) P(n_1) (x) ... (x) P(n_s) -> P(n) as a Morphism."""
    if len(ns) != s:
        raise SchemaError("need one arity per slot")
    n = sum(ns)
    P.check_arity(max([s, n] + list(ns)))
    dom = tensor_many([P.layer(s).carrier] + [P.layer(k).carrier for k in ns])
    cod = P.layer(n).carrier
    cols = []
    for idx in product(range(P.dim(s)), *[range(P.dim(k)) for k in ns]):
        p, qs = idx[0], idx[1:]
        cols.append(P.gamma({p: 1}, [(k, {q: 1}) for k, q in zip(ns, qs)]))
    return Morphism(dom, cod, cols)


# -- morphisms ---------------------------------------------------------------

class OperadMorphism:
    """Layerwise linear maps fn(n, basis_index) -> vector of the target."""

    def __init__(self, source, target, fn, name="phi"):
        self.source = source
        self.target = target
        self._fn = fn
        self._cache = {}
        self.name = name

    def __call__(self, n, b):
        key = (n, b)
        out = self._cache.get(key)
        if out is None:
            out = self._fn(n, b)
            self._cache[key] = out
        return out

    def apply(self, n, v):
        return lincomb((c, self(n, b)) for b, c in v.items())

    def matrix(self, n):
        return Morphism(self.source.layer(n).carrier, self.target.layer(n).carrier,
                        [self(n, b) for b in range(self.source.dim(n))])

    def then(self, other):
        return OperadMorphism(self.source, other.target,
                              lambda n, b: other.apply(n, self(n, b)),
                              name=f"{other.name}.{self.name}")


def identity_morphism(P):
    return OperadMorphism(P, P, lambda n, b: {b: 1}, name="id")


def augmentation(P, N=None):
    """The map P -> uCom sending every basis element to 1 (P = uAss or uCom)."""
    return OperadMorphism(P, UCom(N or P.max_arity), lambda n, b: {0: 1}, name="aug")


def check_operad_morphism(f, max_arity=None):
    P, Q = f.source, f.target
    N = min(P.max_arity, Q.max_arity) if max_arity is None else max_arity
    count = 0
    if f.apply(1, P.unit()) != Q.unit():
        return Violation(f.name, "unit", {})
    for n in range(N + 1):
        for b in range(P.dim(n)):
            for j in range(1, n):
                count += 1
                if f.apply(n, P.act(n, j, b)) != Q.act_vec(n, j, f(n, b)):
                    return Violation(f.name, "equivariance", {"n": n, "j": j, "basis": b})
    for n in range(1, N + 1):
        for m in range(0, N - n + 2):
            for i in range(1, n + 1):
                for a in range(P.dim(n)):
                    fa = f(n, a)
                    for b in range(P.dim(m)):
                        count += 1
                        lhs = f.apply(n + m - 1, P.compose(n, m, i, a, b))
                        rhs = Q.compose_vec(n, m, i, fa, f(m, b))
                        if lhs != rhs:
                            return Violation(f.name, "composition",
                                             {"n": n, "m": m, "i": i, "a": a, "b": b})
    return Certificate(f.name, count)


def is_layerwise_iso(f, max_arity):
    return all(f.matrix(n).is_iso() for n in range(max_arity + 1))


# -- axiom checker -----------------------------------------------------------

def check_operad_axioms(P, max_arity=None):
    """Exhaustive unit, associativity and equivariance checks on basis
    elements; returns the first violation with its witness."""
    N = P.max_arity if max_arity is None else min(max_arity, P.max_arity)
    e = P.unit()
    count = 0
    for n in range(N + 1):
        for a in range(P.dim(n)):
            if n >= 1:
                for i in range(1, n + 1):
                    count += 1
                    if P.compose_vec(n, 1, i, {a: 1}, e) != {a: 1}:
                        return Violation(P.name, "unit", {"n": n, "m": 1, "i": i, "a": a})
            count += 1
            if P.compose_vec(1, n, 1, e, {a: 1}) != {a: 1}:
                return Violation(P.name, "unit", {"n": 1, "m": n, "i": 1, "a": a})
    for n in range(1, N + 1):
        for m in range(0, N - n + 2):
            for i in range(1, n + 1):
                for a in range(P.dim(n)):
                    for b in range(P.dim(m)):
                        ab = P.compose(n, m, i, a, b)
                        for j in range(1, m):
                            count += 1
                            lhs = P.compose_vec(n, m, i, {a: 1}, P.act(m, j, b))
                            rhs = P.act_vec(n + m - 1, i - 1 + j, ab)
                            if lhs != rhs:
                                return Violation(P.name, "equivariance",
                                                 {"n": n, "m": m, "i": i, "a": a, "b": b, "s": j})
                        for j in range(1, n):
                            count += 1
                            t, tau = perms.block_move(perms.transposition(n, j), i, m)
                            lhs = P.compose_vec(n, m, i, P.act(n, j, a), {b: 1})
                            rhs = P.act_perm(n + m - 1, tau, P.compose(n, m, t, a, b))
                            if lhs != rhs:
                                return Violation(P.name, "equivariance",
                                                 {"n": n, "m": m, "i": i, "a": a, "b": b, "s": j})
                        for l in range(0, min(N, N + 2 - n - m) + 1):
                            for c in range(P.dim(l)):
                                cv = {c: 1}
                                for j in range(1, m + 1):
                                    count += 1
                                    lhs = P.compose_vec(n + m - 1, l, i + j - 1, ab, cv)
                                    rhs = P.compose_vec(n, m + l - 1, i, {a: 1}, P.compose(m, l, j, b, c))
                                    if lhs != rhs:
                                        return Violation(P.name, "sequential associativity",
                                                         {"n": n, "m": m, "i": i, "l": l, "j": j,
                                                          "a": a, "b": b, "c": c})
                                for j in range(i + 1, n + 1):
                                    if n + l - 1 > N:
                                        break
                                    count += 1
                                    lhs = P.compose_vec(n + m - 1, l, j + m - 1, ab, cv)
                                    rhs = P.compose_vec(n + l - 1, m, i, P.compose(n, l, j, a, c), {b: 1})
                                    if lhs != rhs:
                                        return Violation(P.name, "parallel associativity",
                                                         {"n": n, "m": m, "i": i, "l": l, "j": j,
                                                          "a": a, "b": b, "c": c})
    return Certificate(P.name, count)
