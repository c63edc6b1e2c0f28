"""Modules over an operadic algebra and their comparison with Env-modules.

An A-module M carries maps mu_{n,k}: P(n) (x) A^(k-1) (x) M (x) A^(n-k) -> M.
Arguments are passed as a tuple of length n whose k-th entry (1-based) is an
index of M and whose other entries are indices of A.
"""

from __future__ import annotations

from itertools import product

from . import perms
from .algebras import Algebra, AlgebraMap, _weight_tuples, check_algebra_map, free_algebra
from .base_cat import VECTQ, Morphism, Obj, SymObj
from .checks import Certificate, Violation, cap_guard
from .enveloping import env_algebra
from .errors import CapGuardError, SchemaError, StabilizationError, TruncationError
from .linalg import Quotient, lincomb, vaxpy
from .monoids import Monoid, MonoidModule, check_monoid_module, free_monoid_module
from .operads import Operad, OperadMorphism, check_operad_morphism


class AModule:
    def __init__(self, algebra, carrier, action, max_arity=None, name="M"):
        self.algebra = algebra
        self.operad = algebra.operad
        self.carrier = carrier
        self._action = action
        self.max_arity = algebra.max_arity if max_arity is None else min(max_arity, algebra.max_arity)
        self.name = name
        self._cache = {}

    @property
    def dim(self):
        return self.carrier.dim

    def mu(self, n, k, p, args):
        if not 1 <= k <= n:
            raise SchemaError(f"module slot {k} outside 1..{n}")
        if n > self.max_arity:
            raise TruncationError(f"{self.name}: module action of arity {n} beyond {self.max_arity}")
        key = (n, k, p, tuple(args))
        out = self._cache.get(key)
        if out is None:
            out = self._action(n, k, p, key[3])
            self._cache[key] = out
        return out

    def mu_vec(self, n, k, pvec, argvecs):
        out = {}
        supports = [list(v.items()) for v in argvecs]
        for p, c in pvec.items():
            for combo in product(*supports):
                coef = c
                idx = []
                for a, x in combo:
                    coef *= x
                    idx.append(a)
                vaxpy(out, self.mu(n, k, p, idx), coef)
        return out

    def arg_tuples(self, n, k):
        dA, dM = self.algebra.dim, self.dim
        ranges = [range(dM) if j == k else range(dA) for j in range(1, n + 1)]
        return product(*ranges)

    def __repr__(self):
        return f"AModule({self.name}, dim={self.dim}, over {self.algebra.name})"


def regular_module(A):
    """A acting on itself: mu_{n,k} = gamma_n."""
    return AModule(A, A.carrier, lambda n, k, p, args: A.gamma(n, p, args), name=f"{A.name}-self")


def tensor_module(A, V):
    """A (x) V with the action on the A factor (a free module when V is a vector space)."""
    dv = V.dim
    carrier = Obj(VECTQ, tuple((a, v) for a in A.carrier.basis for v in V.basis))

    def action(n, k, p, args):
        a, v = divmod(args[k - 1], dv)
        inner = list(args)
        inner[k - 1] = a
        return {b * dv + v: c for b, c in A.gamma(n, p, tuple(inner)).items()}

    return AModule(A, carrier, action, name=f"{A.name}x{V.dim}")


def zero_module(A):
    return AModule(A, Obj(VECTQ, ()), lambda n, k, p, args: {}, name="0")


# -- axioms ------------------------------------------------------------------------

def _swap(args, j):
    out = list(args)
    out[j - 1], out[j] = out[j], out[j - 1]
    return tuple(out)


def _moved(k, j):
    """s_j applied to the slot number k."""
    if k == j:
        return j + 1
    if k == j + 1:
        return j
    return k


def check_module_axioms(M, max_arity=None, full_arity=3):
    """Unit, associativity (partial and full decompositions) and slot
    equivariance on basis elements."""
    A, P = M.algebra, M.operad
    N = M.max_arity if max_arity is None else min(max_arity, M.max_arity)
    budget = cap_guard()
    count = 0
    e = P.unit()
    for m in range(M.dim):
        count += 1
        if M.mu_vec(1, 1, e, [{m: 1}]) != {m: 1}:
            return Violation(M.name, "(1) unit", {"m": m})
    for n in range(2, N + 1):
        for k in range(1, n + 1):
            for p in range(P.dim(n)):
                for args in M.arg_tuples(n, k):
                    for j in range(1, n):
                        count += 1
                        lhs = M.mu_vec(n, k, P.act(n, j, p), [{x: 1} for x in args])
                        rhs = M.mu(n, _moved(k, j), p, _swap(args, j))
                        if lhs != rhs:
                            return Violation(M.name, "(3) equivariance",
                                             {"n": n, "k": k, "p": p, "s": j, "args": args})
    for n in range(1, N + 1):
        for m in range(0, N - n + 2):
            for i in range(1, n + 1):
                R = n + m - 1
                if R < 1:
                    continue
                for k in range(1, R + 1):
                    for p in range(P.dim(n)):
                        for q in range(P.dim(m)):
                            pq = P.compose(n, m, i, p, q)
                            for args in M.arg_tuples(R, k):
                                count += 1
                                if count > budget:
                                    raise CapGuardError("module axiom check exceeds the cap guard")
                                lhs = M.mu_vec(R, k, pq, [{x: 1} for x in args])
                                block = args[i - 1:i - 1 + m]
                                before = [{x: 1} for x in args[:i - 1]]
                                after = [{x: 1} for x in args[i - 1 + m:]]
                                if i <= k < i + m:
                                    inner = M.mu(m, k - i + 1, q, block)
                                    rhs = M.mu_vec(n, i, {p: 1}, before + [inner] + after)
                                else:
                                    inner = A.gamma(m, q, block)
                                    kk = k if k < i else k - m + 1
                                    rhs = M.mu_vec(n, kk, {p: 1}, before + [inner] + after)
                                if lhs != rhs:
                                    return Violation(M.name, "(2) associativity",
                                                     {"n": n, "m": m, "i": i, "k": k,
                                                      "p": p, "q": q, "args": args})
    cert = _check_full_decompositions(M, min(full_arity, N))
    if not cert:
        return cert
    return Certificate(M.name, count + cert.checked)


def _check_full_decompositions(M, N):
    """mu(gamma(p; q_1..q_s); args) against the two-stage action, total n <= N."""
    A, P = M.algebra, M.operad
    count = 0
    for s in range(1, N + 1):
        for ns in product(range(0, N + 1), repeat=s):
            n = sum(ns)
            if n < 1 or n > N:
                continue
            for p in range(P.dim(s)):
                for qs in product(*[range(P.dim(x)) for x in ns]):
                    total = P.gamma({p: 1}, [(x, {q: 1}) for x, q in zip(ns, qs)])
                    for k in range(1, n + 1):
                        for args in M.arg_tuples(n, k):
                            count += 1
                            lhs = M.mu_vec(n, k, total, [{x: 1} for x in args])
                            parts, pos, slot = [], 0, None
                            for j, (x, q) in enumerate(zip(ns, qs), 1):
                                block = args[pos:pos + x]
                                if pos < k <= pos + x:
                                    parts.append(M.mu(x, k - pos, q, block))
                                    slot = j
                                else:
                                    parts.append(A.gamma(x, q, block))
                                pos += x
                            rhs = M.mu_vec(s, slot, {p: 1}, parts)
                            if lhs != rhs:
                                return Violation(M.name, "(2) associativity",
                                                 {"s": s, "ns": ns, "p": p, "qs": qs,
                                                  "k": k, "args": args})
    return Certificate(M.name, count)


# -- Psi(A, M) and P(A, M) -----------------------------------------------------------

def psi_labels(dA, dM, n):
    """Basis of Psi(A, M)(n): (k, entries) with the M index at slot k."""
    out = []
    for k in range(1, n + 1):
        ranges = [range(dM) if j == k else range(dA) for j in range(1, n + 1)]
        out.extend((k, t) for t in product(*ranges))
    return out


def psi(A, M, n):
    """Psi(A, M)(n) with Sigma_n permuting all slots and moving the M marker."""
    dA = A.dim if hasattr(A, "dim") else int(A)
    dM = M.dim if hasattr(M, "dim") else int(M)
    labels = psi_labels(dA, dM, n)
    index = {lab: i for i, lab in enumerate(labels)}
    carrier = Obj(VECTQ, tuple(labels))

    def act(j, b):
        k, t = labels[b]
        return {index[(_moved(k, j), _swap(t, j))]: 1}

    return SymObj.from_action(carrier, n, act)


class PAM:
    """P(A, M) = (+)_{1<=n<=N} P(n) (x)_{Sigma_n} Psi(A, M)(n), with labels (n, p, k, t)."""

    def __init__(self, P, dA, dM, N, relations=()):
        self.P, self.dA, self.dM, self.N = P, dA, dM, N
        labels = []
        for n in range(1, N + 1):
            ps = psi_labels(dA, dM, n)
            for p in range(P.dim(n)):
                for k, t in ps:
                    labels.append((n, p, k, t))
        if len(labels) > cap_guard():
            raise CapGuardError(f"P(A, M) of size {len(labels)} exceeds the cap guard")
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}
        merges, rels = [], []
        for idx, (n, p, k, t) in enumerate(labels):
            for j in range(1, n):
                v = P.act(n, j, p)
                other = self.index[(n, p, _moved(k, j), _swap(t, j))]
                if len(v) == 1 and next(iter(v.values())) == 1:
                    merges.append((self.index[(n, next(iter(v)), k, t)], other))
                else:
                    rel = self.vec(n, v, k, t)
                    rel[other] = rel.get(other, 0) - 1
                    rels.append({i: c for i, c in rel.items() if c})
        self.coinvariance_rows = list(rels) + [{a: 1, b: -1} for a, b in merges if a != b]
        self.quotient = Quotient(len(labels), merges=merges, relations=rels + list(relations))

    def vec(self, n, pvec, k, t, c=1, out=None):
        out = {} if out is None else out
        for b, e in pvec.items():
            i = self.index[(n, b, k, tuple(t))]
            out[i] = out.get(i, 0) + c * e
        return {i: x for i, x in out.items() if x}

    def __len__(self):
        return len(self.quotient)


def pam(P, A, M, N):
    dA = A.dim if hasattr(A, "dim") else int(A)
    dM = M.dim if hasattr(M, "dim") else int(M)
    return PAM(P, dA, dM, N)


def check_equivariance_total(M, N=None):
    """The total action P(A, M) -> M vanishes on every coinvariance relation."""
    N = M.max_arity if N is None else min(N, M.max_arity)
    X = PAM(M.operad, M.algebra.dim, M.dim, N)
    for row in X.coinvariance_rows:
        out = {}
        for i, c in row.items():
            n, p, k, t = X.labels[i]
            vaxpy(out, M.mu(n, k, p, t), c)
        if out:
            return Violation(M.name, "(3) total action", {"row": [X.labels[i] for i in row]})
    return Certificate(M.name, len(X.coinvariance_rows))


# -- the equivalence with Env-modules ---------------------------------------------------

def _require_stable(env, force):
    if env.stabilized is not True and not force:
        raise StabilizationError(
            f"envelope not certified stable at cap {env.K} (profiles {env.profile} / {env.profile_next})")


def to_monoid_module(M, env, force=False):
    """epsilon([p; x_1..x_k], m) = mu_{1+k,1}(p; m, x_1, ..., x_k)."""
    _require_stable(env, force)
    E = env_algebra(env)
    PA = env.operad
    gens = [env.gen_value(x) for x in range(PA.d)]

    def act(e, m):
        k, p, xs = PA.label(1, e)
        return M.mu_vec(1 + k, 1, {p: 1}, [{m: 1}] + [gens[x] for x in xs])

    return MonoidModule(E, M.carrier, act, name=f"eps({M.name})")


def slot_to_front(n, k):
    """sigma with (p . sigma)(m, a's) = p(a's with m in slot k)."""
    return tuple(r + 1 if r < k else (1 if r == k else r) for r in range(1, n + 1))


def from_monoid_module(Y, env, max_arity=None, force=False):
    """mu_{n,k}(p; a's, m) = epsilon(eta(p) with eta_bar(a_j) plugged into the
    A-slots, m); the surviving input is slot k, moved to the front."""
    _require_stable(env, force)
    A, P = env.algebra, env.base
    PA = env.operad
    top = (env.K + 1) if env.route == "canonical" else PA.max_arity
    top = top if max_arity is None else min(top, max_arity)

    def action(n, k, p, args):
        pv = P.act_perm(n, slot_to_front(n, k), {p: 1})
        avs = [{a: 1} for j, a in enumerate(args, 1) if j != k]
        u = env.embed(1, n - 1, pv, avs)
        return Y.act_vec(u, {args[k - 1]: 1})

    return AModule(A, Y.carrier, action, max_arity=top, name=f"mu({Y.name})")


def compare_modules(M1, M2, max_arity):
    """Equal mu_{n,k} data on all basis arguments."""
    count = 0
    P = M1.operad
    for n in range(1, max_arity + 1):
        for k in range(1, n + 1):
            for p in range(P.dim(n)):
                for args in M1.arg_tuples(n, k):
                    count += 1
                    if M1.mu(n, k, p, args) != M2.mu(n, k, p, args):
                        return Violation("modules", "mu", {"n": n, "k": k, "p": p, "args": args})
    return Certificate("modules", count)


def compare_monoid_modules(Y1, Y2):
    for e in range(Y1.monoid.dim):
        for m in range(Y1.dim):
            if Y1.act(e, m) != Y2.act(e, m):
                return Violation("monoid modules", "action", {"e": e, "m": m})
    return Certificate("monoid modules", Y1.monoid.dim * Y1.dim)


def roundtrip(env, M=None, Y=None, max_arity=3):
    """Both round trips for an A-module M and/or an Env-module Y."""
    checked = 0
    if M is not None:
        Y1 = to_monoid_module(M, env)
        cert = check_monoid_module(Y1)
        if not cert:
            return cert
        M1 = from_monoid_module(Y1, env)
        cert = compare_modules(M, M1, min(max_arity, M1.max_arity, M.max_arity))
        if not cert:
            return cert
        checked += cert.checked
    if Y is not None:
        M2 = from_monoid_module(Y, env)
        cert = check_module_axioms(M2, max_arity=min(max_arity, M2.max_arity))
        if not cert:
            return cert
        cert = compare_monoid_modules(to_monoid_module(M2, env), Y)
        if not cert:
            return cert
        checked += cert.checked
    return Certificate("round trip", checked)


def module_map_to_env(M, N, f: Morphism, env):
    """An A-module map is an equivariant map of the associated Env-modules."""
    from .monoids import check_module_map
    return check_module_map(to_monoid_module(M, env), to_monoid_module(N, env), f)


def check_amodule_map(M, N, f: Morphism, max_arity=2):
    P = M.operad
    for n in range(1, max_arity + 1):
        for k in range(1, n + 1):
            for p in range(P.dim(n)):
                for args in M.arg_tuples(n, k):
                    lhs = f.apply(M.mu(n, k, p, args))
                    argv = [{x: 1} for x in args]
                    argv[k - 1] = f.data[args[k - 1]]
                    if lhs != N.mu_vec(n, k, {p: 1}, argv):
                        return Violation("module map", "mu", {"n": n, "k": k, "p": p, "args": args})
    return Certificate("module map")


# -- free modules -------------------------------------------------------------------

class FreeModule(AModule):
    """Coequalizer of P(F(A), M0) => P(A, M0): leg one flattens, leg two acts in A."""

    def __init__(self, A, M0, N):
        P = A.operad
        self.M0 = M0
        FA = free_algebra(P, A.carrier, N - 1, max_arity=N)
        X = PAM(P, A.dim, M0.dim, N)
        rels = []
        pool = sorted(FA.carrier.basis, key=lambda lab: lab[0])
        for n in range(1, N + 1):
            for p in range(P.dim(n)):
                for k in range(1, n + 1):
                    for us in _weight_tuples(pool, n - 1, N - 1):
                        for m in range(M0.dim):
                            rels.extend(self._relation(P, A, X, n, p, k, us, m))
        X.quotient.add_relations(rels)
        self.pam = X
        self.N = N
        quo = X.quotient
        carrier = Obj(VECTQ, tuple(X.labels[i] for i in quo.kept))
        # actions stay exact while p o_k q fits under N for every kept class
        top = max((lab[0] for lab in carrier.basis), default=1)
        super().__init__(A, carrier, self._act, max_arity=N - top + 1, name=f"Free({A.name},{M0.dim})")

    @staticmethod
    def _relation(P, A, X, n, p, k, us, m):
        # slots: us fill every slot except k, which carries m
        full = list(us[:k - 1]) + [None] + list(us[k - 1:])
        # leg one: gamma(p; u_1, .., id, .., u_n) flattened, M at the id slot
        qs = [(1, P.unit()) if u is None else (u[0], {u[1]: 1}) for u in full]
        total = P.gamma({p: 1}, qs)
        t, kk = [], None
        for u in full:
            if u is None:
                kk = len(t) + 1
                t.append(m)
            else:
                t.extend(u[2])
        leg1 = X.vec(len(t), total, kk, t)
        # leg two: [p; gamma_A(u_j) in each A slot, m]
        leg2 = {}
        parts = [None if u is None else A.gamma(u[0], u[1], u[2]) for u in full]
        supports = [[(m, 1)] if v is None else list(v.items()) for v in parts]
        for combo in product(*supports):
            coef = 1
            tt = []
            for a, c in combo:
                coef *= c
                tt.append(a)
            X.vec(n, {p: 1}, k, tt, coef, leg2)
        out = dict(leg1)
        for i, c in leg2.items():
            out[i] = out.get(i, 0) - c
        out = {i: c for i, c in out.items() if c}
        return [out] if out else []

    def _act(self, n, k, p, args):
        X, quo, P = self.pam, self.pam.quotient, self.operad
        nn, q, kk, t = X.labels[quo.kept[args[k - 1]]]
        R = n - 1 + nn
        if R > self.N:
            raise TruncationError(f"free module action lands in arity {R} > {self.N}")
        pq = P.compose(n, nn, k, p, q)
        tt = tuple(args[:k - 1]) + tuple(t) + tuple(args[k:])
        return quo.project(X.vec(R, pq, k - 1 + kk, tt))

    def generator(self, m):
        """[id; m] for a basis element m of M0."""
        X = self.pam
        return X.quotient.project(X.vec(1, self.operad.unit(), 1, (m,)))


def free_module(A, M0, N):
    if M0.dim == 0:
        return zero_module(A)
    return FreeModule(A, M0, N)


def free_module_comparison(F, env):
    """[p; a's, m at slot k] -> [p . pi_k; a's] (x) m  from F into Env (x) M0."""
    P = F.operad
    X = F.pam
    dm = F.M0.dim
    E = env_algebra(env)
    cols = []
    for i in X.quotient.kept:
        n, p, k, t = X.labels[i]
        pv = P.act_perm(n, slot_to_front(n, k), {p: 1})
        avs = [{a: 1} for j, a in enumerate(t, 1) if j != k]
        u = env.embed(1, n - 1, pv, avs)
        cols.append({e * dm + t[k - 1]: c for e, c in u.items()})
    target = Obj(VECTQ, tuple((e, m) for e in E.carrier.basis for m in F.M0.basis))
    return Morphism(F.carrier, target, cols), free_monoid_module(E, F.M0)


def free_module_map(F1, F2, g: Morphism):
    """Induced map of free modules for a linear map g: M0 -> M0'."""
    X1, X2 = F1.pam, F2.pam
    cols = []
    for i in X1.quotient.kept:
        n, p, k, t = X1.labels[i]
        out = {}
        for m, c in g.data[t[k - 1]].items():
            tt = list(t)
            tt[k - 1] = m
            X2.vec(n, {p: 1}, k, tt, c, out)
        cols.append(X2.quotient.project(out))
    return Morphism(F1.carrier, F2.carrier, cols)


# -- linear endomorphism operad End_{M|A} -------------------------------------------------

class LinearEndOperad(Operad):
    """End_{M|A}: Hom(A^n, A) plus, for each slot k, Hom(A..M..A, M)."""

    def __init__(self, A, M, N):
        super().__init__(N, "End_{M|A}")
        self.A, self.M = A, M
        self.dA, self.dM = A.dim, M.dim
        self.permutation_basis = True
        self._index = {}

    def _labels(self, n):
        if n in self._index:
            return self._index[n]
        labs = [("A", o, t) for o in range(self.dA) for t in product(range(self.dA), repeat=n)]
        for k in range(1, n + 1):
            ranges = [range(self.dM) if j == k else range(self.dA) for j in range(1, n + 1)]
            labs += [("M", k, o, t) for o in range(self.dM) for t in product(*ranges)]
        out = (tuple(labs), {lab: i for i, lab in enumerate(labs)})
        self._index[n] = out
        return out

    def _basis(self, n):
        return self._labels(n)[0]

    def idx(self, n, lab):
        return self._labels(n)[1][lab]

    def _act(self, n, j, b):
        lab = self._labels(n)[0][b]
        if lab[0] == "A":
            return {self.idx(n, ("A", lab[1], _swap(lab[2], j))): 1}
        _, k, o, t = lab
        return {self.idx(n, ("M", _moved(k, j), o, _swap(t, j))): 1}

    def _compose(self, n, m, i, a, b):
        f = self._labels(n)[0][a]
        g = self._labels(m)[0][b]
        R = n + m - 1
        if f[0] == "A":
            if g[0] == "M":
                return {}
            _, o, t = f
            _, o2, t2 = g
            if t[i - 1] != o2:
                return {}
            return {self.idx(R, ("A", o, t[:i - 1] + t2 + t[i:])): 1}
        _, k, o, t = f
        if g[0] == "A":
            _, o2, t2 = g
            if i == k or t[i - 1] != o2:
                return {}
            kk = k if k < i else k + m - 1
            return {self.idx(R, ("M", kk, o, t[:i - 1] + t2 + t[i:])): 1}
        _, k2, o2, t2 = g
        if i != k or t[i - 1] != o2:
            return {}
        return {self.idx(R, ("M", i - 1 + k2, o, t[:i - 1] + t2 + t[i:])): 1}

    def _unit(self):
        out = {self.idx(1, ("A", o, (o,))): 1 for o in range(self.dA)}
        out.update({self.idx(1, ("M", 1, o, (o,))): 1 for o in range(self.dM)})
        return out


def linear_end_operad(A, M, N):
    return LinearEndOperad(A, M, N)


def end_inclusion(E):
    """End_{M|A} -> End_{M (+) A}; M indices first, then A indices shifted by dim M."""
    from .operads import EndOperad
    dM = E.dM
    S = Obj(VECTQ, tuple(("m", x) for x in E.M.basis) + tuple(("a", x) for x in E.A.basis))
    big = EndOperad(S, E.max_arity, name="End_{M+A}")

    def fn(n, b):
        lab = E.basis(n)[b]
        if lab[0] == "A":
            _, o, t = lab
            return {big.elementary(n, dM + o, tuple(dM + x for x in t)): 1}
        _, k, o, t = lab
        tt = tuple(x if j == k else dM + x for j, x in enumerate(t, 1))
        return {big.elementary(n, o, tt): 1}

    return OperadMorphism(E, big, fn, name="incl")


def module_to_end_map(M, E=None):
    """The operad map P -> End_{M|A} packaging gamma and mu."""
    A, P = M.algebra, M.operad
    E = E or LinearEndOperad(A.carrier, M.carrier, min(P.max_arity, M.max_arity))

    def fn(n, p):
        out = {}
        for t in product(range(A.dim), repeat=n):
            for o, c in A.gamma(n, p, t).items():
                out[E.idx(n, ("A", o, t))] = c
        for k in range(1, n + 1):
            for t in M.arg_tuples(n, k):
                for o, c in M.mu(n, k, p, t).items():
                    out[E.idx(n, ("M", k, o, t))] = c
        return out

    return OperadMorphism(P, E, fn, name="(gamma,mu)")


def end_map_to_module(phi, E):
    """Unpack an operad map P -> End_{M|A} into an algebra on A and a module M."""
    P = phi.source

    def gamma(n, p, args):
        out = {}
        for b, c in phi(n, p).items():
            lab = E.basis(n)[b]
            if lab[0] == "A" and lab[2] == tuple(args):
                out[lab[1]] = out.get(lab[1], 0) + c
        return {o: c for o, c in out.items() if c}

    A = Algebra(P, E.A, gamma, max_arity=E.max_arity, name="A")

    def mu(n, k, p, args):
        out = {}
        for b, c in phi(n, p).items():
            lab = E.basis(n)[b]
            if lab[0] == "M" and lab[1] == k and lab[3] == tuple(args):
                out[lab[2]] = out.get(lab[2], 0) + c
        return {o: c for o, c in out.items() if c}

    return A, AModule(A, E.M, mu, name="M")


# -- semidirect products and square-zero extensions ------------------------------------------

def semidirect(M):
    """M x| A on M (+) A: M basis first, then A; products with two M inputs vanish."""
    A, P = M.algebra, M.operad
    dM = M.dim
    carrier = Obj(VECTQ, tuple(("m", x) for x in M.carrier.basis) + tuple(("a", x) for x in A.carrier.basis))

    def gamma(n, p, args):
        ms = [j for j, x in enumerate(args, 1) if x < dM]
        if len(ms) > 1:
            return {}
        if not ms:
            return {dM + o: c for o, c in A.gamma(n, p, tuple(x - dM for x in args)).items()}
        k = ms[0]
        inner = tuple(x if j == k else x - dM for j, x in enumerate(args, 1))
        return dict(M.mu(n, k, p, inner))

    S = Algebra(P, carrier, gamma, max_arity=M.max_arity, name=f"{M.name}x|{A.name}")
    S.m_indices = list(range(dM))
    S.a_indices = list(range(dM, dM + A.dim))
    return S


def direct_sum_module(M1, M2):
    A = M1.algebra
    d1 = M1.dim
    carrier = Obj(VECTQ, tuple((0, x) for x in M1.carrier.basis) + tuple((1, x) for x in M2.carrier.basis))

    def mu(n, k, p, args):
        m = args[k - 1]
        if m < d1:
            return dict(M1.mu(n, k, p, args))
        inner = list(args)
        inner[k - 1] = m - d1
        return {d1 + o: c for o, c in M2.mu(n, k, p, tuple(inner)).items()}

    return AModule(A, carrier, mu, max_arity=min(M1.max_arity, M2.max_arity), name=f"{M1.name}+{M2.name}")


def square_zero_check(S, m_indices, A=None, M=None, max_arity=2):
    """gamma_2 vanishes on M (x) M; for semidirect products also check that
    the projection to A and the addition (M+M) x| A -> M x| A are algebra maps."""
    P = S.operad
    count = 0
    for p in range(P.dim(2)):
        for x in m_indices:
            for y in m_indices:
                count += 1
                if S.gamma(2, p, (x, y)):
                    return Violation(S.name, "square zero", {"p": p, "args": (x, y)})
    if A is not None and M is not None:
        dM = M.dim
        proj = AlgebraMap(S, A, lambda z: {} if z < dM else {z - dM: 1}, name="proj")
        cert = check_algebra_map(proj, max_arity=max_arity)
        if not cert:
            return cert
        count += cert.checked
        S2 = semidirect(direct_sum_module(M, M))

        def add(z):
            if z < 2 * dM:
                return {z % dM: 1}
            return {z - dM: 1}

        plus = AlgebraMap(S2, S, add, name="addition")
        cert = check_algebra_map(plus, max_arity=max_arity)
        if not cert:
            return cert
        count += cert.checked
    return Certificate(S.name, count)


def module_from_square_zero(S, m_indices, a_indices):
    """Read off an algebra on the A part and a module on the square-zero part."""
    P = S.operad
    mpos = {x: i for i, x in enumerate(m_indices)}
    apos = {x: i for i, x in enumerate(a_indices)}
    Aobj = Obj(VECTQ, tuple(S.carrier.basis[x] for x in a_indices))
    Mobj = Obj(VECTQ, tuple(S.carrier.basis[x] for x in m_indices))

    def gamma(n, p, args):
        out = S.gamma(n, p, tuple(a_indices[a] for a in args))
        if any(x in mpos for x in out):
            raise SchemaError("A part is not a subalgebra")
        return {apos[x]: c for x, c in out.items()}

    A = Algebra(P, Aobj, gamma, max_arity=S.max_arity, name="A")

    def mu(n, k, p, args):
        full = tuple(m_indices[x] if j == k else a_indices[x] for j, x in enumerate(args, 1))
        out = S.gamma(n, p, full)
        if any(x in apos for x in out):
            raise SchemaError("M part is not an ideal")
        return {mpos[x]: c for x, c in out.items()}

    return A, AModule(A, Mobj, mu, name="M")
