"""Label spaces for the free-algebra formula.

An ambient label ``(k, p, xs)`` stands for the element p (x) x_1 (x) ... (x) x_k
of P(n+k) (x) X^k, where p is a basis index of P(n+k) and xs a tuple of
generator indices.  The first n inputs of p are "real", the last k are fed
by generators.  Labels are ordered by k, then p, then xs, so quotients keep
the lowest-weight representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .base_cat import Obj
from .checks import cap_guard
from .errors import CapGuardError, SchemaError, TruncationError


@dataclass
class Presentation:
    """Generators of weight 1 plus relations.

    Each relation is a dict ``{(l, q, ys): coefficient}`` over free labels
    (arity-0 ambient labels); the relation says the sum vanishes.
    """

    operad: object
    gens: Obj
    relations: list = field(default_factory=list)
    weight_cap: int = 0

    @property
    def ngens(self):
        return self.gens.dim


def relation_weight(r):
    return max((l for (l, _, _) in r), default=0)


def term(k, p, xs, c=1):
    return {(k, p, tuple(xs)): c}


class Ambient:
    """All labels (k, p, xs) with k <= K for a fixed real arity n."""

    def __init__(self, P, n, d, K):
        if K < 0:
            raise SchemaError("weight cap must be nonnegative")
        if n + (K if d else 0) > P.max_arity:
            raise TruncationError(
                f"{P.name}: arity {n} with {K} generator slots needs P({n + K}), "
                f"truncation is {P.max_arity}")
        self.P, self.n, self.d = P, n, d
        self.K = K if d else 0
        size = sum(P.dim(n + k) * d ** k for k in range(self.K + 1))
        if size > cap_guard():
            raise CapGuardError(f"ambient space of size {size} exceeds the cap guard")
        labels = []
        for k in range(self.K + 1):
            tups = list(product(range(d), repeat=k))
            for p in range(P.dim(n + k)):
                for xs in tups:
                    labels.append((k, p, xs))
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}

    def __len__(self):
        return len(self.labels)

    def vec(self, k, pvec, xs, c=1, out=None):
        """Ambient vector of sum_b pvec[b] * (k, b, xs), accumulated into out."""
        out = {} if out is None else out
        index = self.index
        xs = tuple(xs)
        for b, e in pvec.items():
            i = index[(k, b, xs)]
            y = out.get(i, 0) + c * e
            if y:
                out[i] = y
            else:
                out.pop(i, None)
        return out

    def from_labels(self, r):
        out = {}
        for (l, q, ys), c in r.items():
            if l > self.K:
                raise TruncationError(f"relation term of weight {l} exceeds cap {self.K}")
            self.vec(l, {q: 1}, ys, c, out)
        return out

    def coinvariance(self):
        """Merges and general relations identifying [p.s; xs] with [p; s xs]
        for transpositions of the generator slots."""
        P, n = self.P, self.n
        merges, rels = [], []
        index = self.index
        for idx, (k, p, xs) in enumerate(self.labels):
            for j in range(1, k):
                v = P.act(n + k, n + j, p)
                ys = list(xs)
                ys[j - 1], ys[j] = ys[j], ys[j - 1]
                other = index[(k, p, tuple(ys))]
                if len(v) == 1:
                    (b, c), = v.items()
                    if c == 1:
                        merges.append((index[(k, b, xs)], other))
                        continue
                rel = self.vec(k, v, xs)
                rel[other] = rel.get(other, 0) - 1
                rels.append({i: c for i, c in rel.items() if c})
        return merges, rels

    def ideal_relations(self, relations):
        """Instances sum_t c_t [p o_last q_t; xs, ys_t] of each relation with
        p in P(n + k' + 1); an instance is skipped if any term overflows K."""
        P, n, d, K = self.P, self.n, self.d, self.K
        for r in relations:
            w = relation_weight(r)
            for k2 in range(0, K - w + 1):
                slot = n + k2 + 1
                P.check_arity(slot)
                tups = list(product(range(d), repeat=k2))
                for p in range(P.dim(slot)):
                    for xs in tups:
                        v = {}
                        for (l, q, ys), c in r.items():
                            comp = P.compose(slot, l, slot, p, q)
                            self.vec(k2 + l, comp, xs + ys, c, v)
                        if v:
                            yield v
