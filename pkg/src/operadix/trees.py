"""Coloured rooted trees and the labelled-tree sets u(T,c), u*(T,c), u-(T,c).

A tree is either the bare edge LEAF or a Vertex(coloured, children).  Trees
are kept in canonical form (children sorted by their term string), so two
trees are isomorphic exactly when they are equal.  A labelling of a tree is
the nested tuple (label, (child labellings...)), with None for a leaf.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import factorial

from .checks import Certificate, Violation, cap_guard
from .errors import CapGuardError, SchemaError

LEAF = "."
IDENTITY = "id"


@dataclass(frozen=True, eq=False)
class Vertex:
    coloured: bool
    children: tuple = ()

    def __post_init__(self):
        # trees are dictionary keys everywhere; hash once
        object.__setattr__(self, "_hash", hash((self.coloured, self.children)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Vertex) and self._hash == other._hash
                and self.coloured == other.coloured and self.children == other.children)

    @property
    def arity(self):
        return len(self.children)

    def __str__(self):
        head = f"{'C' if self.coloured else 'U'}{self.arity}"
        if not self.children:
            return head
        return head + "(" + ",".join(term(c) for c in self.children) + ")"


def term(T):
    """Parenthesized term, e.g. C2(U1(.),.)."""
    return LEAF if T == LEAF else str(T)


def vertex(coloured, children):
    """Vertex with children in canonical order."""
    return Vertex(coloured, tuple(sorted(children, key=term)))


def parse(s):
    """Inverse of term() (children are re-sorted into canonical order)."""
    pos = 0

    def node():
        nonlocal pos
        if s[pos] == ".":
            pos += 1
            return LEAF
        if s[pos] not in "CU":
            raise SchemaError(f"bad tree term at {pos}: {s!r}")
        coloured = s[pos] == "C"
        pos += 1
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise SchemaError(f"missing arity at {start}: {s!r}")
        arity = int(s[start:pos])
        kids = []
        if arity:
            if s[pos] != "(":
                raise SchemaError(f"expected '(' at {pos}: {s!r}")
            pos += 1
            for j in range(arity):
                kids.append(node())
                want = "," if j < arity - 1 else ")"
                if s[pos] != want:
                    raise SchemaError(f"expected {want!r} at {pos}: {s!r}")
                pos += 1
        return vertex(coloured, kids)

    try:
        out = node()
    except IndexError:
        raise SchemaError(f"truncated tree term: {s!r}") from None
    if pos != len(s):
        raise SchemaError(f"trailing characters in tree term: {s!r}")
    return out


def inputs(T):
    return 1 if T == LEAF else sum(inputs(c) for c in T.children)


def vertices(T):
    """Vertices in preorder."""
    if T == LEAF:
        return []
    out = [T]
    for c in T.children:
        out += vertices(c)
    return out


def size(T):
    return len(vertices(T))


def admissible(T):
    """Every vertex is coloured or unary."""
    return all(v.coloured or v.arity == 1 for v in vertices(T))


# -- enumeration -------------------------------------------------------------

class _Enumerator:
    def __init__(self, arity_cap):
        self.cap = arity_cap
        self.memo = {}

    def trees(self, k):
        """All coloured trees with exactly k vertices (any number of inputs)."""
        if k in self.memo:
            return self.memo[k]
        if k == 0:
            out = [LEAF]
        else:
            found = set()
            for arity in range(self.cap + 1):
                for split in _compositions(k - 1, arity):
                    pools = [self.trees(j) for j in split]
                    for kids in product(*pools):
                        for coloured in (False, True):
                            found.add(vertex(coloured, kids))
            out = sorted(found, key=term)
        self.memo[k] = out
        return out


def _compositions(total, parts):
    """Non-increasing tuples of `parts` nonnegative ints summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(total, -1, -1), parts):
        if sum(combo) == total:
            yield combo


def enumerate_trees(n, k, predicate=admissible, arity_cap=3):
    """Isomorphism classes of coloured trees with n inputs and k vertices."""
    if n < 0 or k < 0:
        raise SchemaError("n and k must be nonnegative")
    if k > 0 and arity_cap < 0:
        raise SchemaError("arity cap must be nonnegative")
    limit = cap_guard()
    if (arity_cap + 1) ** k > limit:
        raise CapGuardError(f"tree enumeration with k={k}, arity cap {arity_cap} exceeds the cap guard")
    pool = _Enumerator(arity_cap).trees(k)
    return [T for T in pool if inputs(T) == n and (predicate is None or predicate(T))]


def count_table(n_max=3, k_max=3, arity_cap=3, predicate=admissible):
    """{(n, k): number of classes}."""
    en = _Enumerator(arity_cap)
    table = {}
    for k in range(k_max + 1):
        pool = en.trees(k)
        for n in range(n_max + 1):
            table[(n, k)] = sum(1 for T in pool if inputs(T) == n
                                and (predicate is None or predicate(T)))
    return table


def count_table_csv(table):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "count"])
    for (n, k) in sorted(table):
        w.writerow([n, k, table[(n, k)]])
    return buf.getvalue()


# -- label sets --------------------------------------------------------------

@dataclass(eq=False)
class LabelSetPair:
    """Arity-indexed label sets K1(m) within K2(m); K1(1) holds the identity."""
    K1: dict = field(default_factory=dict)
    K2: dict = field(default_factory=dict)

    def __post_init__(self):
        self.K1 = {int(m): tuple(v) for m, v in self.K1.items()}
        self.K2 = {int(m): tuple(v) for m, v in self.K2.items()}
        if IDENTITY not in self.K1.get(1, ()):
            raise SchemaError("K1(1) must contain the identity")
        for m, labs in self.K1.items():
            if not set(labs) <= set(self.K2.get(m, ())):
                raise SchemaError(f"K1({m}) is not contained in K2({m})")
        self._key = (tuple(sorted(self.K1.items())), tuple(sorted(self.K2.items())))
        self._hash = hash(self._key)

    def key(self):
        return self._key

    def __eq__(self, other):
        return self is other or (isinstance(other, LabelSetPair) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def k1(self, m):
        return self.K1.get(m, ())

    def k2(self, m):
        return self.K2.get(m, ())


def sized_labels(sizes):
    """LabelSetPair from {m: (|K1(m)|, |K2(m)|)}; identity first in arity 1."""
    K1, K2 = {}, {}
    for m, (s1, s2) in sizes.items():
        if s1 > s2:
            raise SchemaError("K1 larger than K2")
        names = [f"k{m}_{j}" for j in range(s2)]
        if m == 1:
            names[0] = IDENTITY
        K1[m], K2[m] = names[:s1], names
    K1.setdefault(1, [IDENTITY])
    K2.setdefault(1, [IDENTITY])
    if IDENTITY not in K1[1]:
        raise SchemaError("K1(1) must contain the identity")
    return LabelSetPair(K1, K2)


# -- inductive sets ------------------------------------------------------------

def _labels_at(v, L):
    if v.arity not in L.K2 and v.arity not in L.K1:
        raise SchemaError(f"no labels given for arity {v.arity}")
    return L.k2(v.arity) if v.coloured else L.k1(v.arity)


@lru_cache(maxsize=65536)
def u_set(T, L):
    """u(T,c): uncoloured vertices labelled in K1, coloured ones in K2."""
    if T == LEAF:
        return frozenset({None})
    v = _v(T, L)
    return frozenset((lab, vs) for lab in _labels_at(T, L) for vs in v)


def _v(T, L):
    return set(product(*[u_set(c, L) for c in T.children]))


def _v_star(T, L):
    us = [u_set(c, L) for c in T.children]
    stars = [u_star_set(c, L) for c in T.children]
    out = set()
    for i in range(T.arity):
        factors = us[:i] + [stars[i]] + us[i + 1:]
        out |= set(product(*factors))
    return out


@lru_cache(maxsize=65536)
def u_star_set(T, L):
    """u*(T,c) by the three-case inductive formula."""
    if T == LEAF:
        return frozenset()
    vstar = _v_star(T, L)
    if not T.coloured:
        out = {(lab, vs) for lab in L.k1(T.arity) for vs in vstar}
        if T.arity == 1:
            out |= {(IDENTITY, vs) for vs in _v(T, L)}
        return frozenset(out)
    out = {(lab, vs) for lab in L.k2(T.arity) for vs in vstar}
    out |= {(lab, vs) for lab in L.k1(T.arity) for vs in _v(T, L)}
    return frozenset(out)


def _walk(T, x):
    """(vertex, label) pairs of a labelling x of T, in preorder."""
    if T == LEAF:
        return []
    lab, vs = x
    out = [(T, lab)]
    for c, y in zip(T.children, vs):
        out += _walk(c, y)
    return out


def in_u_minus(T, x, L):
    return any(v.coloured and lab in L.k1(v.arity) for v, lab in _walk(T, x))


def has_unary_identity(T, x):
    return any(v.arity == 1 and lab == IDENTITY for v, lab in _walk(T, x))


@lru_cache(maxsize=65536)
def u_minus_set(T, L):
    """Labelled trees with at least one coloured vertex labelled in K1."""
    return frozenset(x for x in u_set(T, L) if in_u_minus(T, x, L))


# -- brute force oracle --------------------------------------------------------

@lru_cache(maxsize=4096)
def _assembler(T):
    """Function from preorder labels to the nested labelling of T."""
    def build(S, i):
        if S == LEAF:
            return None, i
        idx = i
        i += 1
        parts = []
        for c in S.children:
            f, i = build(c, i)
            parts.append(f)
        if all(f is None for f in parts):
            leaves = (None,) * len(parts)
            return (lambda labs: (labs[idx], leaves)), i
        return (lambda labs: (labs[idx], tuple(None if f is None else f(labs) for f in parts))), i

    fn, _ = build(T, 0)
    return fn


def _assemble(T, labels):
    """Nested labelling from preorder labels."""
    return None if T == LEAF else _assembler(T)(tuple(labels))


def all_labellings(T, L):
    """u(T,c) by direct enumeration over the vertices."""
    vs = vertices(T)
    pools = [_labels_at(v, L) for v in vs]
    total = 1
    for p in pools:
        total *= len(p)
    if total > cap_guard():
        raise CapGuardError(f"{total} labellings exceed the cap guard")
    return {_assemble(T, labs) for labs in product(*pools)}


def brute_force_u_star(T, L):
    """Filter: in u-(T,c), or some unary vertex labelled by the identity."""
    vs = vertices(T)
    pools = [_labels_at(v, L) for v in vs]
    total = 1
    for p in pools:
        total *= len(p)
    if total > cap_guard():
        raise CapGuardError(f"{total} labellings exceed the cap guard")
    k1 = [set(L.k1(v.arity)) if v.coloured else () for v in vs]
    unary = [v.arity == 1 for v in vs]
    out = set()
    make = _assembler(T)
    for labs in product(*pools):
        if any(lab in k for lab, k in zip(labs, k1)) or \
                any(u and lab == IDENTITY for lab, u in zip(labs, unary)):
            out.add(make(labs))
    return frozenset(out)


# -- automorphisms -------------------------------------------------------------

def aut_generators(T, path=()):
    """Adjacent swaps (path, j) of identical children, at every vertex."""
    if T == LEAF:
        return []
    gens = []
    for j in range(T.arity - 1):
        if T.children[j] == T.children[j + 1]:
            gens.append((path, j))
    for j, c in enumerate(T.children):
        gens += aut_generators(c, path + (j,))
    return gens


def aut_order(T):
    if T == LEAF:
        return 1
    order = 1
    groups = {}
    for c in T.children:
        groups[c] = groups.get(c, 0) + 1
    for c, mult in groups.items():
        order *= factorial(mult) * aut_order(c) ** mult
    return order


def apply_generator(gen, x):
    path, j = gen
    if not path:
        lab, vs = x
        vs = list(vs)
        vs[j], vs[j + 1] = vs[j + 1], vs[j]
        return (lab, tuple(vs))
    lab, vs = x
    vs = list(vs)
    vs[path[0]] = apply_generator((path[1:], j), vs[path[0]])
    return (lab, tuple(vs))


@dataclass
class AutGroup:
    tree: object
    generators: list
    order: int

    def orbit(self, x):
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in self.generators:
                z = apply_generator(g, y)
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        return seen


def aut_group(T):
    return AutGroup(T, aut_generators(T), aut_order(T))


def equivariance_certificate(T, L, G=None):
    """u- within u* within u, and u*, u- unions of Aut(T,c)-orbits."""
    G = G or aut_group(T)
    u = u_set(T, L)
    star = u_star_set(T, L)
    minus = u_minus_set(T, L)
    if not star <= u:
        return Violation(term(T), "u* inside u", {"extra": sorted(map(repr, star - u))[:3]})
    if not minus <= star:
        return Violation(term(T), "u- inside u*", {"extra": sorted(map(repr, minus - star))[:3]})
    count = 0
    # u is every labelling, so closed by construction; check the two subsets
    for S, name in ((star, "u*"), (minus, "u-")):
        if not G.generators:
            break
        for x in S:
            for g in G.generators:
                count += 1
                y = apply_generator(g, x)
                if y not in S:
                    return Violation(term(T), f"{name} closed under Aut", {"element": repr(x)})
    return Certificate(term(T), count, {"aut_order": G.order, "u": len(u), "u*": len(star),
                                        "u-": len(minus)})


# -- exhaustive cross-validation ----------------------------------------------

def label_size_choices(max_size=3):
    """(|K1|, |K2|) pairs per arity; arity 1 keeps the identity in K1."""
    out = [(s1, s2) for s2 in range(max_size + 1) for s1 in range(s2 + 1)]
    unary = [(s1, s2) for (s1, s2) in out if s1 >= 1]
    return out, unary


def cross_validate(max_vertices=3, arity_cap=3, max_labels=3):
    """u_star_set against brute_force_u_star, plus the orbit certificate,
    over every coloured tree and every label-size pattern on its arities."""
    general, unary = label_size_choices(max_labels)
    en = _Enumerator(arity_cap)
    checked = trees = 0
    degenerate = 0
    for k in range(max_vertices + 1):
        for T in en.trees(k):
            trees += 1
            ars = sorted({v.arity for v in vertices(T)})
            G = aut_group(T)
            pools = [unary if m == 1 else general for m in ars]
            for choice in product(*pools):
                L = sized_labels(dict(zip(ars, choice)))
                checked += 1
                if u_star_set(T, L) != brute_force_u_star(T, L):
                    return Violation(term(T), "u* = brute force", {"sizes": dict(zip(ars, choice))})
                cert = equivariance_certificate(T, L, G)
                if not cert:
                    return cert
            for s in range(1, max_labels + 1):
                L = sized_labels({m: (s, s) for m in ars})
                if any(v.coloured for v in vertices(T)):
                    degenerate += 1
                    if u_minus_set(T, L) != u_set(T, L) or u_star_set(T, L) != u_set(T, L):
                        return Violation(term(T), "K1 = K2 gives u* = u", {"size": s})
    return Certificate("trees", checked, {"trees": trees, "degenerate": degenerate})


def labelling_term(T, x):
    """Labelled tree as a term, e.g. p(a(.),.)."""
    if T == LEAF:
        return LEAF
    lab, vs = x
    if not T.children:
        return str(lab)
    return f"{lab}(" + ",".join(labelling_term(c, y) for c, y in zip(T.children, vs)) + ")"
