"""Sparse exact linear algebra over the rationals.

Vectors are plain dicts ``{index: coefficient}`` with int or Fraction
coefficients and no zero entries.  Floats are rejected at every entry point
that accepts user data.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational

Vec = dict


def check_scalar(c):
    if isinstance(c, bool) or not isinstance(c, (int, Rational)):
        raise TypeError(f"non-exact scalar {c!r}")
    return c


def normalize(c):
    """Return ints for integral Fractions so vectors compare cheaply."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def vadd(u, v, c=1):
    """u + c*v as a new vector."""
    out = dict(u)
    for i, x in v.items():
        y = out.get(i, 0) + c * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return out


def vaxpy(out, v, c=1):
    """In-place out += c*v."""
    for i, x in v.items():
        y = out.get(i, 0) + c * x
        if y:
            out[i] = y
        else:
            del out[i]
    return out


def vscale(v, c):
    if not c:
        return {}
    return {i: x * c for i, x in v.items()}


def vclean(v):
    return {i: normalize(x) for i, x in v.items() if x}


def lincomb(terms):
    """Sum of c * vec over an iterable of (c, vec)."""
    out = {}
    for c, v in terms:
        if c:
            vaxpy(out, v, c)
    return out


def vkey(v):
    """Hashable canonical form of a vector."""
    return tuple(sorted((i, normalize(x)) for i, x in v.items() if x))


class Echelon:
    """Incrementally maintained echelon basis of a subspace of Q^dim.

    Each stored row has its pivot at its *largest* index, so the kept
    (non-pivot) coordinates of the quotient are the earliest basis labels.
    The pivot set depends only on the subspace, never on insertion order.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        rows = self.rows
        v = dict(v)
        heap = [-i for i in v if i in rows]
        heapq.heapify(heap)
        while heap:
            p = -heapq.heappop(heap)
            c = v.get(p)
            if not c:
                continue
            for j, r in rows[p].items():
                old = v.get(j)
                nv = (old or 0) - c * r
                if nv:
                    v[j] = nv
                    if old is None and j in rows and j != p:
                        heapq.heappush(heap, -j)
                elif old is not None:
                    del v[j]
        return v

    def add(self, v):
        """Insert v; return True when the span grew."""
        w = self.reduce(v)
        if not w:
            return False
        p = max(w)
        c = w[p]
        if c != 1:
            w = {i: normalize(Fraction(x) / c) for i, x in w.items()}
        self.rows[p] = w
        return True

    def add_merge(self, a, b):
        """Insert e_a - e_b (cheap path for orbit relations)."""
        if a == b:
            return False
        return self.add({a: 1, b: -1})

    def contains(self, v):
        return not self.reduce(v)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]


class UnionFind:
    """Union-find whose class representative is the least element."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True

    def classes(self):
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


class Quotient:
    """Q^dim modulo the span of relation vectors, with canonical basis.

    ``merges`` are pairs (a, b) meaning e_a ~ e_b and go through union-find
    first; ``relations`` are arbitrary sparse vectors.
    """

    def __init__(self, dim, merges=(), relations=()):
        self.dim = dim
        uf = UnionFind(dim)
        for a, b in merges:
            uf.union(a, b)
        ech = Echelon(dim)
        for x in range(dim):
            r = uf.find(x)
            if r != x:
                ech.rows[x] = {x: 1, r: -1}
        self.echelon = ech
        for v in relations:
            ech.add(v)
        self._finish()

    def add_relations(self, relations):
        grew = False
        for v in relations:
            grew |= self.echelon.add(v)
        if grew:
            self._finish()
        return grew

    def _finish(self):
        rows = self.echelon.rows
        self.kept = [i for i in range(self.dim) if i not in rows]
        self.pos = {i: q for q, i in enumerate(self.kept)}

    def __len__(self):
        return len(self.kept)

    @property
    def rank(self):
        return len(self.echelon.rows)

    def project(self, v):
        w = self.echelon.reduce(v)
        pos = self.pos
        return {pos[i]: normalize(c) for i, c in w.items()}

    def project_index(self, i):
        return self.project({i: 1})

    def lift(self, q):
        return self.kept[q]

    def is_zero(self, v):
        return not self.echelon.reduce(v)


def rref(matrix):
    """Dense reduced row echelon form (classical left-to-right pivots).

    Returns (rows, pivot_columns).  Used for small dense problems and as an
    oracle against the sparse path.
    """
    m = [[Fraction(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(matrix):
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of {v : matrix v = 0} as dense lists."""
    if not matrix:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(matrix):
    """Exact inverse of a square matrix, or None when singular."""
    n = len(matrix)
    if n == 0:
        return []
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        return None
    return [[normalize(x) for x in row[n:]] for row in rows]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[normalize(sum(a[i][k] * b[k][j] for k in range(inner)))
             for j in range(cols)] for i in range(len(a))]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]
