"""The two concrete base categories: based Q-vector spaces and finite sets.

A VectQ morphism stores one sparse column per domain basis element; a FinSet
morphism stores the index of the image of each domain element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .errors import CategoryMismatch, SchemaError
from .linalg import Quotient, UnionFind, check_scalar, normalize

VECTQ = "vectq"
FINSET = "finset"


@dataclass(frozen=True)
class Obj:
    cat: str
    basis: tuple

    def __post_init__(self):
        if self.cat not in (VECTQ, FINSET):
            raise SchemaError(f"unknown category tag {self.cat!r}")
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(set(self.basis)) != len(self.basis):
            raise SchemaError("basis labels must be pairwise distinct")

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def index(self, label):
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {b: i for i, b in enumerate(self.basis)}
            object.__setattr__(self, "_index", idx)
        return idx[label]

    def __repr__(self):
        return f"Obj({self.cat}, dim={self.dim})"


def vect(basis):
    return Obj(VECTQ, tuple(basis))


def vect_n(n, prefix="e"):
    return Obj(VECTQ, tuple(f"{prefix}{i}" for i in range(n)))


def finset(elements):
    return Obj(FINSET, tuple(elements))


def unit(cat=VECTQ):
    return Obj(cat, ("1",))


def initial(cat=VECTQ):
    return Obj(cat, ())


def _same_cat(*objs):
    cats = {o.cat for o in objs}
    if len(cats) > 1:
        raise CategoryMismatch(f"mixed category tags {sorted(cats)}")
    return cats.pop() if cats else VECTQ


class Morphism:
    """A morphism dom -> cod in VectQ or FinSet."""

    __slots__ = ("dom", "cod", "data")

    def __init__(self, dom, cod, data):
        _same_cat(dom, cod)
        self.dom = dom
        self.cod = cod
        data = tuple(data)
        if len(data) != dom.dim:
            raise SchemaError("morphism data length must equal dim of domain")
        if dom.cat == VECTQ:
            cols = []
            for col in data:
                c = {}
                for i, x in col.items():
                    check_scalar(x)
                    if not 0 <= i < cod.dim:
                        raise SchemaError(f"row index {i} out of range")
                    if x:
                        c[i] = normalize(x)
                cols.append(c)
            data = tuple(cols)
        else:
            for j in data:
                if not 0 <= j < cod.dim:
                    raise SchemaError("function value outside codomain")
        self.data = data

    @property
    def cat(self):
        return self.dom.cat

    @classmethod
    def from_matrix(cls, dom, cod, rows):
        if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
            raise SchemaError("matrix shape must be (dim cod) x (dim dom)")
        cols = [{i: rows[i][j] for i in range(cod.dim) if rows[i][j]}
                for j in range(dom.dim)]
        return cls(dom, cod, cols)

    @classmethod
    def from_function(cls, dom, cod, fn):
        """VectQ: fn(j) returns a sparse column; FinSet: fn(j) an index."""
        return cls(dom, cod, [fn(j) for j in range(dom.dim)])

    @classmethod
    def identity(cls, x):
        if x.cat == VECTQ:
            return cls(x, x, [{i: 1} for i in range(x.dim)])
        return cls(x, x, range(x.dim))

    @classmethod
    def zero(cls, dom, cod):
        return cls(dom, cod, [{} for _ in range(dom.dim)])

    def matrix(self):
        if self.cat == VECTQ:
            rows = [[0] * self.dom.dim for _ in range(self.cod.dim)]
            for j, col in enumerate(self.data):
                for i, x in col.items():
                    rows[i][j] = x
            return rows
        rows = [[0] * self.dom.dim for _ in range(self.cod.dim)]
        for j, i in enumerate(self.data):
            rows[i][j] = 1
        return rows

    def apply(self, v):
        """Image of a sparse vector (VectQ) or an element index (FinSet)."""
        if self.cat == FINSET:
            return self.data[v]
        out = {}
        for j, c in v.items():
            linalg.vaxpy(out, self.data[j], c)
        return out

    def then(self, other):
        """other o self."""
        if self.cod != other.dom:
            raise SchemaError("composable morphisms required")
        if self.cat == FINSET:
            return Morphism(self.dom, other.cod, [other.data[i] for i in self.data])
        return Morphism(self.dom, other.cod, [other.apply(c) for c in self.data])

    def __matmul__(self, other):
        """self o other."""
        return other.then(self)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.data == other.data)

    def __hash__(self):
        return hash((self.dom, self.cod))

    def __add__(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod) or self.cat != VECTQ:
            raise SchemaError("parallel VectQ morphisms required")
        return Morphism(self.dom, self.cod,
                        [linalg.vadd(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod) or self.cat != VECTQ:
            raise SchemaError("parallel VectQ morphisms required")
        return Morphism(self.dom, self.cod,
                        [linalg.vadd(a, b, -1) for a, b in zip(self.data, other.data)])

    def scale(self, c):
        return Morphism(self.dom, self.cod, [linalg.vscale(a, c) for a in self.data])

    def is_iso(self):
        if self.dom.dim != self.cod.dim:
            return False
        if self.cat == FINSET:
            return len(set(self.data)) == self.dom.dim
        return linalg.rank(self.matrix()) == self.dom.dim if self.dom.dim else True

    def inverse(self):
        if self.cat == FINSET:
            if not self.is_iso():
                raise ValueError("not a bijection")
            inv = [0] * self.dom.dim
            for j, i in enumerate(self.data):
                inv[i] = j
            return Morphism(self.cod, self.dom, inv)
        inv = linalg.inverse(self.matrix())
        if inv is None:
            raise ValueError("morphism is not invertible")
        return Morphism.from_matrix(self.cod, self.dom, inv)

    def __repr__(self):
        return f"Morphism({self.dom!r} -> {self.cod!r})"


# -- monoidal structure ------------------------------------------------------

def tensor(x, y):
    _same_cat(x, y)
    return Obj(x.cat, tuple((a, b) for a in x.basis for b in y.basis))


def tensor_many(objs, cat=VECTQ):
    if not objs:
        return unit(cat)
    out = objs[0]
    for o in objs[1:]:
        out = tensor(out, o)
    return out


def tensor_maps(f, g):
    """f (x) g on Kronecker bases."""
    _same_cat(f.dom, g.dom)
    dom = tensor(f.dom, g.dom)
    cod = tensor(f.cod, g.cod)
    gd = g.cod.dim
    if f.cat == FINSET:
        return Morphism(dom, cod, [f.data[a] * gd + g.data[b]
                                   for a in range(f.dom.dim) for b in range(g.dom.dim)])
    cols = []
    for a in range(f.dom.dim):
        fa = f.data[a]
        for b in range(g.dom.dim):
            gb = g.data[b]
            cols.append({i * gd + k: x * y for i, x in fa.items() for k, y in gb.items()})
    return Morphism(dom, cod, cols)


def _perm_map(dom, cod, fn):
    if dom.cat == FINSET:
        return Morphism(dom, cod, [fn(j) for j in range(dom.dim)])
    return Morphism(dom, cod, [{fn(j): 1} for j in range(dom.dim)])


def swap(x, y):
    """Symmetry X (x) Y -> Y (x) X."""
    dom, cod = tensor(x, y), tensor(y, x)
    n = y.dim
    m = x.dim
    return _perm_map(dom, cod, lambda j: (j % n) * m + j // n)


def right_unitor(x):
    """X (x) I -> X."""
    return _perm_map(tensor(x, unit(x.cat)), x, lambda j: j)


def left_unitor(x):
    """I (x) X -> X."""
    return _perm_map(tensor(unit(x.cat), x), x, lambda j: j)


def associator(x, y, z):
    """(X (x) Y) (x) Z -> X (x) (Y (x) Z); both bases are row-major, so the
    matrix is the identity."""
    dom = tensor(tensor(x, y), z)
    cod = tensor(x, tensor(y, z))
    return _perm_map(dom, cod, lambda j: j)


# -- colimits ----------------------------------------------------------------

@dataclass
class Coproduct:
    obj: Obj
    injections: list

    def cotuple(self, maps):
        if len(maps) != len(self.injections):
            raise SchemaError("one map per summand required")
        if not maps:
            raise SchemaError("cotuple of an empty family needs a codomain; use zero maps")
        cod = maps[0].cod
        data = []
        for f in maps:
            if f.cod != cod:
                raise SchemaError("cotuple needs a common codomain")
            data.extend(f.data)
        return Morphism(self.obj, cod, data)


def coproduct(parts, cat=None):
    cat = _same_cat(*parts) if parts else (cat or VECTQ)
    basis = tuple((t, b) for t, p in enumerate(parts) for b in p.basis)
    obj = Obj(cat, basis)
    injections = []
    offset = 0
    for p in parts:
        injections.append(_perm_map(p, obj, lambda j, o=offset: j + o))
        offset += p.dim
    return Coproduct(obj, injections)


@dataclass
class Coequalizer:
    obj: Obj
    proj: Morphism
    quotient: object = field(repr=False, default=None)

    def factor(self, h):
        """The unique u with u o proj = h; raises if h does not coequalize."""
        src = self.proj.dom
        if h.dom != src:
            raise SchemaError("factorization needs a map out of the codomain")
        if src.cat == FINSET:
            data = [None] * self.obj.dim
            for j in range(src.dim):
                q = self.proj.data[j]
                if data[q] is None:
                    data[q] = h.data[j]
                elif data[q] != h.data[j]:
                    raise ValueError("map does not coequalize the pair")
            return Morphism(self.obj, h.cod, data)
        quo = self.quotient
        for row in quo.echelon.rows.values():
            if h.apply(row):
                raise ValueError("map does not coequalize the pair")
        return Morphism(self.obj, h.cod, [h.data[quo.lift(q)] for q in range(self.obj.dim)])


def _vect_quotient(x, relations):
    quo = Quotient(x.dim, relations=relations)
    obj = Obj(x.cat, tuple(x.basis[i] for i in quo.kept))
    proj = Morphism(x, obj, [quo.project_index(j) for j in range(x.dim)])
    return Coequalizer(obj, proj, quo)


def quotient_by(x, relations):
    """VectQ object modulo the span of the given sparse vectors."""
    return _vect_quotient(x, relations)


def coequalizer(f, g):
    if f.dom != g.dom or f.cod != g.cod:
        raise SchemaError("coequalizer needs a parallel pair")
    y = f.cod
    if f.cat == VECTQ:
        return _vect_quotient(y, (linalg.vadd(a, b, -1) for a, b in zip(f.data, g.data)))
    uf = UnionFind(y.dim)
    for a, b in zip(f.data, g.data):
        uf.union(a, b)
    reps = sorted(uf.classes())
    pos = {r: q for q, r in enumerate(reps)}
    obj = Obj(FINSET, tuple(y.basis[r] for r in reps))
    proj = Morphism(y, obj, [pos[uf.find(j)] for j in range(y.dim)])
    return Coequalizer(obj, proj, uf)


# -- symmetric objects -------------------------------------------------------

class SymObj:
    """An object with a Sigma_n action given by adjacent transpositions."""

    def __init__(self, carrier, degree, gens, validate=True):
        self.carrier = carrier
        self.degree = degree
        self.gens = tuple(gens)
        if len(self.gens) != max(degree - 1, 0):
            raise SchemaError(f"degree {degree} needs {max(degree - 1, 0)} generators")
        for g in self.gens:
            if g.dom != carrier or g.cod != carrier:
                raise SchemaError("action generators must be endomorphisms")
        if validate:
            bad = self.coxeter_violation()
            if bad is not None:
                raise SchemaError(f"Coxeter relation fails: {bad}")

    @property
    def dim(self):
        return self.carrier.dim

    def act(self, j, v):
        """s_j (1-based) applied to a sparse vector or FinSet index."""
        return self.gens[j - 1].apply(v)

    def act_word(self, word, v):
        for j in word:
            v = self.gens[j - 1].apply(v)
        return v

    def coxeter_violation(self):
        n = self.degree
        cat = self.carrier.cat
        basis = range(self.dim)
        start = (lambda b: b) if cat == FINSET else (lambda b: {b: 1})
        for b in basis:
            v = start(b)
            for i in range(1, n):
                if self.act_word((i, i), v) != v:
                    return ("s_i^2", i, b)
                if i + 1 < n and self.act_word((i, i + 1, i), v) != self.act_word((i + 1, i, i + 1), v):
                    return ("braid", i, b)
                for j in range(i + 2, n):
                    if self.act_word((i, j), v) != self.act_word((j, i), v):
                        return ("commute", i, j, b)
        return None

    @classmethod
    def trivial(cls, carrier, degree):
        ident = Morphism.identity(carrier)
        return cls(carrier, degree, [ident] * max(degree - 1, 0), validate=False)

    @classmethod
    def from_action(cls, carrier, degree, act, validate=True):
        """act(j, b) gives the image of basis index b under s_j."""
        gens = [Morphism.from_function(carrier, carrier, lambda b, j=j: act(j, b))
                for j in range(1, degree)]
        return cls(carrier, degree, gens, validate=validate)

    def is_permutation_action(self):
        if self.carrier.cat == FINSET:
            return True
        return all(len(c) == 1 and next(iter(c.values())) == 1
                   for g in self.gens for c in g.data)


def coinvariants(x: SymObj):
    """Quotient by the Sigma_n action: orbits (FinSet) or span{v - s v}."""
    c = x.carrier
    if c.cat == FINSET:
        uf = UnionFind(c.dim)
        for g in x.gens:
            for b in range(c.dim):
                uf.union(b, g.data[b])
        reps = sorted(uf.classes())
        pos = {r: q for q, r in enumerate(reps)}
        obj = Obj(FINSET, tuple(c.basis[r] for r in reps))
        return Coequalizer(obj, Morphism(c, obj, [pos[uf.find(b)] for b in range(c.dim)]), uf)
    if x.is_permutation_action():
        merges = [(b, next(iter(g.data[b]))) for g in x.gens for b in range(c.dim)]
        quo = Quotient(c.dim, merges=merges)
    else:
        rels = []
        for g in x.gens:
            for b in range(c.dim):
                rels.append(linalg.vadd({b: 1}, g.data[b], -1))
        quo = Quotient(c.dim, relations=rels)
    obj = Obj(c.cat, tuple(c.basis[i] for i in quo.kept))
    proj = Morphism(c, obj, [quo.project_index(j) for j in range(c.dim)])
    return Coequalizer(obj, proj, quo)


# -- internal hom ------------------------------------------------------------

def internal_hom(x, y):
    _same_cat(x, y)
    if x.cat == VECTQ:
        return Obj(VECTQ, tuple(("E", b, a) for b in y.basis for a in x.basis))
    funcs = product(range(y.dim), repeat=x.dim)
    return Obj(FINSET, tuple(tuple(y.basis[i] for i in f) for f in funcs))


def evaluation(x, y):
    """ev: Hom(X, Y) (x) X -> Y."""
    h = internal_hom(x, y)
    dom = tensor(h, x)
    m = x.dim
    if x.cat == VECTQ:
        cols = []
        for e in range(h.dim):
            b, a = divmod(e, m)
            for a2 in range(m):
                cols.append({b: 1} if a == a2 else {})
        return Morphism(dom, y, cols)
    data = []
    for f in h.basis:
        for a in range(m):
            data.append(y.index(f[a]))
    return Morphism(dom, y, data)


def curry(f, x):
    """Z (x) X -> Y  gives  Z -> Hom(X, Y)."""
    z = _left_factor(f.dom, x)
    y = f.cod
    h = internal_hom(x, y)
    m = x.dim
    if f.cat == VECTQ:
        cols = []
        for c in range(z.dim):
            col = {}
            for a in range(m):
                for b, v in f.data[c * m + a].items():
                    col[b * m + a] = v
            cols.append(col)
        return Morphism(z, h, cols)
    data = []
    for c in range(z.dim):
        image = tuple(y.basis[f.data[c * m + a]] for a in range(m))
        data.append(h.index(image))
    return Morphism(z, h, data)


def uncurry(g, x):
    """Z -> Hom(X, Y)  gives  Z (x) X -> Y, as ev o (g (x) id)."""
    hom = g.cod
    y = _hom_codomain(hom, x)
    return tensor_maps(g, Morphism.identity(x)).then(evaluation(x, y))


def _left_factor(t, x):
    if x.dim == 0:
        raise SchemaError("cannot split a tensor with an empty right factor")
    labels = []
    for i in range(0, t.dim, x.dim):
        labels.append(t.basis[i][0])
    return Obj(t.cat, tuple(labels))


def _hom_codomain(hom, x):
    if hom.cat == VECTQ:
        seen = []
        for lab in hom.basis:
            if lab[1] not in seen:
                seen.append(lab[1])
        return Obj(VECTQ, tuple(seen))
    raise SchemaError("FinSet uncurry needs an explicit codomain; use evaluation")


# -- JSON --------------------------------------------------------------------

def q_to_str(c):
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def str_to_q(s):
    if isinstance(s, bool) or isinstance(s, float):
        raise SchemaError(f"non-exact scalar {s!r}")
    if isinstance(s, int):
        return s
    try:
        return normalize(Fraction(str(s)))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def label_str(b):
    return b if isinstance(b, str) else repr(b)


def obj_to_json(x):
    return {"cat": x.cat, "basis": [label_str(b) for b in x.basis]}


def obj_from_json(d):
    try:
        return Obj(d["cat"], tuple(d["basis"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad object encoding: {exc}") from exc


def morphism_to_json(f):
    out = {"cat": f.cat, "dom": obj_to_json(f.dom)["basis"], "cod": obj_to_json(f.cod)["basis"]}
    if f.cat == VECTQ:
        out["matrix"] = [[q_to_str(x) for x in row] for row in f.matrix()]
    else:
        out["map"] = list(f.data)
    return out


def morphism_from_json(d):
    try:
        cat = d["cat"]
        dom = Obj(cat, tuple(d["dom"]))
        cod = Obj(cat, tuple(d["cod"]))
        if cat == VECTQ:
            rows = [[str_to_q(x) for x in row] for row in d["matrix"]]
            if not rows:
                rows = []
            return Morphism.from_matrix(dom, cod, rows)
        return Morphism(dom, cod, d["map"])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad morphism encoding: {exc}") from exc


def symobj_to_json(x):
    return {"cat": x.carrier.cat, "basis": obj_to_json(x.carrier)["basis"],
            "degree": x.degree, "gens": [morphism_to_json(g) for g in x.gens]}


def symobj_from_json(d):
    try:
        carrier = Obj(d["cat"], tuple(d["basis"]))
        gens = [morphism_from_json(g) for g in d["gens"]]
        gens = [Morphism(carrier, carrier, g.data) for g in gens]
        return SymObj(carrier, d["degree"], gens)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad symmetric object encoding: {exc}") from exc
