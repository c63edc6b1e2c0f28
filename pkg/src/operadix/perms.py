"""Permutations in one-line notation, 1-based values stored in tuples.

Convention used throughout the package: a permutation ``sigma`` acts on an
operation ``f`` of arity n by ``(f . sigma)(x_1, ..., x_n) =
f(x_sigma(1), ..., x_sigma(n))``.  Then ``(f . sigma) . tau = f . (tau o sigma)``,
and ``s_j`` (adjacent transposition of slots j, j+1) is its own inverse.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _perms


def identity(n):
    return tuple(range(1, n + 1))


def compose(a, b):
    """a o b (apply b first)."""
    return tuple(a[x - 1] for x in b)


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a, 1):
        out[x - 1] = i
    return tuple(out)


def transposition(n, j):
    p = list(range(1, n + 1))
    p[j - 1], p[j] = p[j], p[j - 1]
    return tuple(p)


@lru_cache(maxsize=None)
def all_perms(n):
    """Permutations of 1..n in lexicographic one-line order."""
    return tuple(_perms(range(1, n + 1)))


@lru_cache(maxsize=None)
def perm_index(n):
    return {p: i for i, p in enumerate(all_perms(n))}


@lru_cache(maxsize=4096)
def action_word(tau):
    """Adjacent transpositions j_1, j_2, ... such that acting by s_{j_1},
    then s_{j_2}, ... on the right realises the action of tau."""
    cur = list(tau)
    word = []
    n = len(cur)
    changed = True
    while changed:
        changed = False
        for j in range(1, n):
            if cur[j - 1] > cur[j]:
                cur[j - 1], cur[j] = cur[j], cur[j - 1]
                word.append(j)
                changed = True
    return tuple(word)


def is_perm(p):
    return sorted(p) == list(range(1, len(p) + 1))


def substitute(sigma, i, rho):
    """Block substitution of rho into position i of sigma.

    Reading sigma as the word x_sigma(1) ... x_sigma(n), the input x_i is
    replaced by the word of rho on a block of len(rho) fresh inputs.
    """
    m = len(rho)
    out = []
    for v in sigma:
        if v < i:
            out.append(v)
        elif v == i:
            out.extend(i - 1 + r for r in rho)
        else:
            out.append(v + m - 1)
    return tuple(out)


def block_move(sigma, i, m):
    """Rewrite (f . sigma) o_i g as (f o_t g) . tau.

    Returns (t, tau) where f has arity len(sigma), g has arity m and
    tau is a permutation of len(sigma) + m - 1 slots.
    """
    n = len(sigma)
    t = inverse(sigma)[i - 1]
    tau = []
    for s in range(1, n + 1):
        if s == t:
            tau.extend(range(i, i + m))
        else:
            v = sigma[s - 1]
            tau.append(v if v < i else v + m - 1)
    return t, tuple(tau)
