from hypothesis import given, strategies as st

from operadix import perms

perm4 = st.permutations([1, 2, 3, 4]).map(tuple)


@given(perm4, perm4, perm4)
def test_compose_is_associative(a, b, c):
    assert perms.compose(perms.compose(a, b), c) == perms.compose(a, perms.compose(b, c))


@given(perm4)
def test_inverse(a):
    assert perms.compose(a, perms.inverse(a)) == perms.identity(4)


@given(perm4)
def test_action_word_realises_the_permutation(a):
    cur = list(a)
    for j in perms.action_word(a):
        cur[j - 1], cur[j] = cur[j], cur[j - 1]
    assert tuple(cur) == perms.identity(4)


def test_all_perms_counts_and_order():
    assert [len(perms.all_perms(n)) for n in range(6)] == [1, 1, 2, 6, 24, 120]
    assert perms.all_perms(3)[:2] == ((1, 2, 3), (1, 3, 2))


@given(st.permutations([1, 2, 3]).map(tuple), st.integers(1, 3),
       st.permutations([1, 2]).map(tuple))
def test_substitute_gives_a_permutation(s, i, r):
    out = perms.substitute(s, i, r)
    assert perms.is_perm(out) and len(out) == 4
