import itertools

from hypothesis import given, strategies as st

from qwreath.perm import (CoxeterGroup, all_perms, all_signed, bruhat_leq, compatible_reduced_family, compose,
                          from_word, identity, inverse, is_compatible_family, length, longest, parse_perm,
                          format_perm, reduced_word, s_a_to_b, s_a_to_b_to_a, w_ab, w_ab_word)

perms4 = st.sampled_from(all_perms(4))
signed3 = st.sampled_from(all_signed(3))


def inversions(w):
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


@given(perms4)
def test_length_counts_inversions(w):
    assert length(w) == inversions(w)


@given(perms4, st.sampled_from(["min", "max"]))
def test_reduced_word_round_trip(w, tie):
    word = reduced_word(w, tie)
    assert len(word) == length(w)
    assert from_word(word, 4) == w


@given(perms4, perms4, perms4)
def test_composition_is_a_group_law(x, y, z):
    assert compose(compose(x, y), z) == compose(x, compose(y, z))
    assert compose(x, inverse(x)) == identity(4)


@given(signed3)
def test_signed_reduced_words(w):
    word = reduced_word(w, "min", True)
    assert from_word(word, 3, True) == w


@given(perms4, perms4)
def test_bruhat_subword_property(x, y):
    if bruhat_leq(x, y):
        assert length(x) <= length(y)
        if length(x) == length(y):
            assert x == y


def test_bruhat_extremes():
    e, w0 = identity(4), longest(4)
    assert all(bruhat_leq(e, w) and bruhat_leq(w, w0) for w in all_perms(4))


def test_group_sizes_and_longest():
    assert len(CoxeterGroup("A", 4)) == 24
    assert len(CoxeterGroup("B", 3)) == 48
    G = CoxeterGroup("B", 2)
    assert G.length[G.longest] == 4


def test_group_tables():
    G = CoxeterGroup("A", 3)
    for k, w in enumerate(G.elements):
        for i in G.gens:
            assert G.rmul[i][G.rmul[i][k]] == k
        assert G.from_word(G.words[k]) == k


def test_compatible_families():
    for d in (2, 3, 4):
        assert is_compatible_family(compatible_reduced_family(d, "min"))
        assert is_compatible_family(compatible_reduced_family(d, "max"))


def test_wreath_elements():
    assert w_ab(1, 1) == (2, 1)
    assert w_ab(2, 2) == (3, 4, 1, 2)
    assert from_word(w_ab_word(2, 2), 4) == w_ab(2, 2)
    assert list(s_a_to_b(1, 3)) == [1, 2, 3]
    assert list(s_a_to_b(3, 1)) == [3, 2, 1]
    assert list(s_a_to_b_to_a(1, 3)) == [1, 2, 3, 2, 1]


def test_parse_and_format():
    w = (3, 1, 2)
    assert parse_perm(format_perm(w), 3) == w
