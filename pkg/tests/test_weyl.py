import itertools

import pytest

from conftest import make
from stratcomb.errors import InternalConsistencyError
from stratcomb.poset import Poset, parse_dot_edges
from stratcomb.weyl import generate_weyl, weyl_group

SMALL = [("GL", 2, None), ("GL", 3, None), ("GL", 4, None), ("GL", 3, (2, 1)), ("GL", 4, "opposite"),
         ("SL", 3, None), ("Sp", 4, None), ("Sp", 6, None), ("GSp", 4, None)]


def subsets(n):
    for k in range(n + 1):
        yield from itertools.combinations(range(1, n + 1), k)


@pytest.mark.parametrize("case,order", [(("GL", 2), 2), (("GL", 3), 6), (("Sp", 4), 8), (("Sp", 6), 48),
                                        (("GL", 5), 120)])
def test_orders(case, order):
    assert len(generate_weyl(make(*case))) == order


def test_signed_permutation_oracle_sp4():
    W = weyl_group(make("Sp", 4))
    mats = {w.matrix for w in W}
    brute = set()
    for perm in itertools.permutations(range(2)):
        for signs in itertools.product((1, -1), repeat=2):
            brute.add(tuple(tuple(signs[i] if perm[i] == j else 0 for j in range(2)) for i in range(2)))
    assert mats == brute


@pytest.mark.parametrize("case", SMALL)
def test_words_and_lengths(case):
    d = make(*case)
    W = weyl_group(d)
    pos = [d.roots[i] for i in d.positive_indices]
    for w in W:
        assert W.from_word(w.word) == w
        neg = sum(1 for c in d.positive_coroots if d.coroot_index[w(c)] not in set(d.positive_indices))
        assert neg == w.length
    keys = [(w.length, w.word) for w in W]
    assert keys == sorted(keys)
    assert len(pos) == W.w0.length


def test_bruhat_examples():
    W = weyl_group(make("GL", 3))
    s1, s2 = W.simple_reflections
    assert all(W.bruhat_leq(W.identity, w) for w in W)
    assert W.bruhat_leq(s1, W.mul(s1, s2))
    assert not W.bruhat_leq(s1, s2)


@pytest.mark.parametrize("case", SMALL)
def test_bruhat_sanity(case):
    W = weyl_group(make(*case))
    for u in W:
        assert W.bruhat_leq(W.identity, u) and W.bruhat_leq(u, W.w0)
        for w in W:
            if u != w and W.bruhat_leq(u, w):
                assert u.length < w.length


def test_bruhat_against_subword_oracle():
    W = weyl_group(make("GL", 4))
    for w in W:
        sub = set()
        for mask in itertools.product((0, 1), repeat=w.length):
            sub.add(W.from_word([s for s, b in zip(w.word, mask) if b]))
        for u in W:
            assert W.bruhat_leq(u, w) == (u in sub)


def test_longest_elements():
    W3 = weyl_group(make("GL", 3))
    assert W3.w0.length == 3
    assert W3.longest_element({2}).word == (2,)
    assert weyl_group(make("GL", 2)).longest_element(set()) == weyl_group(make("GL", 2)).identity


def test_min_coset_reps_examples():
    W2 = weyl_group(make("GL", 2))
    assert len(W2.min_coset_reps(set())) == 2
    W3 = weyl_group(make("GL", 3))
    assert len(W3.min_coset_reps({2})) == 3
    assert W3.min_coset_reps({1, 2}) == [W3.identity]


@pytest.mark.parametrize("case", SMALL)
def test_min_coset_reps_by_brute_force(case):
    W = weyl_group(make(*case))
    for J in subsets(W.rank):
        WJ = W.parabolic(J)
        reps = W.min_coset_reps(J)
        cosets = {}
        for w in W:
            key = frozenset(W.mul(u, w) for u in WJ)
            cosets.setdefault(key, []).append(w)
        brute = sorted((min(c, key=lambda x: x.length) for c in cosets.values()), key=lambda x: x.index)
        assert sorted(reps, key=lambda x: x.index) == brute
        for w in reps:
            assert all(W.mul(u, w).length == u.length + w.length for u in WJ)


def test_eo_leq_examples():
    W2 = weyl_group(make("GL", 2))
    s = W2.simple_reflections[0]
    assert W2.eo_leq(W2.identity, s, set())
    assert not W2.eo_leq(s, W2.identity, set())
    W3 = weyl_group(make("GL", 3))
    poset = W3.eo_poset({2})
    assert [w.length for w in poset.labels] == [0, 1, 2]
    assert len(poset.covers()) == 2 and len(poset.relations()) == 3
    with pytest.raises(ValueError):
        W3.eo_leq(W3.simple_reflections[1], W3.identity, {2})


@pytest.mark.parametrize("case", SMALL)
def test_eo_poset_laws(case):
    W = weyl_group(make(*case))
    for J in subsets(W.rank):
        poset = W.eo_poset(J)
        reps = poset.labels
        for i, a in enumerate(reps):
            assert poset.leq(i, i)
            for j, b in enumerate(reps):
                assert poset.leq(i, j) == W.eo_leq(a, b, J)
                if W.bruhat_leq(a, b):
                    assert poset.leq(i, j)
        wmax = W.mul(W.longest_element(J), W.w0)
        assert wmax.length == W.w0.length - W.longest_element(J).length
        assert len(reps) * len(W.parabolic(J)) == len(W)


def test_split_equals_trivial_permutation():
    a = weyl_group(make("GL", 4))
    b = weyl_group(make("GL", 4, (1, 2, 3)))
    for J in subsets(3):
        assert a.eo_poset(J).relations() == b.eo_poset(J).relations()


def test_poset_rejects_non_partial_order():
    p = Poset(["a", "b"], [0b11, 0b11])
    with pytest.raises(InternalConsistencyError):
        p.check_partial_order()


def test_dot_roundtrip():
    W = weyl_group(make("GL", 4))
    poset = W.eo_poset({1, 3})
    assert parse_dot_edges(poset.to_dot()) == set(poset.covers())
