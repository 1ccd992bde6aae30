from collections import deque
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from icanon.weyl import CoxType, GroupElement, bruhat_leq, group, hk_factorize, length, min_coset_reps

from conftest import subsets

TYPES = [CoxType("A", 3), CoxType("A", 4), CoxType("B", 2), CoxType("B", 3)]


@lru_cache(maxsize=None)
def bfs_lengths(t: CoxType) -> dict:
    """Word length in the Cayley graph, by breadth-first search from e."""
    W = group(t)
    dist = {W.e: 0}
    queue = deque([W.e])
    while queue:
        w = queue.popleft()
        for i in t.generators:
            x = W.right(w, i)
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


@lru_cache(maxsize=None)
def bruhat_closure(t: CoxType) -> frozenset:
    """Pairs (y, w) with y <= w: transitive closure of y -> y t, t a reflection, length going up."""
    W = group(t)
    lengths = bfs_lengths(t)
    refl = {W.left(i, W.e) for i in t.generators}
    refl = {x * r * x.inverse() for x in W.elements() for r in refl}
    up = {y: [y * r for r in refl if lengths[y * r] > lengths[y]] for y in W.elements()}
    pairs = set()
    for y in W.elements():
        seen = {y}
        stack = [y]
        while stack:
            z = stack.pop()
            for x in up[z]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        pairs |= {(y, w) for w in seen}
    return frozenset(pairs)


@pytest.mark.parametrize("t", TYPES, ids=lambda t: t.name)
def test_length_matches_cayley_distance(t):
    W = group(t)
    d = bfs_lengths(t)
    assert len(d) == len(W.elements())
    for w in W.elements():
        assert length(w) == d[w] == len(W.reduced_word(w))
        assert W.from_word(W.reduced_word(w)) == w


@pytest.mark.parametrize("t", TYPES, ids=lambda t: t.name)
def test_bruhat_matches_reflection_closure(t):
    W = group(t)
    pairs = bruhat_closure(t)
    for y in W.elements():
        for w in W.elements():
            assert W.bruhat_leq(y, w) == ((y, w) in pairs)


@pytest.mark.parametrize("t", TYPES, ids=lambda t: t.name)
def test_coset_reps_are_minimal_by_brute_force(t):
    W = group(t)
    lengths = bfs_lengths(t)
    for I in subsets(t.generators):
        for J in subsets(t.generators):
            WI, WJ = W.parabolic(I), W.parabolic(J)
            left = {min((x * w for x in WJ), key=lambda z: (lengths[z], z)) for w in W.elements()}
            right = {min((w * x for x in WJ), key=lambda z: (lengths[z], z)) for w in W.elements()}
            double = {min((a * w * b for a in WI for b in WJ), key=lambda z: (lengths[z], z))
                      for w in W.elements()}
            assert set(W.min_coset_reps(frozenset(), J, "left")) == left
            assert set(W.min_coset_reps(frozenset(), J, "right")) == right
            assert set(W.min_coset_reps(I, J, "double")) == double


@pytest.mark.parametrize("t", [CoxType("A", 4), CoxType("B", 3)], ids=lambda t: t.name)
def test_hk_factorization_is_a_bijection(t):
    W = group(t)
    for I in subsets(t.generators):
        for J in subsets(t.generators):
            seen = set()
            for w in W.elements():
                u, pm, v, K = W.hk_factorize(w, I, J)
                assert u * pm * v == w
                assert length(w) == length(u) + length(pm) + length(v)
                assert u in W.parabolic(I) and W.is_min_right(u, K)
                assert v in W.parabolic(J)
                assert pm in W.min_coset_reps(I, J, "double")
                seen.add((u, pm, v))
            assert len(seen) == len(W.elements())


def test_length_examples():
    A2, B2 = group(CoxType("A", 3)), group(CoxType("B", 2))
    assert length(A2.e) == 0
    assert A2.longest() == GroupElement([3, 2, 1])
    assert length(A2.longest()) == 3
    assert length(B2.longest()) == 4


def test_bruhat_examples():
    W = group(CoxType("A", 3))
    s1s2, s2s1 = W.parse("s1 s2"), W.parse("s2 s1")
    for w in W.elements():
        assert bruhat_leq(W.e, w)
        assert bruhat_leq(w, w)
    assert not bruhat_leq(s1s2, s2s1)


def test_coset_examples():
    A2 = CoxType("A", 3)
    W = group(A2)
    left = min_coset_reps(A2, frozenset(), {1}, "left")
    assert [W.format_word(x) for x in left] == ["e", "s2", "s2 s1"]
    assert set(min_coset_reps(A2, frozenset(), frozenset(), "left")) == set(W.elements())
    double = min_coset_reps(A2, {1}, {2}, "double")
    assert [W.format_word(x) for x in double] == ["e", "s2 s1"]


def test_hk_examples():
    A2 = CoxType("A", 3)
    W = group(A2)
    assert hk_factorize(W.e, {1}, {2}, A2) == (W.e, W.e, W.e, frozenset())
    u, pm, v, K = hk_factorize(W.parse("s1 s2"), {1}, {2}, A2)
    assert (u, pm, v, K) == (W.s(1), W.e, W.s(2), frozenset())
    B2 = CoxType("B", 2)
    V = group(B2)
    assert hk_factorize(V.s(0), {0}, {0}, B2) == (V.e, V.e, V.s(0), frozenset({0}))


def test_parse_and_format_roundtrip():
    W = group(CoxType("B", 3))
    for w in W.elements():
        assert W.parse(W.format_word(w)) == w
        assert W.parse(str(w)) == w
    with pytest.raises(ValueError):
        W.parse("[1, 1, 2]")


@settings(max_examples=60)
@given(st.lists(st.integers(0, 2), max_size=12), st.lists(st.integers(0, 2), max_size=12))
def test_inverse_and_product_lengths(a, b):
    W = group(CoxType("B", 3))
    x, y = W.from_word(a), W.from_word(b)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert length(x.inverse()) == length(x)
    assert length(x * y) <= length(x) + length(y)
    assert (length(x * y) - length(x) - length(y)) % 2 == 0
