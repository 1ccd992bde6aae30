import json
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from icanon.errors import BadCosetData
from icanon.hecke import (
    QDIFF, algebra, decompose_GH, decompose_MJ, embed_pJ, export_json, hecke_bar, hybrid_basis,
    kl_basis, lemma_p_plus, mul, parabolic_action, parabolic_kl,
)
from icanon.ring import ONE, Q, ZERO, LaurentPoly, is_nonneg
from icanon.vectors import add_into
from icanon.weyl import CoxType, group

from conftest import subsets

A2, A3, B2, B3 = CoxType("A", 3), CoxType("A", 4), CoxType("B", 2), CoxType("B", 3)


def braid_order(t, i, j):
    if abs(i - j) > 1:
        return 2
    if t.family == "B" and 0 in (i, j):
        return 4
    return 3


# -- classical KL polynomials as an independent oracle -------------------------

@lru_cache(maxsize=None)
def classical_kl(t: CoxType) -> dict:
    """P_{x,w}(u) by the original recursion, as polynomials in u stored with the variable Q."""
    W = group(t)
    elems = W.elements()
    ell = W.length
    P: dict = {}
    for w in elems:
        if w == W.e:
            P[(W.e, W.e)] = ONE
            continue
        s = min(W.left_descents(w))
        v = W.left(s, w)
        below_v = [z for z in elems if W.bruhat_leq(z, v)]
        mu = {}
        for z in below_v:
            if z != v and W.left(s, z) in W.lower_interval(z) and W.length(W.left(s, z)) < ell(z):
                d = ell(v) - ell(z)
                if d % 2 == 1:
                    c = P[(z, v)].coeff((d - 1) // 2)
                    if c:
                        mu[z] = c
        for x in elems:
            if not W.bruhat_leq(x, w):
                continue
            sx = W.left(s, x)
            c = 1 if ell(sx) < ell(x) else 0
            acc = P.get((sx, v), ZERO).shift(1 - c) + P.get((x, v), ZERO).shift(c)
            for z, m in mu.items():
                if W.bruhat_leq(x, z):
                    acc = acc - P[(x, z)].shift((ell(w) - ell(z)) // 2) * m
            P[(x, w)] = acc
    return P


def normalized(t, x, w) -> LaurentPoly:
    """p_{x,w} = q^{l(w)-l(x)} P_{x,w}(q^-2)."""
    W = group(t)
    P = classical_kl(t).get((x, w), ZERO)
    out = ZERO
    for e, c in P.terms():
        out = out + LaurentPoly.monomial(W.length(w) - W.length(x) - 2 * e, c)
    return out


@pytest.mark.parametrize("t", [A2, A3, B2, B3], ids=lambda t: t.name)
def test_kl_matches_classical_recursion(t):
    H = algebra(t)
    for w in H.W.elements():
        col = H.kl(w)
        for x in H.W.elements():
            assert col.get(x, ZERO) == normalized(t, x, w), (x, w)


# -- multiplication and bar -------------------------------------------------

def test_mul_examples():
    H = algebra(A2)
    W = H.W
    s1, s2 = W.s(1), W.s(2)
    assert mul(A2, {s1: ONE}, {s1: ONE}) == {W.e: ONE, s1: QDIFF}
    assert mul(A2, {s1: ONE}, {s2: ONE}) == {W.parse("s1 s2"): ONE}
    x = {W.longest(): Q, s2: ONE - Q}
    assert mul(A2, {W.e: ONE}, x) == x


def test_bar_examples():
    H = algebra(B2)
    W = H.W
    assert hecke_bar(B2, {W.e: ONE}) == {W.e: ONE}
    assert hecke_bar(B2, {W.s(0): ONE}) == {W.s(0): ONE, W.e: Q - Q ** -1}
    for w in W.elements():
        assert hecke_bar(B2, hecke_bar(B2, {w: ONE})) == {w: ONE}


@pytest.mark.parametrize("t", [A3, B3], ids=lambda t: t.name)
def test_quadratic_and_braid_relations_right_action(t):
    H = algebra(t)
    W = H.W
    for w in W.elements():
        v = {w: ONE}
        for i in t.generators:
            lhs = H.mul_s(H.mul_s(v, i), i)
            rhs = dict(v)
            add_into(rhs, H.mul_s(v, i), QDIFF)
            assert lhs == rhs
            for j in t.generators:
                if j <= i:
                    continue
                m = braid_order(t, i, j)
                a, b = dict(v), dict(v)
                for k in range(m):
                    a = H.mul_s(a, (i, j)[k % 2])
                    b = H.mul_s(b, (j, i)[k % 2])
                assert a == b


laurent = st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=3).map(LaurentPoly)


def hecke_vectors(t):
    W = group(t)
    return st.dictionaries(st.sampled_from(W.elements()), laurent, max_size=3).map(
        lambda d: {k: v for k, v in d.items() if v})


@settings(max_examples=30, deadline=None)
@given(hecke_vectors(B2), hecke_vectors(B2), hecke_vectors(B2))
def test_multiplication_associative_and_bar_multiplicative(a, b, c):
    assert mul(B2, mul(B2, a, b), c) == mul(B2, a, mul(B2, b, c))
    assert hecke_bar(B2, mul(B2, a, b)) == mul(B2, hecke_bar(B2, a), hecke_bar(B2, b))


# -- KL basis ---------------------------------------------------------------

def test_kl_examples():
    H = algebra(A2)
    W = H.W
    assert kl_basis(A2, W.e) == {W.e: ONE}
    assert kl_basis(A2, W.parse("s1 s2")) == {
        W.parse("s1 s2"): ONE, W.s(1): Q, W.s(2): Q, W.e: Q ** 2}


@pytest.mark.parametrize("t", [A3, B3], ids=lambda t: t.name)
def test_kl_bar_invariant_and_unitriangular(t):
    H = algebra(t)
    for w in H.W.elements():
        col = H.kl(w)
        assert H.bar(col) == col
        assert col[w] == ONE
        for y, c in col.items():
            if y != w:
                assert c.min_exp >= 1 and H.W.bruhat_leq(y, w)


@pytest.mark.parametrize("t", [A3, B3], ids=lambda t: t.name)
def test_kl_of_parabolic_longest_is_closed_form(t):
    W = group(t)
    for J in subsets(t.generators):
        wJ = W.longest(J)
        expected = {w: LaurentPoly.monomial(W.length(wJ) - W.length(w)) for w in W.parabolic(J)}
        assert kl_basis(t, wJ) == expected


# -- parabolic modules ----------------------------------------------------------

def test_parabolic_action_examples():
    W = group(A2)
    e, s1, s2 = W.e, W.s(1), W.s(2)
    J = {1}
    assert parabolic_action(A2, J, {e: ONE}, {s1: ONE}) == {e: Q ** -1}
    assert parabolic_action(A2, J, {e: ONE}, {s2: ONE}) == {s2: ONE}
    assert parabolic_action(A2, J, {s2: ONE}, {s2: ONE}) == {e: ONE, s2: QDIFF}
    assert parabolic_action(A2, set(), {e: ONE}, {s1: ONE}) == {s1: ONE}


def test_parabolic_kl_examples():
    W = group(A2)
    assert parabolic_kl(A2, {1}, W.s(2)) == {W.s(2): ONE, W.e: Q}
    assert parabolic_kl(A2, {1}, W.e) == {W.e: ONE}
    for w in W.elements():
        assert parabolic_kl(A2, set(), w) == kl_basis(A2, w)
    with pytest.raises(BadCosetData):
        parabolic_kl(A2, {1}, W.s(1))


@pytest.mark.parametrize("t", [A3, B3], ids=lambda t: t.name)
def test_embedding_intertwines_action_and_bar(t):
    H = algebra(t)
    for J in subsets(t.generators):
        M = H.parabolic(J)
        for w in M.basis:
            v = {w: ONE}
            assert M.embed(M.bar(v)) == H.bar(M.embed(v))
            for i in t.generators:
                assert M.embed(M.act_s(v, i)) == H.mul_s(M.embed(v), i)


def test_embed_examples():
    W = group(B2)
    for J in subsets(B2.generators):
        wJ = W.longest(J)
        assert embed_pJ(B2, J, {W.e: ONE}) == kl_basis(B2, wJ)
        for w in algebra(B2).parabolic(J).basis:
            assert embed_pJ(B2, J, parabolic_kl(B2, J, w)) == kl_basis(B2, wJ * w)
    for w in W.elements():
        assert embed_pJ(B2, set(), {w: ONE}) == {w: ONE}


# -- hybrid bases -------------------------------------------------------------

def test_hybrid_examples():
    W = group(B2)
    s0, s1 = W.s(0), W.s(1)
    for w in W.elements():
        assert hybrid_basis(B2, set(), w) == {w: ONE}
        assert hybrid_basis(B2, {0, 1}, w) == kl_basis(B2, w)
    expected = mul(B2, {s0: ONE}, {s1: ONE, W.e: Q})
    assert hybrid_basis(B2, {1}, W.parse("s0 s1")) == expected


def test_decompose_gh_boundaries():
    H = algebra(A2)
    W = H.W
    for w in W.elements():
        assert decompose_GH(A2, set(), w) == H.kl(w)
        assert decompose_GH(A2, {1, 2}, w) == {w: ONE}
    col = decompose_GH(A2, {1}, W.longest())
    assert all(is_nonneg(c) for c in col.values())


def test_decompose_mj_boundaries():
    H = algebra(B2)
    for J in subsets(B2.generators):
        M = H.parabolic(J)
        for w in M.basis:
            assert decompose_MJ(B2, set(), J, w) == M.kl(w)
    for w in H.W.elements():
        assert decompose_MJ(B2, {1}, set(), w) == decompose_GH(B2, {1}, w)
    M = H.parabolic({0})
    for w in M.basis:
        assert all(is_nonneg(c) for c in decompose_MJ(B2, {1}, {0}, w).values())


@pytest.mark.parametrize("t", [A3, B3], ids=lambda t: t.name)
def test_hybrid_synthesis_roundtrip(t):
    H = algebra(t)
    for I in subsets(t.generators):
        tb = H.hybrid_basis(I)
        for w in H.W.elements():
            assert tb.synthesize(H.decompose_GH(I, w)) == H.kl(w)


def test_lemma_p_plus_examples():
    H = algebra(B2)
    W = H.W
    M = H.parabolic(set())
    assert lemma_p_plus(B2, set(), set(), W.e, W.e) == {W.e: ONE}
    for s in B2.generators:
        M = H.parabolic({s})
        assert M.lemma_p_plus({s}, W.e, W.e) == M.embed(M.hybrid({s}, W.e, W.e))
        assert M.embed({W.e: ONE}) == {W.e: Q, W.s(s): ONE}
    M = H.parabolic({0})
    for p in M.double_cosets({1}):
        pm, K, _ = M.coset_data({1}, p)
        for w in W.parabolic({1}):
            if W.is_min_left(w, K):
                assert lemma_p_plus(B2, {1}, {0}, p, w) == M.embed(M.hybrid({1}, p, w))


def test_export_json_schema():
    H = algebra(A2)
    w0 = H.W.longest()
    doc = json.loads(export_json(A2, "kl", w0, H.kl(w0)))
    assert doc["basis"] == "kl" and doc["index"] == "s1 s2 s1"
    assert doc["terms"][0] == ["e", [[3, 1]]]
    assert doc["terms"][-1] == ["s1 s2 s1", [[0, 1]]]
