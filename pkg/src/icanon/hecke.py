"""
Hecke algebras of types A and B, parabolic modules, and hybrid bases.

Conventions: ``(H_s + q)(H_s - q^-1) = 0``, the bar involution sends ``H_s`` to
``H_s^-1 = H_s + (q - q^-1)`` and ``q`` to ``q^-1``. Modules are right modules.
``M_J`` is induced from ``H_w -> q^-l(w)`` on the parabolic subalgebra of J,
with standard basis ``M_w = M_e H_w`` for w in ^J W.

Vectors are dicts ``GroupElement -> LaurentPoly``.

>>> from icanon.weyl import CoxType
>>> H = algebra(CoxType("A", 3))
>>> w0 = H.W.longest()
>>> str(H.kl(w0)[H.W.e])
'q^3'
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Mapping

from .barsolve import BarSystem, TransitionMatrix, TriangularBasis, canonicalize
from .errors import BadCosetData, InvariantViolation
from .ring import ONE, LaurentPoly, Q
from .vectors import add_into, add_term, apply_antilinear
from .weyl import CoxeterGroup, CoxType, GroupElement, group

__all__ = [
    "HeckeAlgebra", "ParabolicModule", "algebra", "parabolic_module",
    "mul", "hecke_bar", "kl_basis", "parabolic_action", "parabolic_kl", "embed_pJ",
    "hybrid_basis", "decompose_GH", "decompose_MJ", "lemma_p_plus", "export_json", "export_record",
]

QDIFF = Q.bar() - Q  # q^-1 - q


class HeckeAlgebra:
    """Multiplication, bar involution, KL and hybrid bases for one CoxType, with memo tables."""

    def __init__(self, t: CoxType):
        self.type = t
        self.W: CoxeterGroup = group(t)
        self._bar_std: dict[GroupElement, dict] = {self.W.e: {self.W.e: ONE}}
        self._kl: TransitionMatrix | None = None
        self._hybrid: dict[frozenset, TriangularBasis] = {}
        self._modules: dict[frozenset, ParabolicModule] = {}

    def std(self, w: GroupElement) -> dict:
        return {w: ONE}

    # -- multiplication ---------------------------------------------------

    def mul_s(self, vec: Mapping, i: int) -> dict:
        """vec * H_{s_i}."""
        out: dict = {}
        W = self.W
        for w, c in vec.items():
            ws = W.right(w, i)
            if W.is_right_descent(w, i):
                add_term(out, ws, c)
                add_term(out, w, c * QDIFF)
            else:
                add_term(out, ws, c)
        return out

    def s_mul(self, i: int, vec: Mapping) -> dict:
        """H_{s_i} * vec."""
        out: dict = {}
        W = self.W
        for w, c in vec.items():
            sw = W.left(i, w)
            add_term(out, sw, c)
            if W.is_left_descent(w, i):
                add_term(out, w, c * QDIFF)
        return out

    def mul_std(self, vec: Mapping, y: GroupElement) -> dict:
        """vec * H_y."""
        for i in self.W.reduced_word(y):
            vec = self.mul_s(vec, i)
        return dict(vec)

    def mul(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for y, c in b.items():
            add_into(out, self.mul_std(a, y), c)
        return out

    # -- bar involution ---------------------------------------------------

    def bar_std(self, w: GroupElement) -> dict:
        """bar(H_w), computed as bar(H_{ws}) * (H_s + q - q^-1) along right descents."""
        if w not in self._bar_std:
            i = min(self.W.right_descents(w))
            prev = self.bar_std(self.W.right(w, i))
            out = self.mul_s(prev, i)
            add_into(out, prev, -QDIFF)
            self._bar_std[w] = out
        return self._bar_std[w]

    def bar(self, vec: Mapping) -> dict:
        return apply_antilinear(vec, self.bar_std)

    # -- Kazhdan-Lusztig basis -------------------------------------------

    def kl_table(self) -> TransitionMatrix:
        if self._kl is None:
            elems = list(self.W.elements())
            sysm = BarSystem(order=elems, bar={w: self.bar_std(w) for w in elems}, leq=self.W.bruhat_leq)
            self._kl = canonicalize(sysm)
        return self._kl

    def kl(self, w: GroupElement) -> dict:
        """The KL element with leading term H_w; values are p_{y,w}."""
        return self.kl_table().column(w)

    # -- hybrid bases -----------------------------------------------------

    def hybrid(self, I: Iterable[int], w: GroupElement) -> dict:
        """H_{p_-} * KL(w') for w = p_- w', p_- in W^I, w' in W_I."""
        pm, wp = self.W.right_factor(w, I)
        # lengths add, so H_{p_-} H_y = H_{p_- y}
        return {pm * y: c for y, c in self.kl(wp).items()}

    def hybrid_basis(self, I: Iterable[int]) -> TriangularBasis:
        I = frozenset(I)
        if I not in self._hybrid:
            self._hybrid[I] = TriangularBasis({w: self.hybrid(I, w) for w in self.W.elements()})
        return self._hybrid[I]

    def decompose_GH(self, I: Iterable[int], w: GroupElement) -> dict:
        """p^I_{y;w}: coefficients of KL(w) in the hybrid basis for I."""
        return self.hybrid_basis(I).expand(self.kl(w))

    def parabolic(self, J: Iterable[int]) -> "ParabolicModule":
        J = frozenset(J)
        if J not in self._modules:
            self._modules[J] = ParabolicModule(self, J)
        return self._modules[J]

    # -- text -------------------------------------------------------------

    def format(self, vec: Mapping, symbol: str = "H") -> str:
        keys = sorted(vec, key=lambda w: (self.W.length(w), w))
        parts = []
        for w in keys:
            c = vec[w]
            name = f"{symbol}_{{{self.W.format_word(w)}}}"
            parts.append(name if c == ONE else f"({c})*{name}")
        return " + ".join(parts) if parts else "0"


class ParabolicModule:
    """M_J = M_e * H with M_e * H_s = q^-1 M_e for s in J."""

    def __init__(self, H: HeckeAlgebra, J: Iterable[int]):
        self.H = H
        self.W = H.W
        self.J = frozenset(J)
        self.basis = self.W.min_coset_reps((), self.J, "left")
        self._basis_set = frozenset(self.basis)
        self._kl: TransitionMatrix | None = None
        self._hybrid: dict[frozenset, TriangularBasis] = {}
        self._wJ = self.W.longest(self.J)

    def is_index(self, w: GroupElement) -> bool:
        return w in self._basis_set

    def act_s(self, vec: Mapping, i: int) -> dict:
        """vec * H_{s_i}: ascent, descent, or stay inside W_J y."""
        out: dict = {}
        W = self.W
        for y, c in vec.items():
            ys = W.right(y, i)
            if ys not in self._basis_set:
                add_term(out, y, c * Q.bar())
            elif W.is_right_descent(y, i):
                add_term(out, ys, c)
                add_term(out, y, c * QDIFF)
            else:
                add_term(out, ys, c)
        return out

    def act(self, vec: Mapping, h: Mapping) -> dict:
        out: dict = {}
        for y, c in h.items():
            v = vec
            for i in self.W.reduced_word(y):
                v = self.act_s(v, i)
            add_into(out, v, c)
        return out

    def me_times(self, y: GroupElement) -> tuple[GroupElement, LaurentPoly]:
        """M_e * H_y = q^-l(x) M_z where y = x z, x in W_J, z in ^J W."""
        x, z = self.W.left_factor(y, self.J)
        return z, LaurentPoly.monomial(-self.W.length(x))

    def bar_std(self, w: GroupElement) -> dict:
        out: dict = {}
        for y, c in self.H.bar_std(w).items():
            z, f = self.me_times(y)
            add_term(out, z, c * f)
        return out

    def bar(self, vec: Mapping) -> dict:
        return apply_antilinear(vec, self.bar_std)

    def kl_table(self) -> TransitionMatrix:
        if self._kl is None:
            sysm = BarSystem(order=list(self.basis), bar={w: self.bar_std(w) for w in self.basis},
                             leq=self.W.bruhat_leq)
            self._kl = canonicalize(sysm)
        return self._kl

    def kl(self, w: GroupElement) -> dict:
        """underline{M_w}; values are p^+_{y,w}."""
        if w not in self._basis_set:
            raise BadCosetData(f"{w} is not a minimal coset representative for J={sorted(self.J)}")
        return self.kl_table().column(w)

    def embed(self, vec: Mapping) -> dict:
        """p_J^+: M_w -> KL(w_J) * H_w."""
        klJ = self.H.kl(self._wJ)
        out: dict = {}
        for w, c in vec.items():
            add_into(out, self.H.mul_std(klJ, w), c)
        return out

    # -- restriction to H_I -----------------------------------------------

    def double_cosets(self, I: Iterable[int]) -> list[GroupElement]:
        """Minimal representatives of W_J \\ W / W_I."""
        return self.W.min_coset_reps(self.J, I, "double")

    def coset_data(self, I: Iterable[int], p: GroupElement):
        """(p_-, K, K') for the double coset of p: K = p^-1 J p ∩ I, K' = J ∩ p I p^-1."""
        I = frozenset(I)
        pm = self.W.min_double_rep(p, self.J, I)
        K = self.W.conjugate_simples(I, pm.inverse(), self.J)
        Kp = self.W.conjugate_simples(self.J, pm, I)
        return pm, K, Kp

    def hybrid(self, I: Iterable[int], p: GroupElement, x: GroupElement) -> dict:
        """underline{M^I_{p_- x}} for x in W_I ∩ ^K W."""
        I = frozenset(I)
        pm, K, _ = self.coset_data(I, p)
        WI = set(self.W.parabolic(I))
        if x not in WI or not self.W.is_min_left(x, K):
            raise BadCosetData(f"{x} is not in W_I ∩ ^K W for I={sorted(I)}, K={sorted(K)}")
        inner = self.H.parabolic(K).kl(x)
        out: dict = {}
        for y, c in inner.items():
            add_into(out, self.act({pm: ONE}, {y: ONE}), c)
        return out

    def hybrid_elements(self, I: Iterable[int]) -> dict:
        """All underline{M^I_y}, y in ^J W, keyed by their leading index p_- x."""
        I = frozenset(I)
        out = {}
        for p in self.double_cosets(I):
            _, K, _ = self.coset_data(I, p)
            for x in self.W.parabolic(I):
                if self.W.is_min_left(x, K):
                    out[p * x] = self.hybrid(I, p, x)
        if set(out) != self._basis_set:
            raise InvariantViolation(f"parabolic hybrid indices do not match ^J W for I={sorted(I)}")
        return out

    def hybrid_basis(self, I: Iterable[int]) -> TriangularBasis:
        I = frozenset(I)
        if I not in self._hybrid:
            self._hybrid[I] = TriangularBasis(self.hybrid_elements(I))
        return self._hybrid[I]

    def decompose(self, I: Iterable[int], w: GroupElement) -> dict:
        """p^{I,+}_{y,w}: coefficients of underline{M_w} in the parabolic hybrid basis."""
        return self.hybrid_basis(I).expand(self.kl(w))

    def lemma_p_plus(self, I: Iterable[int], p: GroupElement, w: GroupElement) -> dict:
        """
        sum over r in W_J ∩ W^{K'} of
        q^(l(w_J) - l(r w_{K'} p_- w) + l(p_- w)) * hybrid_I(r w_{K'} p_- w).
        """
        I = frozenset(I)
        W = self.W
        pm, K, Kp = self.coset_data(I, p)
        if w not in set(W.parabolic(I)) or not W.is_min_left(w, K):
            raise BadCosetData(f"{w} is not in W_I ∩ ^K W for K={sorted(K)}")
        wKp = W.longest(Kp)
        lwJ = W.length(self._wJ)
        lpw = W.length(pm * w)
        out: dict = {}
        for r in W.parabolic(self.J):
            if not W.is_min_right(r, Kp):
                continue
            x = r * wKp * pm * w
            add_into(out, self.H.hybrid(I, x), LaurentPoly.monomial(lwJ - W.length(x) + lpw))
        return out


@lru_cache(maxsize=None)
def algebra(t: CoxType) -> HeckeAlgebra:
    return HeckeAlgebra(t)


def parabolic_module(t: CoxType, J: Iterable[int]) -> ParabolicModule:
    return algebra(t).parabolic(J)


# -- functional surface ------------------------------------------------------

def mul(t: CoxType, a: Mapping, b: Mapping) -> dict:
    return algebra(t).mul(a, b)


def hecke_bar(t: CoxType, a: Mapping) -> dict:
    return algebra(t).bar(a)


def kl_basis(t: CoxType, w: GroupElement) -> dict:
    return algebra(t).kl(w)


def parabolic_action(t: CoxType, J: Iterable[int], m: Mapping, h: Mapping) -> dict:
    return parabolic_module(t, J).act(m, h)


def parabolic_kl(t: CoxType, J: Iterable[int], w: GroupElement) -> dict:
    return parabolic_module(t, J).kl(w)


def embed_pJ(t: CoxType, J: Iterable[int], m: Mapping) -> dict:
    return parabolic_module(t, J).embed(m)


def hybrid_basis(t: CoxType, I: Iterable[int], w: GroupElement) -> dict:
    return algebra(t).hybrid(frozenset(I), w)


def decompose_GH(t: CoxType, I: Iterable[int], w: GroupElement) -> dict:
    return algebra(t).decompose_GH(frozenset(I), w)


def decompose_MJ(t: CoxType, I: Iterable[int], J: Iterable[int], w: GroupElement) -> dict:
    return parabolic_module(t, J).decompose(frozenset(I), w)


def lemma_p_plus(t: CoxType, I: Iterable[int], J: Iterable[int], p: GroupElement, w: GroupElement) -> dict:
    return parabolic_module(t, J).lemma_p_plus(frozenset(I), p, w)


def export_record(t: CoxType, basis: str, index: GroupElement, vec: Mapping) -> dict:
    """``{"basis", "index", "terms"}`` with words for indices and [exponent, coefficient] pairs for polynomials."""
    W = group(t)
    keys = sorted(vec, key=lambda w: (W.length(w), w))
    return {
        "basis": basis,
        "index": W.format_word(index),
        "terms": [[W.format_word(w), vec[w].to_json()] for w in keys],
    }


def export_json(t: CoxType, basis: str, index: GroupElement, vec: Mapping) -> str:
    return json.dumps(export_record(t, basis, index, vec), sort_keys=True)
