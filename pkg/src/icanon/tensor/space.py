"""
Tensor spaces V^{⊗m} of the natural sl(n+1) module and their wedge quotients.

Letters are 1..n+1 and a word is a tuple of letters; ``v_f`` is the tensor of
the corresponding basis vectors. On V,

    E_i v_j = δ_{j,i+1} v_i,   F_i v_j = δ_{j,i} v_{i+1},   K_i v_j = q^{δ_{j,i} - δ_{j,i+1}} v_j,

and tensors use Δ(E) = 1⊗E + E⊗K^-1, Δ(F) = F⊗1 + K⊗F, Δ(K) = K⊗K.
The type A Hecke algebra acts on the right by place permutations, and ψ is
the anti-linear involution fixing weakly increasing words with
ψ(x H_i) = ψ(x) bar(H_i).

A factor ``wedge(k)`` is the quotient of V^{⊗k} by the images of all KL
elements other than H_e; H_i acts there by -q. Its basis is indexed by
strictly increasing words, and the quotient map sends v_g with distinct
letters to (-q)^{inv(g)} v_{sorted(g)}.

>>> sp = TensorSpace(ModuleDescriptor(1, (1, 1)))
>>> sp.format(sp.e(1, {(2, 2): ONE}))
'q*v(1,2) + v(2,1)'
>>> sp.format(sp.psi({(2, 1): ONE}))
'(-q^-1 + q)*v(1,2) + v(2,1)'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping

from ..errors import RankTooSmall
from ..ring import ONE, LaurentPoly, Q
from ..vectors import add_into, add_term, apply_antilinear, format_vector

__all__ = ["VARIANTS", "ModuleDescriptor", "TensorSpace", "Word", "weight", "psi_word", "hecke_a_word"]

VARIANTS = ("bw13", "bao17")
Word = tuple
QDIFF = Q.bar() - Q  # q^-1 - q
MINUS_Q = -Q


@dataclass(frozen=True)
class ModuleDescriptor:
    """
    ``factors`` lists wedge sizes: 1 is V itself, k is wedge(k). The empty list is
    the trivial module with the single basis word ().
    """
    n: int
    factors: tuple[int, ...]
    variant: str = "bw13"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(k) for k in self.factors))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        for k in self.factors:
            if k < 1 or k > self.n:
                raise RankTooSmall(f"wedge({k}) needs 1 <= {k} <= n = {self.n}")

    @classmethod
    def parse(cls, n: int, text: str, variant: str = "bw13") -> "ModuleDescriptor":
        """``"V,wedge2,V"``; also accepts ``∧2`` and ``wedge(2)``."""
        factors = []
        for tok in (t.strip() for t in text.split(",")):
            if not tok:
                continue
            if tok in ("V", "v"):
                factors.append(1)
                continue
            m = re.fullmatch(r"(?:wedge|∧)\(?(\d+)\)?", tok)
            if not m:
                raise ValueError(f"unknown factor {tok!r}; use V or wedgeK")
            factors.append(int(m.group(1)))
        return cls(n, tuple(factors), variant)

    @property
    def m(self) -> int:
        """Total number of tensor letters."""
        return sum(self.factors)

    @property
    def parity(self) -> str:
        """Parity of n + 1."""
        return "even" if (self.n + 1) % 2 == 0 else "odd"

    @property
    def is_pure(self) -> bool:
        return all(k == 1 for k in self.factors)

    def label(self) -> str:
        return ",".join("V" if k == 1 else f"wedge{k}" for k in self.factors)

    def split(self, l: int) -> tuple["ModuleDescriptor", "ModuleDescriptor"]:
        if not 0 <= l <= len(self.factors):
            raise ValueError(f"split point {l} outside 0..{len(self.factors)}")
        return (ModuleDescriptor(self.n, self.factors[:l], self.variant),
                ModuleDescriptor(self.n, self.factors[l:], self.variant))

    def ambient(self) -> "ModuleDescriptor":
        return ModuleDescriptor(self.n, (1,) * self.m, self.variant)

    def with_variant(self, variant: str) -> "ModuleDescriptor":
        return ModuleDescriptor(self.n, self.factors, variant)

    def to_json(self) -> dict:
        return {"n": self.n, "factors": self.label(), "variant": self.variant}


def weight(word: Word, n: int) -> tuple[int, ...]:
    """Letter multiplicities (c_1, ..., c_{n+1})."""
    c = [0] * (n + 1)
    for a in word:
        c[a - 1] += 1
    return tuple(c)


# -- actions on single words of V^{⊗m}; results are read-only dicts ----------

def _k_exp(i: int, a: int) -> int:
    return (a == i) - (a == i + 1)


@lru_cache(maxsize=None)
def _e_word(i: int, word: Word) -> dict:
    out: dict = {}
    tail = 0  # exponent of K_i^-1 on positions after k
    for k in range(len(word) - 1, -1, -1):
        if word[k] == i + 1:
            add_term(out, word[:k] + (i,) + word[k + 1:], LaurentPoly.monomial(-tail))
        tail += _k_exp(i, word[k])
    return out


@lru_cache(maxsize=None)
def _f_word(i: int, word: Word) -> dict:
    out: dict = {}
    head = 0  # exponent of K_i on positions before k
    for k, a in enumerate(word):
        if a == i:
            add_term(out, word[:k] + (i + 1,) + word[k + 1:], LaurentPoly.monomial(head))
        head += _k_exp(i, a)
    return out


def _k_word(i: int, word: Word) -> int:
    return sum(_k_exp(i, a) for a in word)


@lru_cache(maxsize=None)
def hecke_a_word(word: Word, i: int) -> dict:
    """v_f * H_i for 1 <= i < m."""
    a, b = word[i - 1], word[i]
    if a == b:
        return {word: Q.bar()}
    sw = word[:i - 1] + (b, a) + word[i + 1:]
    if a < b:
        return {sw: ONE}
    return {sw: ONE, word: QDIFF}


@lru_cache(maxsize=None)
def psi_word(word: Word) -> dict:
    """ψ(v_f) on V^{⊗m}: fixed on weakly increasing words, ψ(x H_i) = ψ(x)(H_i + q - q^-1)."""
    for i in range(1, len(word)):
        if word[i - 1] > word[i]:
            prev = word[:i - 1] + (word[i], word[i - 1]) + word[i + 1:]
            base = psi_word(prev)
            out: dict = {}
            for w, c in base.items():
                add_into(out, hecke_a_word(w, i), c)
            add_into(out, base, -QDIFF)
            return out
    return {word: ONE}


class TensorSpace:
    """
    The module of a descriptor, realized on its basis words. For wedge factors the
    words are blockwise strictly increasing and every operator is computed on the
    ambient tensor power and then projected.
    """

    def __init__(self, desc: ModuleDescriptor):
        self.desc = desc
        self.n = desc.n
        self.m = desc.m
        self.letters = tuple(range(1, desc.n + 2))
        offs = [0]
        for k in desc.factors:
            offs.append(offs[-1] + k)
        self.blocks = tuple((offs[j], offs[j + 1]) for j in range(len(desc.factors)))

    @cached_property
    def words(self) -> tuple[Word, ...]:
        per_block = []
        for k in self.desc.factors:
            if k == 1:
                per_block.append([(a,) for a in self.letters])
            else:
                per_block.append(list(itertools.combinations(self.letters, k)))
        return tuple(sorted(sum(parts, ()) for parts in itertools.product(*per_block)))

    @cached_property
    def word_set(self) -> frozenset:
        return frozenset(self.words)

    @property
    def dim(self) -> int:
        return len(self.words)

    def weight(self, word: Word) -> tuple[int, ...]:
        return weight(word, self.n)

    # -- quotient map -----------------------------------------------------

    def project_word(self, word: Word) -> tuple[Word, LaurentPoly] | None:
        """π(v_word) = c v_target, or None when it vanishes."""
        if self.desc.is_pure:
            return word, ONE
        out = []
        exp = 0
        for lo, hi in self.blocks:
            seg = word[lo:hi]
            if hi - lo > 1:
                if len(set(seg)) < len(seg):
                    return None
                exp += sum(1 for x, y in itertools.combinations(seg, 2) if x > y)
                seg = tuple(sorted(seg))
            out.extend(seg)
        c = LaurentPoly.monomial(exp, -1 if exp % 2 else 1)
        return tuple(out), c

    def project(self, vec: Mapping) -> dict:
        if self.desc.is_pure:
            return dict(vec)
        out: dict = {}
        for w, c in vec.items():
            img = self.project_word(w)
            if img is not None:
                add_term(out, img[0], c * img[1])
        return out

    # -- quantum group ----------------------------------------------------

    def _lin(self, vec: Mapping, fn) -> dict:
        acc: dict = {}
        for w, c in vec.items():
            add_into(acc, fn(w), c)
        return self.project(acc)

    def e(self, i: int, vec: Mapping) -> dict:
        return self._lin(vec, lambda w: _e_word(i, w))

    def f(self, i: int, vec: Mapping) -> dict:
        return self._lin(vec, lambda w: _f_word(i, w))

    def k(self, i: int, vec: Mapping, power: int = 1) -> dict:
        """K_i^power; weight vectors are eigenvectors so no projection is needed."""
        return {w: c * LaurentPoly.monomial(power * _k_word(i, w)) for w, c in vec.items()}

    def u_action(self, gen: str, i: int, vec: Mapping) -> dict:
        """``gen`` is one of E, F, K, Kinv."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} outside 1..{self.n}")
        if gen == "E":
            return self.e(i, vec)
        if gen == "F":
            return self.f(i, vec)
        if gen == "K":
            return self.k(i, vec, 1)
        if gen == "Kinv":
            return self.k(i, vec, -1)
        raise ValueError(f"unknown generator {gen!r}")

    # -- Hecke algebra of type A -----------------------------------------

    def hecke_a(self, vec: Mapping, i: int) -> dict:
        """vec * H_i on a pure tensor power."""
        if not self.desc.is_pure:
            raise ValueError("the Hecke action is defined on pure tensor powers only")
        if not 1 <= i < self.m:
            raise ValueError(f"H_{i} is not a generator for m = {self.m}")
        acc: dict = {}
        for w, c in vec.items():
            add_into(acc, hecke_a_word(w, i), c)
        return acc

    # -- bar involution ---------------------------------------------------

    def psi_basis(self, word: Word) -> dict:
        """ψ(v_word), projected; the word is read as its own section in the ambient space."""
        return self.project(psi_word(word))

    def psi(self, vec: Mapping) -> dict:
        return apply_antilinear(vec, self.psi_basis)

    # -- display ----------------------------------------------------------

    def format_word(self, word: Word) -> str:
        return "v(" + ",".join(str(a) for a in word) + ")"

    def format(self, vec: Mapping) -> str:
        return format_vector(vec, self.format_word, order=sorted(vec))

    def __repr__(self) -> str:
        return f"TensorSpace(n={self.n}, factors={self.desc.label()!r})"
