"""
Weyl groups of type A_{m-1} and B_m as (signed) permutations of 1..m.

An element is stored as its window ``(w(1), ..., w(m))`` with ``w(-i) = -w(i)``.
Right multiplication by ``s_i`` (i >= 1) swaps window positions i and i+1,
and by ``s_0`` negates the first position.

>>> W = CoxeterGroup(CoxType("A", 3))
>>> w0 = W.longest()
>>> w0, W.length(w0), W.reduced_word(w0)
(GroupElement([3, 2, 1]), 3, [1, 2, 1])
>>> [W.format_word(x) for x in W.min_coset_reps(frozenset(), frozenset({1}), "left")]
['e', 's2', 's2 s1']
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import NotSimpleConjugate

__all__ = [
    "CoxType", "GroupElement", "ParabolicSet", "CoxeterGroup", "group",
    "length", "bruhat_leq", "min_coset_reps", "hk_factorize", "parse_parabolic",
]

ParabolicSet = frozenset  # of simple-reflection indices


@dataclass(frozen=True, order=True)
class CoxType:
    """Family ``"A"`` (simple reflections s_1..s_{m-1}) or ``"B"`` (s_0..s_{m-1}); m is the window size."""
    family: str
    m: int

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise ValueError(f"family must be 'A' or 'B', got {self.family!r}")
        if self.m < 1:
            raise ValueError("window size must be positive")

    @property
    def generators(self) -> tuple[int, ...]:
        start = 0 if self.family == "B" else 1
        return tuple(range(start, self.m))

    @property
    def name(self) -> str:
        return f"A{self.m - 1}" if self.family == "A" else f"B{self.m}"

    @classmethod
    def from_rank(cls, family: str, rank: int) -> "CoxType":
        """``A_r`` lives on windows of size r + 1, ``B_r`` on windows of size r."""
        return cls(family, rank + 1 if family == "A" else rank)


class GroupElement(tuple):
    """A signed permutation in window notation. ``x * y`` is composition (x after y)."""

    __slots__ = ()

    def __new__(cls, window: Iterable[int]):
        return super().__new__(cls, window)

    @property
    def window(self) -> tuple[int, ...]:
        return tuple(self)

    @classmethod
    def identity(cls, m: int) -> "GroupElement":
        return cls(range(1, m + 1))

    @classmethod
    def simple(cls, i: int, m: int) -> "GroupElement":
        w = list(range(1, m + 1))
        if i == 0:
            w[0] = -1
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    def __call__(self, i: int) -> int:
        return self[i - 1] if i > 0 else -self[-i - 1]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self(j) for j in other)

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self)
        for i, x in enumerate(self, start=1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return GroupElement(inv)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self, start=1))

    def __repr__(self) -> str:
        return f"GroupElement({list(self)})"

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self) + "]"


def length(w: GroupElement) -> int:
    """Coxeter length; inversions plus negative-sum pairs (the latter vanish in type A)."""
    m = len(w)
    inv = 0
    nsp = 0
    for i in range(m):
        a = w[i]
        if a < 0:
            nsp += 1
        for j in range(i + 1, m):
            b = w[j]
            if a > b:
                inv += 1
            if a + b < 0:
                nsp += 1
    return inv + nsp


def parse_parabolic(text: str | Iterable[int] | None) -> frozenset[int]:
    """``"s1,s2"``, ``"s1 s2"``, ``"1,2"``, ``""`` or an iterable of indices."""
    if text is None:
        return frozenset()
    if not isinstance(text, str):
        return frozenset(int(i) for i in text)
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t and t not in ("{", "}", "∅")]
    out = set()
    for t in tokens:
        t = t.strip("{}")
        if t.startswith("s"):
            t = t[1:]
        out.add(int(t))
    return frozenset(out)


class CoxeterGroup:
    """All enumeration and order data for one CoxType. Obtain via :func:`group` to share caches."""

    def __init__(self, t: CoxType):
        self.type = t
        self.m = t.m
        self.generators = t.generators
        self.e = GroupElement.identity(t.m)
        self._simple = {i: GroupElement.simple(i, t.m) for i in self.generators}
        self._simple_index = {s: i for i, s in self._simple.items()}
        self._elements = None
        self._lower: dict[GroupElement, frozenset] = {}
        self._parabolic: dict[frozenset, tuple] = {}

    # -- basic structure --------------------------------------------------

    def s(self, i: int) -> GroupElement:
        return self._simple[i]

    def simple_index(self, x: GroupElement) -> int | None:
        return self._simple_index.get(x)

    def length(self, w: GroupElement) -> int:
        return length(w)

    def right(self, w: GroupElement, i: int) -> GroupElement:
        """w * s_i."""
        lst = list(w)
        if i == 0:
            lst[0] = -lst[0]
        else:
            lst[i - 1], lst[i] = lst[i], lst[i - 1]
        return GroupElement(lst)

    def left(self, i: int, w: GroupElement) -> GroupElement:
        """s_i * w."""
        return self._simple[i] * w

    def is_right_descent(self, w: GroupElement, i: int) -> bool:
        if i == 0:
            return w[0] < 0
        return w[i - 1] > w[i]

    def is_left_descent(self, w: GroupElement, i: int) -> bool:
        return self.is_right_descent(w.inverse(), i)

    def right_descents(self, w: GroupElement) -> frozenset[int]:
        return frozenset(i for i in self.generators if self.is_right_descent(w, i))

    def left_descents(self, w: GroupElement) -> frozenset[int]:
        winv = w.inverse()
        return frozenset(i for i in self.generators if self.is_right_descent(winv, i))

    def reduced_word(self, w: GroupElement) -> list[int]:
        """Reduced word read left to right, built by peeling the smallest right descent."""
        word = []
        while not w.is_identity():
            i = min(self.right_descents(w))
            word.append(i)
            w = self.right(w, i)
        return word[::-1]

    def from_word(self, word: Iterable[int]) -> GroupElement:
        w = self.e
        for i in word:
            if i not in self._simple:
                raise ValueError(f"s{i} is not a generator of {self.type.name}")
            w = self.right(w, i)
        return w

    def parse(self, text: str) -> GroupElement:
        """Reduced word ``"s0 s1"`` / ``"e"`` or window ``"[-2, 1, 3]"``."""
        s = text.strip().replace("−", "-")
        if s.startswith("["):
            w = GroupElement(int(x) for x in s.strip("[]").split(",") if x.strip())
            if sorted(abs(x) for x in w) != list(range(1, self.m + 1)):
                raise ValueError(f"{text!r} is not a signed permutation of 1..{self.m}")
            if self.type.family == "A" and any(x < 0 for x in w):
                raise ValueError(f"{text!r} is not in the type A group")
            return w
        if s in ("", "e", "1"):
            return self.e
        return self.from_word(int(t.lstrip("s")) for t in re.split(r"[,\s*·]+", s) if t)

    def format_word(self, w: GroupElement) -> str:
        word = self.reduced_word(w)
        return " ".join(f"s{i}" for i in word) if word else "e"

    # -- enumeration ------------------------------------------------------

    def _generate(self, gens: Iterable[int]) -> tuple[GroupElement, ...]:
        gens = sorted(gens)
        seen = {self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for w in frontier:
                for i in gens:
                    x = self.right(w, i)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return tuple(sorted(seen, key=lambda x: (length(x), x)))

    def elements(self) -> tuple[GroupElement, ...]:
        """All elements sorted by (length, window)."""
        if self._elements is None:
            self._elements = self._generate(self.generators)
        return self._elements

    def parabolic(self, J: Iterable[int]) -> tuple[GroupElement, ...]:
        J = frozenset(J)
        if J not in self._parabolic:
            bad = J - set(self.generators)
            if bad:
                raise ValueError(f"{sorted(bad)} are not generators of {self.type.name}")
            self._parabolic[J] = self._generate(J)
        return self._parabolic[J]

    def longest(self, J: Iterable[int] | None = None) -> GroupElement:
        """w_J, the longest element of W_J (of W when J is None)."""
        elems = self.elements() if J is None else self.parabolic(J)
        return elems[-1]

    # -- Bruhat order -----------------------------------------------------

    def lower_interval(self, w: GroupElement) -> frozenset[GroupElement]:
        """All products of subwords of one fixed reduced word of w."""
        if w not in self._lower:
            acc = {self.e}
            for i in self.reduced_word(w):
                acc |= {self.right(x, i) for x in acc}
            self._lower[w] = frozenset(acc)
        return self._lower[w]

    def bruhat_leq(self, y: GroupElement, w: GroupElement) -> bool:
        return y in self.lower_interval(w)

    # -- cosets -----------------------------------------------------------

    def is_min_left(self, w: GroupElement, J: Iterable[int]) -> bool:
        """w in ^J W (minimal in W_J w)."""
        winv = w.inverse()
        return not any(self.is_right_descent(winv, i) for i in J)

    def is_min_right(self, w: GroupElement, J: Iterable[int]) -> bool:
        """w in W^J (minimal in w W_J)."""
        return not any(self.is_right_descent(w, i) for i in J)

    def min_coset_reps(self, I: Iterable[int], J: Iterable[int], kind: str) -> list[GroupElement]:
        """``left``: ^J W; ``right``: W^J; ``double``: ^I W^J. Sorted by (length, window)."""
        I, J = frozenset(I), frozenset(J)
        if kind == "left":
            pred = lambda w: self.is_min_left(w, J)
        elif kind == "right":
            pred = lambda w: self.is_min_right(w, J)
        elif kind == "double":
            pred = lambda w: self.is_min_left(w, I) and self.is_min_right(w, J)
        else:
            raise ValueError(f"kind must be left, right or double, got {kind!r}")
        return [w for w in self.elements() if pred(w)]

    def min_double_rep(self, w: GroupElement, I: Iterable[int], J: Iterable[int]) -> GroupElement:
        """Minimal element of W_I w W_J, reached by stripping descents."""
        I, J = sorted(I), sorted(J)
        changed = True
        while changed:
            changed = False
            for i in I:
                if self.is_left_descent(w, i):
                    w = self.left(i, w)
                    changed = True
            for j in J:
                if self.is_right_descent(w, j):
                    w = self.right(w, j)
                    changed = True
        return w

    def left_factor(self, w: GroupElement, J: Iterable[int]) -> tuple[GroupElement, GroupElement]:
        """w = x * y with x in W_J and y in ^J W."""
        J = sorted(J)
        x = self.e
        y = w
        changed = True
        while changed:
            changed = False
            for i in J:
                if self.is_left_descent(y, i):
                    y = self.left(i, y)
                    x = self.right(x, i)
                    changed = True
        return x, y

    def right_factor(self, w: GroupElement, J: Iterable[int]) -> tuple[GroupElement, GroupElement]:
        """w = x * y with x in W^J and y in W_J."""
        J = sorted(J)
        x = w
        y = self.e
        changed = True
        while changed:
            changed = False
            for i in J:
                if self.is_right_descent(x, i):
                    x = self.right(x, i)
                    y = self.left(i, y)
                    changed = True
        return x, y

    def conjugate_simples(self, I: Iterable[int], x: GroupElement, J: Iterable[int]) -> frozenset[int]:
        """Simple reflections of I that lie in x W_J x^-1 as conjugates x s x^-1, s in J."""
        xinv = x.inverse()
        out = set()
        for j in J:
            c = x * self._simple[j] * xinv
            i = self._simple_index.get(c)
            if i is not None and i in I:
                out.add(i)
        return frozenset(out)

    def hk_factorize(self, w: GroupElement, I: Iterable[int], J: Iterable[int]):
        """
        Return ``(u, pm, v, K)`` with w = u * pm * v, pm the minimal element of
        W_I w W_J, K = I ∩ pm J pm^-1, u in W^K ∩ W_I and v in W_J, with
        lengths adding.
        """
        I, J = frozenset(I), frozenset(J)
        pm = self.min_double_rep(w, I, J)
        K = self.conjugate_simples(I, pm, J)
        pminv = pm.inverse()
        inter = set(self.parabolic(I)) & {pm * v * pminv for v in self.parabolic(J)}
        if inter != set(self.parabolic(K)):
            raise NotSimpleConjugate(
                f"W_I ∩ pm W_J pm^-1 is not W_K for pm={pm}, I={sorted(I)}, J={sorted(J)}")
        WI = set(self.parabolic(I))
        for v in self.parabolic(J):
            u = w * v.inverse() * pminv
            if u in WI and self.is_min_right(u, K):
                if length(w) != length(u) + length(pm) + length(v):
                    raise NotSimpleConjugate(f"lengths do not add for w={w}")
                return u, pm, v, K
        raise NotSimpleConjugate(f"no factorization found for w={w}")

    def double_coset(self, w: GroupElement, I: Iterable[int], J: Iterable[int]) -> frozenset[GroupElement]:
        return frozenset(a * w * b for a in self.parabolic(I) for b in self.parabolic(J))


@lru_cache(maxsize=None)
def group(t: CoxType) -> CoxeterGroup:
    return CoxeterGroup(t)


def _group_of(*elements: GroupElement) -> CoxeterGroup:
    m = len(elements[0])
    family = "B" if any(x < 0 for w in elements for x in w) else "A"
    return group(CoxType(family, m))


def bruhat_leq(y: GroupElement, w: GroupElement, t: CoxType | None = None) -> bool:
    # type A and B Bruhat orders agree on unsigned permutations
    W = group(t) if t is not None else _group_of(y, w)
    return W.bruhat_leq(y, w)


def min_coset_reps(t: CoxType, I: Iterable[int], J: Iterable[int], kind: str) -> list[GroupElement]:
    return group(t).min_coset_reps(I, J, kind)


def hk_factorize(w: GroupElement, I: Iterable[int], J: Iterable[int], t: CoxType | None = None):
    W = group(t) if t is not None else group(CoxType("B" if 0 in set(I) | set(J) or any(x < 0 for x in w) else "A", len(w)))
    return W.hk_factorize(w, I, J)
