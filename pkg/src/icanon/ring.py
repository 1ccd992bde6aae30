"""
Exact scalars: integer Laurent polynomials in ``q`` and lazy fractions of them.

A :class:`LaurentPoly` is stored densely as a lowest exponent plus a tuple of
integer coefficients with no zeros at either end, so equal polynomials have
equal representations and hash alike.

>>> q = LaurentPoly.q()
>>> p = 2 * q**-1 + 3 * q**2
>>> str(p)
'2q^-1 + 3q^2'
>>> str(bar(p))
'3q^-2 + 2q'
>>> str(solve_skew(q - q**-1))
'q'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

from .errors import ConstantTermObstruction, NonLaurentCoefficient, SkewViolation

__all__ = [
    "LaurentPoly", "RatFunc", "Scalar", "ZERO", "ONE", "Q",
    "bar", "solve_skew", "is_nonneg", "as_poly",
]


class LaurentPoly:
    """An element of Z[q, q^-1]."""

    __slots__ = ("_lo", "_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        if not coeffs:
            self._set(0, ())
            return
        lo = min(coeffs)
        hi = max(coeffs)
        dense = [0] * (hi - lo + 1)
        for e, c in coeffs.items():
            dense[e - lo] += int(c)
        self._set(lo, dense)

    def _set(self, lo: int, dense) -> None:
        start = 0
        end = len(dense)
        while start < end and dense[start] == 0:
            start += 1
        while end > start and dense[end - 1] == 0:
            end -= 1
        if start == end:
            self._lo, self._c = 0, ()
        else:
            self._lo, self._c = lo + start, tuple(dense[start:end])
        self._hash = None

    @classmethod
    def _raw(cls, lo: int, dense) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._set(lo, dense)
        return p

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw(0, (int(c),))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls._raw(e, (int(c),))

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls._raw(1, (1,))

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        """Exponent -> nonzero coefficient."""
        return {self._lo + k: c for k, c in enumerate(self._c) if c}

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return self._lo

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return self._lo + len(self._c) - 1

    def coeff(self, e: int) -> int:
        k = e - self._lo
        if 0 <= k < len(self._c):
            return self._c[k]
        return 0

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._lo == other._lo and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._lo, self._c)) if self._c else hash(0)
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._c), other._lo + len(other._c))
        dense = [0] * (hi - lo)
        for k, c in enumerate(self._c):
            dense[self._lo - lo + k] += c
        for k, c in enumerate(other._c):
            dense[other._lo - lo + k] += c
        return LaurentPoly._raw(lo, dense)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self._lo, [-c for c in self._c])

    def __sub__(self, other) -> "LaurentPoly":
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return as_poly(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw(self._lo, [c * other for c in self._c])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        a, b = self._c, other._c
        if len(a) == 1:
            return LaurentPoly._raw(self._lo + other._lo, [a[0] * c for c in b])
        if len(b) == 1:
            return LaurentPoly._raw(self._lo + other._lo, [b[0] * c for c in a])
        dense = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    dense[i + j] += x * y
        return LaurentPoly._raw(self._lo + other._lo, dense)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial() or abs(self._c[0]) != 1:
                raise NonLaurentCoefficient(f"{self} is not a unit of Z[q, q^-1]")
            # (±q^e)^k = (±1)^|k| q^(ek)
            return LaurentPoly.monomial(self._lo * k, self._c[0] ** abs(k))
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by q^e."""
        if not self._c:
            return self
        return LaurentPoly._raw(self._lo + e, self._c)

    def bar(self) -> "LaurentPoly":
        if not self._c:
            return self
        return LaurentPoly._raw(-(self._lo + len(self._c) - 1), self._c[::-1])

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises NonLaurentCoefficient if ``other`` does not divide."""
        other = as_poly(other)
        if not other._c:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._c:
            return ZERO
        num = list(self._c)
        den = other._c
        lead = den[-1]
        out_len = len(num) - len(den) + 1
        if out_len <= 0:
            raise NonLaurentCoefficient(f"{other} does not divide {self}")
        quo = [0] * out_len
        for k in range(out_len - 1, -1, -1):
            top = num[k + len(den) - 1]
            if top % lead:
                raise NonLaurentCoefficient(f"{other} does not divide {self}")
            c = top // lead
            quo[k] = c
            if c:
                for j, d in enumerate(den):
                    num[k + j] -= c * d
        if any(num):
            raise NonLaurentCoefficient(f"{other} does not divide {self}")
        return LaurentPoly._raw(self._lo - other._lo, quo)

    def evaluate_mod(self, x: int, p: int) -> int:
        """Value at q = x in Z/p (x must be invertible mod p)."""
        if not self._c:
            return 0
        acc = 0
        for c in reversed(self._c):
            acc = (acc * x + c) % p
        return acc * pow(x, self._lo, p) % p

    # -- text and json ----------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                if abs(c) != 1:
                    mono = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    _TERM = re.compile(r"^(\d*)(?:(q)(?:\^(-?\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; also accepts ``q^{-1}``-free spellings like ``-q + 2``."""
        s = text.replace(" ", "").replace("−", "-").replace("{", "").replace("}", "")
        if s in ("", "0"):
            return ZERO
        s = s.replace("-", "+-")
        if s.startswith("+"):
            s = s[1:]
        coeffs: dict[int, int] = {}
        # a leading "+-" split can leave empty pieces after exponent signs, e.g. q^+-1
        pieces = []
        for piece in s.split("+"):
            if pieces and pieces[-1].endswith("^"):
                pieces[-1] += piece
            else:
                pieces.append(piece)
        for piece in pieces:
            if not piece:
                continue
            sign = 1
            if piece.startswith("-"):
                sign, piece = -1, piece[1:]
            m = cls._TERM.match(piece.replace("*", ""))
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse Laurent polynomial term {piece!r} in {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            e = 0
            if m.group(2):
                e = int(m.group(3)) if m.group(3) is not None else 1
            coeffs[e] = coeffs.get(e, 0) + sign * c
        return cls(coeffs)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})


ZERO = LaurentPoly._raw(0, ())
ONE = LaurentPoly._raw(0, (1,))
Q = LaurentPoly.q()


def as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def bar(p: LaurentPoly) -> LaurentPoly:
    """The ring involution q -> q^-1."""
    return as_poly(p).bar()


def solve_skew(d: LaurentPoly) -> LaurentPoly:
    """The unique p in qZ[q] with p - bar(p) = d."""
    d = as_poly(d)
    if d.bar() != -d:
        raise SkewViolation(f"{d} is not bar-skew")
    if d.coeff(0):
        raise ConstantTermObstruction(f"{d} has a nonzero constant term")
    return LaurentPoly({e: c for e, c in d.coeffs.items() if e > 0})


def is_nonneg(p: LaurentPoly) -> bool:
    """Membership in N[q]."""
    p = as_poly(p)
    return all(e >= 0 and c >= 0 for e, c in p.coeffs.items())


class RatFunc:
    """
    A fraction num/den of Laurent polynomials.

    Normalization is lazy: nothing is reduced, and equality is tested by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = as_poly(num), as_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is unhashable; normalize to LaurentPoly first")

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other)

    def __add__(self, other) -> "RatFunc":
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return self._lift(other) / self

    def __bool__(self) -> bool:
        return bool(self.num)

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def to_laurent(self) -> LaurentPoly:
        """The Laurent polynomial equal to this fraction, or NonLaurentCoefficient."""
        return self.num.divexact(self.den)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


Scalar = Union[LaurentPoly, RatFunc]
