"""Sparse vectors: dicts from basis index to nonzero LaurentPoly."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, TypeVar

from .ring import ONE, ZERO, LaurentPoly, as_poly

K = TypeVar("K", bound=Hashable)
Vector = dict  # K -> LaurentPoly, no zero values stored


def add_into(acc: dict, vec: Mapping, coeff: LaurentPoly = ONE) -> dict:
    """acc += coeff * vec, in place."""
    if not coeff:
        return acc
    for k, c in vec.items():
        v = acc.get(k, ZERO) + (c if coeff is ONE else c * coeff)
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def add_term(acc: dict, key, c: LaurentPoly) -> dict:
    if not c:
        return acc
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)
    return acc


def scale(vec: Mapping, c) -> dict:
    c = as_poly(c)
    if not c:
        return {}
    return {k: v * c for k, v in vec.items()}


def lincomb(pairs: Iterable[tuple[LaurentPoly, Mapping]]) -> dict:
    acc: dict = {}
    for c, vec in pairs:
        add_into(acc, vec, as_poly(c))
    return acc


def sub(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    return add_into(out, b, -ONE)


def bar_coeffs(vec: Mapping) -> dict:
    return {k: v.bar() for k, v in vec.items()}


def apply_linear(vec: Mapping, image: Callable[[object], Mapping]) -> dict:
    """Extend ``image`` (basis index -> vector) linearly."""
    acc: dict = {}
    for k, c in vec.items():
        add_into(acc, image(k), c)
    return acc


def apply_antilinear(vec: Mapping, image: Callable[[object], Mapping]) -> dict:
    """Extend ``image`` anti-linearly (coefficients are barred)."""
    acc: dict = {}
    for k, c in vec.items():
        add_into(acc, image(k), c.bar())
    return acc


def tensor(a: Mapping, b: Mapping) -> dict:
    """Tensor product of vectors indexed by tuples; indices are concatenated."""
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[tuple(ka) + tuple(kb)] = ca * cb
    return out


def format_vector(vec: Mapping, key_str: Callable[[object], str] = str, order=None) -> str:
    keys = order if order is not None else sorted(vec)
    parts = []
    for k in keys:
        c = vec.get(k)
        if not c:
            continue
        cs = str(c)
        if c == ONE:
            parts.append(key_str(k))
        elif c.is_monomial() or cs.count(" ") == 0:
            parts.append(f"{cs}*{key_str(k)}")
        else:
            parts.append(f"({cs})*{key_str(k)}")
    return " + ".join(parts) if parts else "0"
