"""
The bar-invariant unitriangular basis of a free module with a triangular bar involution.

Given the matrix ``R`` of an anti-linear involution in some basis ``{x_b}``,
``bar(x_b) = sum_{b'} r_{b',b} x_{b'}`` with ``r_{b,b} = 1`` and ``r_{b',b} = 0``
unless ``b' <= b``, there is exactly one family

    c_b = x_b + sum_{b' < b} c_{b',b} x_{b'},   c_{b',b} in qZ[q],

of bar-invariant vectors. It is found column by column: for each b' below b,
``c_{b',b} - bar(c_{b',b})`` equals a sum over already determined entries, and
:func:`~icanon.ring.solve_skew` picks the unique qZ[q] solution.

>>> from icanon.ring import Q, ONE
>>> sysm = BarSystem(order=["e", "s"], bar={"e": {"e": ONE}, "s": {"s": ONE, "e": Q - Q**-1}})
>>> str(canonicalize(sysm).entry("e", "s"))
'q'
"""

from __future__ import annotations

import graphlib
import heapq
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

from .errors import (
    ConstantTermObstruction, NonLaurentCoefficient, NotInSpan, NotInvolution,
    NotTriangular, Obstruction, SkewViolation,
)
from .ring import ONE, ZERO, LaurentPoly, solve_skew
from .vectors import add_into

__all__ = [
    "BarSystem", "TransitionMatrix", "TriangularBasis",
    "canonicalize", "expand_in", "linear_extension",
]


@dataclass
class TransitionMatrix:
    """Column ``b`` holds the expansion of the b-th new basis vector in the old basis."""
    order: list
    columns: dict

    def entry(self, row, col) -> LaurentPoly:
        return self.columns[col].get(row, ZERO)

    def column(self, col) -> dict:
        return self.columns[col]

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def is_identity(self) -> bool:
        return all(col == {b: ONE} for b, col in self.columns.items())

    def to_json(self, key: Callable = str) -> list:
        out = []
        for b in self.order:
            col = self.columns[b]
            terms = [[key(k), str(col[k])] for k in self.order if k in col]
            out.append({"index": key(b), "terms": terms})
        return out


@dataclass
class BarSystem:
    """
    ``order`` lists the indices along a linear extension of the partial order,
    smallest first. ``bar[b]`` is the column ``{b': r_{b',b}}``. If given,
    ``leq(b', b)`` is the partial order itself and restricts which entries are
    solved for; otherwise the linear extension is used.
    """
    order: list
    bar: Mapping
    leq: Callable[[Hashable, Hashable], bool] | None = None
    _pos: dict = field(default=None, init=False, repr=False)

    def position(self) -> dict:
        if self._pos is None:
            self._pos = {b: k for k, b in enumerate(self.order)}
        return self._pos

    def check_triangular(self) -> None:
        pos = self.position()
        for b in self.order:
            col = self.bar[b]
            if col.get(b) != ONE:
                raise NotTriangular(f"diagonal entry at {b!r} is {col.get(b, ZERO)}, expected 1")
            for b2 in col:
                if b2 not in pos:
                    raise NotTriangular(f"column {b!r} has entry outside the index set: {b2!r}")
                if pos[b2] > pos[b] or (self.leq is not None and not self.leq(b2, b)):
                    raise NotTriangular(f"entry ({b2!r}, {b!r}) lies above the diagonal")

    def check_involution(self) -> None:
        for b in self.order:
            acc: dict = {}
            for b2, r in self.bar[b].items():
                add_into(acc, self.bar[b2], r.bar())
            if acc != {b: ONE}:
                raise NotInvolution(f"R * bar(R) differs from the identity in column {b!r}")


def linear_extension(columns: Mapping, key: Callable | None = None) -> list:
    """
    A deterministic ordering in which every nonzero ``columns[b][b']`` has b' no later than b.
    Raises NotTriangular when the support relation has a cycle.
    """
    graph = {}
    for b in sorted(columns, key=key):
        graph[b] = sorted((b2 for b2 in columns[b] if b2 != b), key=key)
    try:
        return list(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        raise NotTriangular(f"support relation is cyclic: {exc.args[1]!r}") from None


def canonicalize(sys: BarSystem, check: bool = True) -> TransitionMatrix:
    """Solve for the bar-invariant unitriangular basis; see the module docstring."""
    if check:
        sys.check_triangular()
        sys.check_involution()
    pos = sys.position()
    R = sys.bar
    columns = {}
    for b in sys.order:
        acc = dict(R[b])
        col = {b: ONE}
        heap = [-pos[k] for k in acc if k != b]
        heapq.heapify(heap)
        done = set()
        while heap:
            p = -heapq.heappop(heap)
            if p in done:
                continue
            done.add(p)
            b2 = sys.order[p]
            d = acc.get(b2, ZERO)
            if not d:
                continue
            if sys.leq is not None and not sys.leq(b2, b):
                raise Obstruction(b2, b, f"nonzero entry {d} outside the order ideal")
            try:
                c = solve_skew(d)
            except (SkewViolation, ConstantTermObstruction) as exc:
                raise Obstruction(b2, b, str(exc)) from None
            if not c:
                continue
            col[b2] = c
            cb = c.bar()
            for k, r in R[b2].items():
                v = acc.get(k, ZERO) + r * cb
                if v:
                    if k not in acc and pos[k] < p:
                        heapq.heappush(heap, -pos[k])
                    acc[k] = v
                else:
                    acc.pop(k, None)
        columns[b] = col
    return TransitionMatrix(order=list(sys.order), columns=columns)


class TriangularBasis:
    """
    A basis ``{c_b}`` with ``c_b = x_b + (terms at other indices)``, triangular for
    some order, over the basis ``{x_b}``. Expansion is exact back substitution.
    """

    def __init__(self, elements: Mapping, key: Callable | None = None):
        self.elements = dict(elements)
        for b, vec in self.elements.items():
            if vec.get(b) != ONE:
                raise NonLaurentCoefficient(f"basis vector {b!r} has leading coefficient {vec.get(b, ZERO)}")
            stray = [k for k in vec if k not in self.elements]
            if stray:
                raise NotTriangular(f"basis vector {b!r} has support outside the index set: {stray[:3]!r}")
        # reverse of a linear extension: higher elements are peeled first
        self.order = linear_extension(self.elements, key=key)[::-1]

    def expand(self, vector: Mapping) -> dict:
        """Coefficients of ``vector``; raises NotInSpan if it is not a combination."""
        rest = dict(vector)
        stray = [k for k in rest if k not in self.elements]
        if stray:
            raise NotInSpan(f"vector has support outside the index set: {stray[:3]!r}")
        out = {}
        for b in self.order:
            c = rest.get(b)
            if c:
                out[b] = c
                add_into(rest, self.elements[b], -c)
        if rest:
            raise NotInSpan(f"residual after back substitution: {list(rest)[:3]!r}")
        return out

    def synthesize(self, coeffs: Mapping) -> dict:
        acc: dict = {}
        for b, c in coeffs.items():
            add_into(acc, self.elements[b], c)
        return acc

    def transition(self, vectors: Mapping, order: Iterable | None = None) -> TransitionMatrix:
        cols = {b: self.expand(v) for b, v in vectors.items()}
        return TransitionMatrix(order=list(order if order is not None else vectors), columns=cols)


def expand_in(target, vector: Mapping) -> dict:
    """Coefficients of ``vector`` in ``target`` (a TriangularBasis, TransitionMatrix or mapping)."""
    if isinstance(target, TransitionMatrix):
        target = TriangularBasis(target.columns)
    elif not isinstance(target, TriangularBasis):
        target = TriangularBasis(target)
    return target.expand(vector)
