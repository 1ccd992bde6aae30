"""
Coideal subalgebras of type AIII/AIV acting on tensor spaces, the H_0 action
commuting with them, and the intertwiner Υ.

Generators are ``B_i = E_i + c_i F_{θ(i)} K_i^-1 + d_i K_i^-1`` (1 <= i <= n,
θ(i) = n + 1 - i) together with ``k_i = K_i K_{θ(i)}^-1``. The parameters depend on
the variant and on the parity of n + 1:

==========  ==========================  ==========================
variant     n + 1 even (mid = (n+1)/2)  n + 1 odd
==========  ==========================  ==========================
bw13        c = q^δ(i,mid), d = δ(i,mid)   c = q^-δ(i, n/2 + 1), d = 0
bao17       c = q^δ(i,mid), d = 0          c = q^-δ(i, n/2), d = 0
==========  ==========================  ==========================

ψ(B_i) = E_i + bar(c_i) F_{θ(i)} K_i + bar(d_i) K_i.

Υ is the operator T = 1 + (weight-lowering part) with B_i T = T ψ(B_i) and
commuting with every k_i; it is solved on each space as an exact linear system.
Then ψ_ι = T ∘ ψ.

>>> from icanon.tensor.space import ModuleDescriptor, TensorSpace
>>> sp = TensorSpace(ModuleDescriptor(1, (1,)))
>>> ci = Coideal(1, "bw13")
>>> sp.format(ci.b(sp, 1, {(2,): ONE}))
'v(1) + q*v(2)'
>>> T = upsilon_solve(sp, "bw13")
>>> sp.format(T.apply({(1,): ONE}))
'v(1) + (-q^-1 + q)*v(2)'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from ..errors import (
    NoIntertwiner, NonUniqueIntertwiner, NonUniqueSolution, NoSolution, InvariantViolation,
)
from ..linalg import solve_laurent, solve_laurent_blocks
from ..ring import ONE, ZERO, LaurentPoly, Q
from ..vectors import add_into, add_term, apply_linear
from .space import VARIANTS, ModuleDescriptor, TensorSpace, Word, weight

__all__ = [
    "Coideal", "H0Action", "Intertwiner", "solve_h0", "upsilon_solve",
    "operator_matrix", "lowering_depth",
]


@dataclass(frozen=True)
class Coideal:
    n: int
    variant: str

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")

    @property
    def even(self) -> bool:
        return (self.n + 1) % 2 == 0

    def theta(self, i: int) -> int:
        return self.n + 1 - i

    def theta_letter(self, a: int) -> int:
        return self.n + 2 - a

    def params(self, i: int) -> tuple[LaurentPoly, LaurentPoly]:
        """(c_i, d_i)."""
        if self.even:
            special = (self.n + 1) // 2
            c = Q if i == special else ONE
            d = ONE if (i == special and self.variant == "bw13") else ZERO
        else:
            special = self.n // 2 + 1 if self.variant == "bw13" else self.n // 2
            c = Q.bar() if i == special else ONE
            d = ZERO
        return c, d

    def b(self, space: TensorSpace, i: int, vec: Mapping, barred: bool = False) -> dict:
        """B_i (or ψ(B_i) when ``barred``) applied to vec."""
        c, d = self.params(i)
        kp = 1 if barred else -1
        if barred:
            c, d = c.bar(), d.bar()
        out = space.e(i, vec)
        kv = space.k(i, vec, kp)
        add_into(out, space.f(self.theta(i), kv), c)
        add_into(out, kv, d)
        return out

    def cartan(self, space: TensorSpace, i: int, vec: Mapping, power: int = 1) -> dict:
        """(K_i K_{θ(i)}^-1)^power."""
        return space.k(self.theta(i), space.k(i, vec, power), -power)

    def generators(self, space: TensorSpace):
        """(name, callable) for every generator, for relation and commutation tests."""
        gens = []
        for i in range(1, self.n + 1):
            gens.append((f"B{i}", lambda v, i=i: self.b(space, i, v)))
            gens.append((f"k{i}", lambda v, i=i: self.cartan(space, i, v)))
        return gens


def operator_matrix(space: TensorSpace, fn) -> dict:
    """Columns ``word -> fn(v_word)`` over the space's basis."""
    return {w: fn({w: ONE}) for w in space.words}


def lowering_depth(src: Word, dst: Word, n: int) -> tuple[int, ...] | None:
    """ν with wt(dst) = wt(src) - ν, as coefficients on simple roots; None if wt(dst) - wt(src) is not in -Q^+."""
    a, b = weight(src, n), weight(dst, n)
    ks = []
    acc = 0
    for j in range(n):
        acc += a[j] - b[j]
        if acc < 0:
            return None
        ks.append(acc)
    return tuple(ks)


# -- H_0 -----------------------------------------------------------------------

@dataclass
class H0Action:
    """v_a * H_0 = sum_b matrix[a][b] v_b on V, acting on the first tensor factor."""
    n: int
    variant: str
    matrix: dict  # letter -> {letter: LaurentPoly}

    def act_word(self, word: Word) -> dict:
        return {(b,) + word[1:]: c for b, c in self.matrix[word[0]].items()}

    def act(self, vec: Mapping) -> dict:
        return apply_linear(vec, self.act_word)

    def to_json(self) -> dict:
        return {"n": self.n, "variant": self.variant,
                "matrix": {str(a): {str(b): c.to_json() for b, c in row.items()} for a, row in self.matrix.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "H0Action":
        mat = {int(a): {int(b): LaurentPoly.from_json(c) for b, c in row.items()} for a, row in data["matrix"].items()}
        return cls(data["n"], data["variant"], mat)


def _h0_quadratic_ok(h0: H0Action) -> bool:
    """(H_0 + q)(H_0 - q^-1) = 0 for bw13, H_0^2 = 1 for bao17."""
    letters = range(1, h0.n + 2)
    for a in letters:
        v = {(a,): ONE}
        h = h0.act(v)
        hh = h0.act(h)
        if h0.variant == "bw13":
            acc = dict(hh)
            add_into(acc, h, Q - Q.bar())
            add_into(acc, v, -ONE)
        else:
            acc = dict(hh)
            add_into(acc, v, -ONE)
        if acc:
            return False
    return True


def solve_h0(n: int, variant: str, cache=None) -> H0Action:
    """
    The right action of H_0 on V commuting with the coideal, normalized by
    v_{n+1} * H_0 = v_1. Must satisfy the variant's quadratic relation.
    """
    key = {"kind": "h0", "n": n, "variant": variant}
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return H0Action.from_json(hit)
    h0 = _solve_h0(n, variant)
    if cache is not None:
        cache.put(key, h0.to_json())
    return h0


@lru_cache(maxsize=None)
def _solve_h0(n: int, variant: str) -> H0Action:
    space = TensorSpace(ModuleDescriptor(n, (1,), variant))
    ci = Coideal(n, variant)
    letters = list(range(1, n + 2))
    idx = {(a, b): k for k, (a, b) in enumerate((a, b) for a in letters for b in letters)}
    rows, rhs = [], []
    for _, g in ci.generators(space):
        mat = {a: g({(a,): ONE}) for a in letters}  # G v_a = sum_c mat[a][(c,)] v_c
        # G(v_a H_0) - (G v_a) H_0 = 0, coefficient of v_c
        for a in letters:
            for c in letters:
                row: dict = {}
                for b in letters:
                    add_term(row, idx[a, b], mat[b].get((c,), ZERO))
                    add_term(row, idx[b, c], -mat[a].get((b,), ZERO))
                if row:
                    rows.append(row)
                    rhs.append(ZERO)
    top = n + 1
    rows.append({idx[top, 1]: ONE})
    rhs.append(ONE)
    rows.append({idx[top, top]: ONE})
    rhs.append(ZERO)
    try:
        sol = solve_laurent(rows, rhs, len(idx))
    except NonUniqueSolution as exc:
        raise NonUniqueSolution(f"H_0 is not pinned down for n={n}, {variant}: {exc}") from None
    except NoSolution as exc:
        raise NoSolution(f"no H_0 commutes with the coideal for n={n}, {variant}: {exc}") from None
    matrix = {a: {b: sol[idx[a, b]] for b in letters if idx[a, b] in sol} for a in letters}
    h0 = H0Action(n, variant, matrix)
    if not _h0_quadratic_ok(h0):
        raise NoSolution(f"solved H_0 violates the quadratic relation for n={n}, {variant}")
    return h0


# -- the intertwiner -----------------------------------------------------------

@dataclass
class Intertwiner:
    """T = Υ on one space: ``columns[w] = T(v_w)``."""
    desc: ModuleDescriptor
    columns: dict = field(repr=False)

    def apply(self, vec: Mapping) -> dict:
        return apply_linear(vec, lambda w: self.columns[w])

    def to_json(self) -> dict:
        cols = []
        for w in sorted(self.columns):
            col = self.columns[w]
            cols.append([list(w), [[list(k), col[k].to_json()] for k in sorted(col)]])
        return {"space": self.desc.to_json(), "columns": cols}

    @classmethod
    def from_json(cls, desc: ModuleDescriptor, data: dict) -> "Intertwiner":
        cols = {}
        for w, terms in data["columns"]:
            cols[tuple(w)] = {tuple(k): LaurentPoly.from_json(c) for k, c in terms}
        return cls(desc, cols)


def _theta_invariant(nu: tuple[int, ...]) -> bool:
    return all(nu[i] == nu[len(nu) - 1 - i] for i in range(len(nu)))


def upsilon_solve(space: TensorSpace, variant: str | None = None, cache=None) -> Intertwiner:
    """
    Solve B_i T = T ψ(B_i) for T = id + sum over θ-invariant ν > 0 of weight-lowering
    blocks. The θ-invariance of ν is exactly commutation with the k_i.
    """
    variant = variant or space.desc.variant
    desc = space.desc.with_variant(variant)
    key = {"kind": "upsilon", "space": desc.to_json()}
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return Intertwiner.from_json(desc, hit)
    T = _upsilon(desc)
    if cache is not None:
        cache.put(key, T.to_json())
    return T


@lru_cache(maxsize=None)
def _upsilon(desc: ModuleDescriptor) -> Intertwiner:
    space = TensorSpace(desc)
    n = space.n
    ci = Coideal(n, desc.variant)
    words = space.words
    by_src: dict[Word, list[Word]] = {f: [] for f in words}
    unknowns: list[tuple[Word, Word]] = []
    for f in words:
        for h in words:
            nu = lowering_depth(f, h, n)
            if nu is not None and any(nu) and _theta_invariant(nu):
                by_src[f].append(h)
                unknowns.append((h, f))
    col = {u: k for k, u in enumerate(unknowns)}

    equations: dict[tuple, dict] = {}
    rhs: dict[tuple, LaurentPoly] = {}
    for i in range(1, n + 1):
        Bm = operator_matrix(space, lambda v: ci.b(space, i, v))
        Pm = operator_matrix(space, lambda v: ci.b(space, i, v, barred=True))
        for f in words:
            # B_i T' v_f
            for h in by_src[f]:
                for g, a in Bm[h].items():
                    add_term(equations.setdefault((i, g, f), {}), col[h, f], a)
            # - T' ψ(B_i) v_f
            for h, a in Pm[f].items():
                for g in by_src[h]:
                    add_term(equations.setdefault((i, g, f), {}), col[g, h], -a)
            # right side ψ(B_i) - B_i
            diff = dict(Pm[f])
            add_into(diff, Bm[f], -ONE)
            for g, a in diff.items():
                equations.setdefault((i, g, f), {})
                rhs[i, g, f] = a
    keys = sorted(equations)
    rows = [equations[k] for k in keys]
    b = [rhs.get(k, ZERO) for k in keys]
    try:
        sol = solve_laurent_blocks(rows, b, len(unknowns))
    except NonUniqueSolution as exc:
        raise NonUniqueIntertwiner(f"{desc.label()} (n={n}, {desc.variant}): {exc}") from None
    except NoSolution as exc:
        raise NoIntertwiner(f"{desc.label()} (n={n}, {desc.variant}): {exc}") from None
    columns = {f: {f: ONE} for f in words}
    for (h, f), k in col.items():
        x = sol.get(k)
        if x:
            columns[f][h] = x
    T = Intertwiner(desc, columns)
    _verify_upsilon(space, ci, T)
    return T


def _verify_upsilon(space: TensorSpace, ci: Coideal, T: Intertwiner) -> None:
    for i in range(1, space.n + 1):
        for f in space.words:
            lhs = ci.b(space, i, T.columns[f])
            rhs = T.apply(ci.b(space, i, {f: ONE}, barred=True))
            if lhs != rhs:
                raise InvariantViolation(f"B_{i} T != T ψ(B_{i}) on v{f}")
