"""
Canonical and ι-canonical bases of tensor spaces, based morphisms, and simple submodules.

B◇ is the ψ-invariant basis unitriangular over the standard basis with qZ[q]
lower entries; B^ι is the ψ_ι-invariant basis unitriangular over B◇ with qZ[q]
lower entries. Both are computed with :func:`icanon.barsolve.canonicalize`.

For a tensor of wedges there are two routes: the image of the bases of the
ambient tensor power under the quotient map, and a direct computation with the
induced ψ and a separately solved Υ. They must agree.

>>> bs = build_space(ModuleDescriptor(1, (1, 1)))
>>> bs.space.format(bs.canonical[(2, 1)])
'q*v(1,2) + v(2,1)'
>>> sp = TensorSpace(ModuleDescriptor(1, (1,)))
>>> b = build_space(ModuleDescriptor(1, (1,), "bw13"))
>>> [sp.format(b.iota[w]) for w in sorted(b.iota)]
['v(1) + q*v(2)', 'v(2)']
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping

from ..barsolve import BarSystem, TransitionMatrix, TriangularBasis, canonicalize, linear_extension
from ..errors import BasedMorphismViolation, SpanMismatch
from ..hecke import algebra
from ..linalg import evaluation_points, eval_matrix, rank_mod
from ..ring import ONE
from ..weyl import CoxType, group
from .coideal import solve_h0, upsilon_solve
from .space import ModuleDescriptor, TensorSpace, Word

__all__ = [
    "BasedSpace", "SimpleModule", "canonical_basis", "iota_canonical_basis", "build_space",
    "wedge_project", "simple_extract", "weyl_dimension", "hecke_b", "psi_iota",
    "canonical_via_hecke", "iota_via_hecke", "psi_iota_via_hecke", "export_json", "export_record",
    "set_fixture_cache",
]

_CACHE = None


def set_fixture_cache(cache) -> None:
    """Route H_0 and Υ solves through a :class:`icanon.cache.FixtureCache` (or None)."""
    global _CACHE
    _CACHE = cache


# -- bases on one space ----------------------------------------------------------

@lru_cache(maxsize=None)
def _canonical(desc: ModuleDescriptor) -> TransitionMatrix:
    space = TensorSpace(desc)
    R = {w: space.psi_basis(w) for w in space.words}
    return canonicalize(BarSystem(order=linear_extension(R), bar=R))


def canonical_basis(space: TensorSpace | ModuleDescriptor) -> TransitionMatrix:
    """B◇ over the standard basis, computed on the space itself with its ψ."""
    desc = space.desc if isinstance(space, TensorSpace) else space
    return _canonical(desc.with_variant("bw13"))


def psi_iota(space: TensorSpace, vec: Mapping, variant: str | None = None) -> dict:
    """ψ_ι = Υ ∘ ψ."""
    T = upsilon_solve(space, variant, cache=_CACHE)
    return T.apply(space.psi(vec))


@lru_cache(maxsize=None)
def _iota(desc: ModuleDescriptor) -> tuple[TransitionMatrix, dict]:
    space = TensorSpace(desc)
    C = canonical_basis(desc)
    TB = TriangularBasis(C.columns)
    T = upsilon_solve(space, desc.variant, cache=_CACHE)
    R = {b: TB.expand(T.apply(C.columns[b])) for b in C.order}
    t = canonicalize(BarSystem(order=linear_extension(R), bar=R))
    std = {b: TB.synthesize(t.columns[b]) for b in t.order}
    return t, std


def iota_canonical_basis(space: TensorSpace | ModuleDescriptor, variant: str | None = None):
    """(B^ι over B◇ as a TransitionMatrix, B^ι over the standard basis), computed directly on the space."""
    desc = space.desc if isinstance(space, TensorSpace) else space
    if variant is not None:
        desc = desc.with_variant(variant)
    return _iota(desc)


# -- based spaces ------------------------------------------------------------------

@dataclass
class BasedSpace:
    """A space with B◇ and B^ι, each keyed by its leading word and expanded over the standard basis."""
    desc: ModuleDescriptor
    canonical: dict
    iota: dict
    iota_over_canonical: dict
    route: str
    zero_canonical: tuple = ()
    zero_iota: tuple = ()

    @cached_property
    def space(self) -> TensorSpace:
        return TensorSpace(self.desc)

    @cached_property
    def canonical_tb(self) -> TriangularBasis:
        return TriangularBasis(self.canonical)

    @cached_property
    def iota_tb(self) -> TriangularBasis:
        return TriangularBasis(self.iota)

    def basis(self, kind: str) -> dict:
        return self.canonical if kind == "canonical" else self.iota


def _direct(desc: ModuleDescriptor) -> BasedSpace:
    C = canonical_basis(desc)
    t, std = iota_canonical_basis(desc)
    return BasedSpace(desc, dict(C.columns), std, dict(t.columns), "direct")


def _images(space: TensorSpace, basis: Mapping, label: str) -> tuple[dict, tuple]:
    """Push an ambient basis through the quotient map; each nonzero image must be a unit-led target vector."""
    images, zeros = {}, []
    for g in sorted(basis):
        img = space.project(basis[g])
        if not img:
            zeros.append(g)
            continue
        if g not in space.word_set or img.get(g) != ONE:
            raise BasedMorphismViolation(f"{label} element at {g} maps to a vector not led by v{g}")
        images[g] = img
    if set(images) != space.word_set:
        raise BasedMorphismViolation(f"{label} images do not biject onto the target basis")
    return images, tuple(zeros)


@lru_cache(maxsize=None)
def build_space(desc: ModuleDescriptor, route: str = "image") -> BasedSpace:
    """
    ``image``: bases are nonzero images of the ambient tensor-power bases.
    ``direct``: bases computed on the quotient itself with its induced ψ and Υ.
    Pure tensor powers are always computed directly.
    """
    if desc.is_pure or route == "direct":
        return _direct(desc)
    if route != "image":
        raise ValueError(f"route must be image or direct, got {route!r}")
    amb = build_space(desc.ambient())
    space = TensorSpace(desc)
    can, zc = _images(space, amb.canonical, "canonical")
    iota, zi = _images(space, amb.iota, "ι-canonical")
    over = TriangularBasis(can)
    iota_over = {b: over.expand(v) for b, v in iota.items()}
    return BasedSpace(desc, can, iota, iota_over, "image", zc, zi)


def wedge_project(vec: Mapping, target: ModuleDescriptor) -> dict:
    """The quotient map from V^{⊗m} onto the tensor of wedges described by ``target``."""
    return TensorSpace(target).project(vec)


# -- type A and type B Hecke structure on pure tensor powers --------------------

def hecke_b(space: TensorSpace, vec: Mapping, i: int, variant: str | None = None) -> dict:
    """vec * H_i for the type B_m Hecke algebra; H_0 acts on the first factor."""
    if i == 0:
        return solve_h0(space.n, variant or space.desc.variant, cache=_CACHE).act(vec)
    return space.hecke_a(vec, i)


def _word_action(word: Word, i: int, n: int) -> Word:
    """The underlying place action: s_i swaps letters i, i+1; s_0 replaces the first letter a by n + 2 - a."""
    if i == 0:
        return (n + 2 - word[0],) + word[1:]
    return word[:i - 1] + (word[i], word[i - 1]) + word[i + 1:]


def _orbits(n: int, m: int, family: str):
    """Anchors with stabilizer J and the map ^J W -> words, for type A or B place actions."""
    words = TensorSpace(ModuleDescriptor(n, (1,) * m)).words
    W = group(CoxType(family, m))
    out = []
    for f in words:
        if any(f[k] > f[k + 1] for k in range(m - 1)):
            continue
        if family == "B" and m and 2 * f[0] < n + 2:
            continue
        J = {k for k in range(1, m) if f[k - 1] == f[k]}
        if family == "B" and m and 2 * f[0] == n + 2:
            J.add(0)
        J = frozenset(J)
        wmap = {}
        for y in W.min_coset_reps((), J, "left"):
            g = f
            for i in W.reduced_word(y):
                g = _word_action(g, i, n)
            wmap[y] = g
        out.append((f, J, wmap))
    return out


def canonical_via_hecke(n: int, m: int) -> dict:
    """B◇ of V^{⊗m} from type A parabolic KL elements, orbit by orbit."""
    out = {}
    t = CoxType("A", max(m, 1))
    for f, J, wmap in _orbits(n, m, "A"):
        M = algebra(t).parabolic(J)
        for w, g in wmap.items():
            out[g] = {wmap[y]: c for y, c in M.kl(w).items()}
    return out


def iota_via_hecke(n: int, m: int) -> dict:
    """B^ι of V^{⊗m} (bw13) from type B parabolic KL elements, orbit by orbit."""
    out = {}
    t = CoxType("B", m)
    for f, J, wmap in _orbits(n, m, "B"):
        M = algebra(t).parabolic(J)
        for w, g in wmap.items():
            out[g] = {wmap[y]: c for y, c in M.kl(w).items()}
    return out


def psi_iota_via_hecke(n: int, m: int) -> dict:
    """ψ_ι(v_g) for every word g (bw13), from the parabolic bar involution of type B."""
    out = {}
    t = CoxType("B", m)
    for f, J, wmap in _orbits(n, m, "B"):
        M = algebra(t).parabolic(J)
        for w, g in wmap.items():
            out[g] = {wmap[y]: c for y, c in M.bar_std(w).items()}
    return out


def orbit_data(n: int, m: int, family: str):
    """Public view of the orbit decomposition: list of (anchor, J, {y: word})."""
    return _orbits(n, m, family)


# -- simple submodules -------------------------------------------------------------

def weyl_dimension(lam: tuple[int, ...]) -> int:
    """dim L(λ) for sl(n+1), λ = sum a_i ω_i given as (a_1, ..., a_n)."""
    n = len(lam)
    num = Fraction(1)
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            num *= Fraction(sum(lam[i - 1:j - 1]) + j - i, j - i)
    return int(num)


def host_descriptor(lam: tuple[int, ...], variant: str = "bw13") -> ModuleDescriptor:
    """a_i copies of wedge(i), in increasing i."""
    factors = tuple(i for i, a in enumerate(lam, start=1) for _ in range(a))
    return ModuleDescriptor(len(lam), factors, variant)


@dataclass
class SimpleModule:
    lam: tuple[int, ...]
    host: BasedSpace
    highest: Word
    span_dim: int
    canonical_index: tuple   # B(λ), as leading words in the host
    iota_index: tuple        # B^ι(λ)

    @property
    def weyl_dim(self) -> int:
        return weyl_dimension(self.lam)


def _support_closure(vectors, tb: TriangularBasis) -> set:
    S = set()
    for v in vectors:
        S |= set(tb.expand(v))
    return S


def _check_stable(space: TensorSpace, basis: Mapping, S: set, tb: TriangularBasis, label: str) -> None:
    for b in sorted(S):
        for i in range(1, space.n + 1):
            for op in (space.e, space.f):
                supp = set(tb.expand(op(i, basis[b])))
                if not supp <= S:
                    raise SpanMismatch(f"{label} span is not stable: {op.__name__}_{i} leaves it at {b}")


@lru_cache(maxsize=None)
def simple_extract(lam: tuple[int, ...], variant: str = "bw13") -> SimpleModule:
    """
    L(λ) = U v⁺ inside the tensor of wedges prescribed by λ, with B(λ) and B^ι(λ).

    The F-closure of v⁺ is collected with a rank test at one evaluation point, which
    can only undercount. The support S of its expansion in a basis then spans a space
    containing L(λ); |S| equal to the counted rank, together with exact E/F stability of
    span(S), proves span(S) = L(λ).
    """
    lam = tuple(int(a) for a in lam)
    desc = host_descriptor(lam, variant)
    host = build_space(desc)
    space = host.space
    highest = sum((tuple(range(1, k + 1)) for k in desc.factors), ())
    point = evaluation_points(1, start=20_000)
    index = {w: k for k, w in enumerate(space.words)}

    def residues(vecs):
        rows = [{index[w]: c for w, c in v.items()} for v in vecs]
        return eval_matrix(rows, len(index), point)[0]

    kept = [{highest: ONE}]
    queue = [kept[0]]
    while queue:
        v = queue.pop(0)
        for i in range(1, space.n + 1):
            w = space.f(i, v)
            if not w:
                continue
            if rank_mod(residues(kept + [w])) > len(kept):
                kept.append(w)
                queue.append(w)
    dim = len(kept)

    S = _support_closure(kept, host.canonical_tb)
    if len(S) != dim:
        raise SpanMismatch(f"B(λ) has {len(S)} elements but L(λ) has dimension {dim}")
    _check_stable(space, host.canonical, S, host.canonical_tb, "B(λ)")
    Si = _support_closure(kept, host.iota_tb)
    if len(Si) != dim:
        raise SpanMismatch(f"B^ι(λ) has {len(Si)} elements but L(λ) has dimension {dim}")
    _check_stable(space, host.iota, Si, host.iota_tb, "B^ι(λ)")
    return SimpleModule(lam, host, highest, dim, tuple(sorted(S)), tuple(sorted(Si)))


# -- export ------------------------------------------------------------------------

def export_record(bs: BasedSpace, kind: str) -> dict:
    basis = bs.basis(kind)
    elements = []
    for b in sorted(basis):
        vec = basis[b]
        elements.append({"index": list(b), "terms": [[list(w), vec[w].to_json()] for w in sorted(vec)]})
    return {"space": bs.desc.to_json(), "basis": "canonical" if kind == "canonical" else "iota",
            "elements": elements}


def export_json(bs: BasedSpace, kind: str) -> str:
    return json.dumps(export_record(bs, kind), sort_keys=True)
