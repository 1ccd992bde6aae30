"""
Transition coefficients between ι-canonical, canonical and mixed bases, with
N[q] verdicts.

For a tensor of factors split after position l, the mixed basis consists of
``b^ι_α ⊗ b_β`` (ι-canonical on the first l factors, canonical on the rest).
Every ι-canonical element of the whole space is expanded in it. The same is done
with canonical bases on both sides, and for B^ι(λ) inside B(λ).

>>> from icanon.tensor import ModuleDescriptor
>>> rep = positivity_report("mixed", SplitSpec(ModuleDescriptor(1, (1, 1)), 1))
>>> rep.all_positive, rep.summary()["coefficients"]
(True, 6)
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .barsolve import TransitionMatrix, TriangularBasis
from .errors import IcanonError, SpanMismatch
from .hecke import algebra
from .ring import LaurentPoly, is_nonneg
from .tensor.bases import build_space, iota_via_hecke, orbit_data, simple_extract
from .tensor.space import ModuleDescriptor, Word
from .vectors import add_into, tensor
from .weyl import CoxType

__all__ = [
    "SplitSpec", "CoefficientRecord", "PositivityReport", "PositivityFailure", "CrossCheck",
    "expand_mixed", "expand_pure", "expand_simple", "kl_cross_check", "refine_consistent",
    "positivity_report",
]


class PositivityFailure(IcanonError):
    def __init__(self, report: "PositivityReport"):
        super().__init__(f"{len(report.failures)} coefficients outside N[q]")
        self.report = report


@dataclass(frozen=True)
class SplitSpec:
    descriptor: ModuleDescriptor
    l: int

    def __post_init__(self):
        if not 0 <= self.l <= len(self.descriptor.factors):
            raise ValueError(f"split point {self.l} outside 0..{len(self.descriptor.factors)}")

    def halves(self) -> tuple[ModuleDescriptor, ModuleDescriptor]:
        return self.descriptor.split(self.l)

    @property
    def cut(self) -> int:
        """Number of tensor letters on the α side."""
        return sum(self.descriptor.factors[:self.l])


def _with_variant(spec: SplitSpec, variant: str | None) -> SplitSpec:
    if variant is None:
        return spec
    return SplitSpec(spec.descriptor.with_variant(variant), spec.l)


def _mixed_basis(left: dict, right: dict) -> dict:
    return {a + b: tensor(va, vb) for a, va in left.items() for b, vb in right.items()}


def _expand_all(targets: dict, basis: dict) -> TransitionMatrix:
    tb = TriangularBasis(basis)
    order = sorted(targets)
    return TransitionMatrix(order=order, columns={g: tb.expand(targets[g]) for g in order})


def expand_mixed(spec: SplitSpec, variant: str | None = None) -> TransitionMatrix:
    """t_{b; b_α, b_β}: each b^ι of the whole space in the basis {b^ι_α ⊗ b_β}."""
    spec = _with_variant(spec, variant)
    alpha, beta = spec.halves()
    full = build_space(spec.descriptor)
    mixed = _mixed_basis(build_space(alpha).iota, build_space(beta).canonical)
    return _expand_all(full.iota, mixed)


def expand_pure(spec: SplitSpec) -> TransitionMatrix:
    """t'_{b; b_1, b_2}: each canonical b of the whole space in {b_1 ⊗ b_2}."""
    alpha, beta = spec.halves()
    full = build_space(spec.descriptor)
    mixed = _mixed_basis(build_space(alpha).canonical, build_space(beta).canonical)
    return _expand_all(full.canonical, mixed)


def expand_simple(lam: tuple[int, ...], variant: str = "bw13") -> TransitionMatrix:
    """t_{b; b_1}: each element of B^ι(λ) in B(λ)."""
    sm = simple_extract(tuple(lam), variant)
    host = sm.host
    allowed = set(sm.canonical_index)
    cols = {}
    for b in sm.iota_index:
        col = host.canonical_tb.expand(host.iota[b])
        if not set(col) <= allowed:
            raise SpanMismatch(f"B^ι(λ) element {b} leaves span B(λ)")
        cols[b] = col
    return TransitionMatrix(order=list(sm.iota_index), columns=cols)


def refine_consistent(desc: ModuleDescriptor, l: int, l2: int, variant: str | None = None) -> bool:
    """
    Expanding at l and then refining the α block at l2 < l (rewriting the resulting
    canonical tensors b_β' ⊗ b_β in the canonical basis of the longer β side) equals
    expanding directly at l2.
    """
    if not 0 <= l2 <= l <= len(desc.factors):
        raise ValueError("need 0 <= l2 <= l <= number of factors")
    if variant is not None:
        desc = desc.with_variant(variant)
    coarse = expand_mixed(SplitSpec(desc, l))
    direct = expand_mixed(SplitSpec(desc, l2))
    alpha, _ = desc.split(l)
    inner = expand_mixed(SplitSpec(alpha, l2))
    cut2 = sum(desc.factors[:l2])
    beta2 = desc.split(l2)[1]
    beta2_tb = build_space(beta2).canonical_tb
    mid = desc.split(l2)[1].split(l - l2)
    can_mid, can_right = build_space(mid[0]).canonical, build_space(mid[1]).canonical
    cut = sum(desc.factors[:l])
    for g in coarse.order:
        acc: dict = {}
        for ab, t in coarse.column(g).items():
            a, b = ab[:cut], ab[cut:]
            for a2b2, s in inner.column(a).items():
                a2, b2 = a2b2[:cut2], a2b2[cut2:]
                # b_{b2} ⊗ b_{b} rewritten in the canonical basis of the β side at l2
                vec = tensor(can_mid[b2], can_right[b])
                for bb, r in beta2_tb.expand(vec).items():
                    add_into(acc, {a2 + bb: r}, t * s)
        if acc != direct.column(g):
            return False
    return True


# -- reports ------------------------------------------------------------------------

def _word_str(w: Word) -> str:
    return "(" + ",".join(str(a) for a in w) + ")"


@dataclass
class CoefficientRecord:
    b: Word
    alpha: Word
    beta: Word | None
    t: LaurentPoly
    verdict: bool


@dataclass
class PositivityReport:
    kind: str
    space: dict
    split: int | None
    records: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r.verdict]

    @property
    def all_positive(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        nontrivial = sum(1 for r in self.records if r.t.max_exp > 0)
        return {"coefficients": len(self.records), "positive": len(self.records) - len(self.failures),
                "failures": len(self.failures), "nontrivial": nontrivial}

    def to_json(self) -> str:
        recs = [{"b": list(r.b), "b_alpha": list(r.alpha), "b_beta": None if r.beta is None else list(r.beta),
                 "t": str(r.t), "t_terms": r.t.to_json(), "verdict": r.verdict} for r in self.records]
        payload = {"kind": self.kind, "space": self.space, "split": self.split,
                   "summary": self.summary(), "records": recs,
                   "failures": [i for i, r in enumerate(self.records) if not r.verdict]}
        return json.dumps(payload, sort_keys=True, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["b", "b_alpha", "b_beta", "t", "verdict"])
        for r in self.records:
            w.writerow([_word_str(r.b), _word_str(r.alpha), "" if r.beta is None else _word_str(r.beta),
                        str(r.t), "true" if r.verdict else "false"])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"# {self.kind} expansion, space {self.space}, split {self.split}"]
        for r in self.records:
            rhs = _word_str(r.alpha) + ("" if r.beta is None else " ⊗ " + _word_str(r.beta))
            lines.append(f"{_word_str(r.b)}  {rhs}  {r.t}  {'ok' if r.verdict else 'NEGATIVE'}")
        s = self.summary()
        lines.append(f"# {s['coefficients']} coefficients, {s['failures']} outside N[q]")
        return "\n".join(lines) + "\n"


def _records(matrix: TransitionMatrix, cut: int | None) -> list:
    out = []
    for b in matrix.order:
        col = matrix.column(b)
        for k in sorted(col):
            t = col[k]
            a, be = (k, None) if cut is None else (k[:cut], k[cut:])
            out.append(CoefficientRecord(b, a, be, t, is_nonneg(t)))
    return out


def positivity_report(kind: str, spec: SplitSpec | None = None, variant: str | None = None,
                      lam: tuple[int, ...] | None = None) -> PositivityReport:
    """``kind`` is mixed, pure or simple."""
    if kind == "simple":
        v = variant or "bw13"
        m = expand_simple(tuple(lam), v)
        return PositivityReport("simple", {"lambda": list(lam), "variant": v}, None, _records(m, None))
    if spec is None:
        raise ValueError("a SplitSpec is required")
    spec = _with_variant(spec, variant)
    m = expand_mixed(spec) if kind == "mixed" else expand_pure(spec)
    return PositivityReport(kind, spec.descriptor.to_json(), spec.l, _records(m, spec.cut))


# -- comparison with parabolic KL polynomials of type B ------------------------------

@dataclass
class CrossCheck:
    ok: bool
    diffs: list = field(default_factory=list)


def kl_cross_check(n: int, m: int, l: int = 0, variant: str = "bw13") -> CrossCheck:
    """
    On V^{⊗m}: B^ι against type B parabolic KL elements orbit by orbit, and the mixed
    expansion at split l against the parabolic hybrid decomposition for
    I = {s_0..s_{l-1}} ∪ {s_{l+1}..s_{m-1}}.
    """
    if variant != "bw13":
        raise ValueError("the type B Kazhdan-Lusztig comparison applies to the bw13 variant")
    desc = ModuleDescriptor(n, (1,) * m, variant)
    diffs = []
    bs = build_space(desc)
    oracle = iota_via_hecke(n, m)
    for g in sorted(bs.iota):
        if bs.iota[g] != oracle.get(g):
            diffs.append({"check": "iota-basis", "index": list(g)})
    mixed = expand_mixed(SplitSpec(desc, l))
    I = frozenset(range(0, l)) | frozenset(range(l + 1, m))
    t = CoxType("B", m)
    for f, J, wmap in orbit_data(n, m, "B"):
        M = algebra(t).parabolic(J)
        for w, g in wmap.items():
            expected = {wmap[y]: c for y, c in M.decompose(I, w).items()}
            if mixed.column(g) != expected:
                diffs.append({"check": "mixed-vs-decompose", "index": list(g)})
    return CrossCheck(not diffs, diffs)
