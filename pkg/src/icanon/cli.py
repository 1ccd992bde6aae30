"""
Command-line front end.

    icanon kl --family A --rank 2
    icanon pkl --family A --rank 2 --J s1
    icanon hybrid --family B --rank 2 --I s1 --w "s0 s1"
    icanon basis --n 1 --factors V,V --kind canonical
    icanon positivity --n 1 --factors V,V --split 1 --variant bw13

Exit codes: 0 success, 1 a coefficient outside N[q], 2 configuration error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .cache import ENV_VAR, FixtureCache
from .errors import ConfigError, IcanonError, InvalidParabolic, RankLimit, SizeLimit
from .hecke import algebra, export_record
from .positivity import PositivityFailure, SplitSpec, positivity_report
from .tensor import ModuleDescriptor, build_space, set_fixture_cache
from .tensor.bases import export_record as export_basis
from .tensor.space import VARIANTS
from .weyl import CoxType, parse_parabolic

RANK_LIMITS = {"A": 5, "B": 4}
SIZE_LIMIT = 4096


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    rank: int | None = None
    J: frozenset = frozenset()
    I: frozenset = frozenset()
    w: str | None = None
    n: int | None = None
    factors: str | None = None
    kind: str = "canonical"
    variant: str = "bw13"
    split: int | None = None
    expansion: str = "mixed"
    lam: tuple | None = None
    fmt: str = "text"
    out: str | None = None
    cache_dir: str | None = None
    extra: dict = field(default_factory=dict)

    def cox_type(self) -> CoxType:
        if self.family not in RANK_LIMITS:
            raise ConfigError("family", f"must be A or B, got {self.family!r}")
        if self.rank is None or self.rank < 1:
            raise ConfigError("rank", "must be a positive integer")
        if self.rank > RANK_LIMITS[self.family]:
            raise RankLimit("rank", f"{self.family}{self.rank} exceeds the limit {self.family}{RANK_LIMITS[self.family]}")
        return CoxType.from_rank(self.family, self.rank)

    def descriptor(self) -> ModuleDescriptor:
        if self.n is None or self.n < 1:
            raise ConfigError("n", "must be a positive integer")
        if self.variant not in VARIANTS:
            raise ConfigError("variant", f"must be one of {', '.join(VARIANTS)}")
        try:
            desc = ModuleDescriptor.parse(self.n, self.factors or "", self.variant)
        except (ValueError, IcanonError) as exc:
            raise ConfigError("factors", str(exc)) from None
        if (self.n + 1) ** desc.m > SIZE_LIMIT:
            raise SizeLimit("factors", f"ambient dimension {(self.n + 1) ** desc.m} exceeds {SIZE_LIMIT}")
        return desc


def _check_parabolic(t: CoxType, field_name: str, S: frozenset) -> frozenset:
    bad = sorted(S - set(t.generators))
    if bad:
        raise InvalidParabolic(field_name, f"s{bad[0]} is not a generator of {t.name}")
    return S


def _parse_element(t: CoxType, text: str):
    W = algebra(t).W
    try:
        return W.parse(text)
    except (ValueError, IndexError) as exc:
        raise ConfigError("w", str(exc)) from None


# -- tables -----------------------------------------------------------------------------

@dataclass
class Table:
    title: str
    meta: dict
    header: list
    rows: list
    payload: dict | None = None  # JSON document; rows are used when absent

    def render(self, fmt: str) -> str:
        if fmt == "json":
            if self.payload is not None:
                payload = dict(self.meta, **self.payload)
            else:
                payload = dict(self.meta, columns=self.header, rows=self.rows)
            return json.dumps(payload, sort_keys=True, indent=1) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        widths = [max(len(str(x)) for x in col) for col in zip(self.header, *self.rows)] if self.rows else []
        lines = [f"# {self.title}"]
        if widths:
            lines.append("  ".join(str(h).ljust(k) for h, k in zip(self.header, widths)).rstrip())
            for r in self.rows:
                lines.append("  ".join(str(x).ljust(k) for x, k in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


def _hecke_rows(H, columns: dict, order) -> list:
    W = H.W
    rows = []
    for w in order:
        col = columns[w]
        for y in sorted(col, key=lambda x: (W.length(x), x)):
            rows.append([W.format_word(y), W.format_word(w), str(col[y])])
    return rows


def _hecke_table(H, title: str, meta: dict, header: list, columns: dict, order) -> Table:
    elements = [export_record(H.type, meta["basis"], w, columns[w]) for w in order]
    return Table(title, meta, header, _hecke_rows(H, columns, order), {"elements": elements})


def cmd_kl(cfg: RunConfig) -> Table:
    t = cfg.cox_type()
    H = algebra(t)
    order = [_parse_element(t, cfg.w)] if cfg.w else list(H.W.elements())
    cols = {w: H.kl(w) for w in order}
    return _hecke_table(H, f"p_(y,w) for {t.name}", {"command": "kl", "type": t.name, "basis": "kl"},
                        ["y", "w", "p"], cols, order)


def cmd_pkl(cfg: RunConfig) -> Table:
    t = cfg.cox_type()
    H = algebra(t)
    J = _check_parabolic(t, "J", cfg.J)
    M = H.parabolic(J)
    if cfg.w:
        w = _parse_element(t, cfg.w)
        if not M.is_index(w):
            raise ConfigError("w", f"{H.W.format_word(w)} is not a minimal coset representative for J")
        order = [w]
    else:
        order = list(M.basis)
    cols = {w: M.kl(w) for w in order}
    return _hecke_table(H, f"p+_(y,w) for {t.name}, J={sorted(J)}",
                        {"command": "pkl", "type": t.name, "J": sorted(J), "basis": "parabolic"},
                        ["y", "w", "p+"], cols, order)


def cmd_hybrid(cfg: RunConfig) -> Table:
    """With --w and no --J: the hybrid element over the standard basis. Otherwise the decomposition table."""
    t = cfg.cox_type()
    H = algebra(t)
    I = _check_parabolic(t, "I", cfg.I)
    J = _check_parabolic(t, "J", cfg.J)
    meta = {"command": "hybrid", "type": t.name, "I": sorted(I), "basis": "hybrid"}
    if cfg.w and not cfg.J and not cfg.extra.get("decompose"):
        w = _parse_element(t, cfg.w)
        cols = {w: H.hybrid(I, w)}
        return _hecke_table(H, f"hybrid element for {t.name}, I={sorted(I)}", meta,
                            ["y", "w", "coefficient"], cols, [w])
    if cfg.J:
        M = H.parabolic(J)
        meta["J"] = sorted(J)
        order = [_parse_element(t, cfg.w)] if cfg.w else list(M.basis)
        cols = {w: M.decompose(I, w) for w in order}
        return _hecke_table(H, f"p^(I,+)_(y,w) for {t.name}, I={sorted(I)}, J={sorted(J)}", meta,
                            ["y", "w", "p^(I,+)"], cols, order)
    order = [_parse_element(t, cfg.w)] if cfg.w else list(H.W.elements())
    cols = {w: H.decompose_GH(I, w) for w in order}
    return _hecke_table(H, f"p^I_(y;w) for {t.name}, I={sorted(I)}", meta, ["y", "w", "p^I"],
                        cols, order)


def _word(w) -> str:
    return "(" + ",".join(str(a) for a in w) + ")"


def cmd_basis(cfg: RunConfig) -> Table:
    desc = cfg.descriptor()
    if cfg.kind not in ("canonical", "iota"):
        raise ConfigError("kind", "must be canonical or iota")
    bs = build_space(desc)
    basis = bs.basis(cfg.kind)
    rows = []
    for b in sorted(basis):
        vec = basis[b]
        for g in sorted(vec):
            rows.append([_word(b), _word(g), str(vec[g])])
    return Table(f"{cfg.kind} basis of {desc.label()} (n={desc.n}, {desc.variant})", {"command": "basis"},
                 ["index", "word", "coefficient"], rows, export_basis(bs, cfg.kind))


def cmd_positivity(cfg: RunConfig):
    if cfg.lam is not None:
        if cfg.variant not in VARIANTS:
            raise ConfigError("variant", f"must be one of {', '.join(VARIANTS)}")
        if any(a < 0 for a in cfg.lam) or not cfg.lam:
            raise ConfigError("lambda", "must be a nonempty list of nonnegative integers")
        desc_size = (len(cfg.lam) + 1) ** sum(i * a for i, a in enumerate(cfg.lam, start=1))
        if desc_size > SIZE_LIMIT:
            raise SizeLimit("lambda", f"ambient dimension {desc_size} exceeds {SIZE_LIMIT}")
        return positivity_report("simple", variant=cfg.variant, lam=tuple(cfg.lam))
    desc = cfg.descriptor()
    k = len(desc.factors)
    split = k if cfg.split is None else cfg.split
    if not 0 <= split <= k:
        raise ConfigError("split", f"must lie in 0..{k}")
    if cfg.expansion not in ("mixed", "pure"):
        raise ConfigError("expansion", "must be mixed or pure")
    return positivity_report(cfg.expansion, SplitSpec(desc, split))


# -- argument parsing --------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--cache-dir", help=f"fixture cache directory (default: ${ENV_VAR})")
    p.add_argument("--no-cache", action="store_true", help="ignore any configured cache")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="icanon", description=__doc__.split("\n\n")[0].strip())
    ap.add_argument("--version", action="version", version=f"icanon {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, helptext in (("kl", "KL polynomials p_(y,w)"),
                           ("pkl", "parabolic KL polynomials p+_(y,w)"),
                           ("hybrid", "hybrid basis elements and p^I / p^(I,+) decompositions")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--family", required=True, choices=["A", "B"])
        p.add_argument("--rank", required=True, type=int)
        p.add_argument("--w", help='element as a reduced word ("s0 s1") or window ("[-2,1]")')
        if name in ("pkl", "hybrid"):
            p.add_argument("--J", default="", help='parabolic generators, e.g. "s1,s2"')
        if name == "hybrid":
            p.add_argument("--I", default="", help="parabolic generators of the restriction")
            p.add_argument("--decompose", action="store_true",
                           help="with --w, print the decomposition column instead of the hybrid element")
        _add_common(p)

    p = sub.add_parser("basis", help="canonical or ι-canonical basis of a tensor space")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--factors", required=True, help="e.g. V,wedge2,V")
    p.add_argument("--kind", choices=["canonical", "iota"], default="canonical")
    p.add_argument("--variant", choices=list(VARIANTS), default="bw13")
    _add_common(p)

    p = sub.add_parser("positivity", help="transition coefficients with N[q] verdicts")
    p.add_argument("--n", type=int)
    p.add_argument("--factors", help="e.g. V,V,V")
    p.add_argument("--split", type=int, help="split point l (default: number of factors)")
    p.add_argument("--variant", choices=list(VARIANTS), default="bw13")
    p.add_argument("--expansion", choices=["mixed", "pure"], default="mixed")
    p.add_argument("--lambda", dest="lam", help="highest weight a_1,...,a_n for the simple-module expansion")
    _add_common(p)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, out=ns.out)
    if ns.no_cache:
        cfg.cache_dir = None
    else:
        cfg.cache_dir = ns.cache_dir or os.environ.get(ENV_VAR) or None
    if ns.command in ("kl", "pkl", "hybrid"):
        cfg.family, cfg.rank, cfg.w = ns.family, ns.rank, ns.w
        try:
            cfg.J = parse_parabolic(getattr(ns, "J", ""))
        except ValueError:
            raise InvalidParabolic("J", f"cannot parse {ns.J!r}") from None
        try:
            cfg.I = parse_parabolic(getattr(ns, "I", ""))
        except ValueError:
            raise InvalidParabolic("I", f"cannot parse {ns.I!r}") from None
        cfg.extra["decompose"] = getattr(ns, "decompose", False)
    elif ns.command == "basis":
        cfg.n, cfg.factors, cfg.kind, cfg.variant = ns.n, ns.factors, ns.kind, ns.variant
    else:
        cfg.variant, cfg.split, cfg.expansion = ns.variant, ns.split, ns.expansion
        if ns.lam is not None:
            try:
                cfg.lam = tuple(int(x) for x in ns.lam.replace(" ", "").split(",") if x)
            except ValueError:
                raise ConfigError("lambda", f"cannot parse {ns.lam!r}") from None
        else:
            if ns.n is None or ns.factors is None:
                raise ConfigError("factors", "--n and --factors are required unless --lambda is given")
            cfg.n, cfg.factors = ns.n, ns.factors
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    set_fixture_cache(FixtureCache(cfg.cache_dir) if cfg.cache_dir else None)
    try:
        if cfg.command == "positivity":
            report = cmd_positivity(cfg)
            text = {"json": lambda: report.to_json() + "\n", "csv": report.to_csv,
                    "text": report.to_text}[cfg.fmt]()
            _emit(text, cfg.out)
            if not report.all_positive:
                raise PositivityFailure(report)
            return 0
        table = {"kl": cmd_kl, "pkl": cmd_pkl, "hybrid": cmd_hybrid, "basis": cmd_basis}[cfg.command](cfg)
        _emit(table.render(cfg.fmt), cfg.out)
        return 0
    finally:
        set_fixture_cache(None)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except ConfigError as exc:
        print(f"icanon: configuration error: {exc}", file=sys.stderr)
        return 2
    except PositivityFailure as exc:
        dump = {"failures": [{"b": list(r.b), "b_alpha": list(r.alpha),
                              "b_beta": None if r.beta is None else list(r.beta), "t": str(r.t)}
                             for r in exc.report.failures]}
        print("icanon: positivity failure\n" + json.dumps(dump, sort_keys=True), file=sys.stderr)
        return 1
    except IcanonError as exc:
        print(f"icanon: internal invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
