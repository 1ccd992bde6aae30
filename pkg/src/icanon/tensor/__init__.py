"""Quantum group and coideal actions on tensor spaces, with canonical and ι-canonical bases."""

from .bases import (
    BasedSpace, SimpleModule, build_space, canonical_basis, canonical_via_hecke, export_json,
    export_record,    hecke_b, iota_canonical_basis, iota_via_hecke, psi_iota, psi_iota_via_hecke,
    set_fixture_cache, simple_extract, wedge_project, weyl_dimension,
)
from .coideal import Coideal, H0Action, Intertwiner, solve_h0, upsilon_solve
from .space import VARIANTS, ModuleDescriptor, TensorSpace, weight

__all__ = [
    "VARIANTS", "ModuleDescriptor", "TensorSpace", "weight",
    "Coideal", "H0Action", "Intertwiner", "solve_h0", "upsilon_solve",
    "BasedSpace", "SimpleModule", "build_space", "canonical_basis", "canonical_via_hecke",
    "export_json", "export_record", "hecke_b", "iota_canonical_basis", "iota_via_hecke", "psi_iota",
    "psi_iota_via_hecke", "set_fixture_cache", "simple_extract", "wedge_project", "weyl_dimension",
]
