"""Exact computations with comatrix coalgebras, monomial coalgebras of quivers
and the splitting of the rational part of modules over their duals."""

from .coalgebra import FiniteCoalgebra, verify_coalgebra, dual_algebra, injectives
from .comatrix import (
    Bicomodule,
    MoritaTakeuchiContext,
    TriangularData,
    check_context,
    generalized_comatrix,
    triangular_comatrix,
)
from .errors import InsufficientPrecision, StructureError, TricoalgError, UnsupportedConfiguration
from .exactla import GF, QQ
from .quiver import MonomialSpec, Quiver, instantiate
from .series import PowerSeries, rat_part_fg, snf_dvr
from .splitting import decide_left_splitting, decide_right_splitting

__version__ = "0.1.0"

__all__ = [
    "Bicomodule",
    "FiniteCoalgebra",
    "GF",
    "InsufficientPrecision",
    "MonomialSpec",
    "MoritaTakeuchiContext",
    "PowerSeries",
    "QQ",
    "Quiver",
    "StructureError",
    "TriangularData",
    "TricoalgError",
    "UnsupportedConfiguration",
    "check_context",
    "decide_left_splitting",
    "decide_right_splitting",
    "dual_algebra",
    "generalized_comatrix",
    "injectives",
    "instantiate",
    "rat_part_fg",
    "snf_dvr",
    "triangular_comatrix",
    "verify_coalgebra",
]
