"""Virtual knots as signed Gauss diagrams: arc shifts, region arc shifts,
forbidden moves, the odd writhe, and bounded unknotting search."""

from .gauss import (
    Endpoint,
    GaussDiagram,
    GaussError,
    Parity,
    Role,
    canonical_code,
    canonicalize,
    interleaves,
    is_parallel,
    parity,
    parity_table,
    parse,
    render,
)
from .invariants import InvariantReport, arc_shift_lower_bound, odd_writhe, report, writhe
from .moves import MoveFamily, MoveInstance, MoveKind, NotApplicable, apply, enumerate_moves, parse_move
from .planar import PlanarDiagram, read_gauss, realize, region_arc_shift, regions
from .search import SearchConfig, SearchResult, constructive_unknot, forbidden_to_ras, unknotting_search

__version__ = "0.1.0"

__all__ = [
    "Endpoint",
    "GaussDiagram",
    "GaussError",
    "Parity",
    "Role",
    "canonical_code",
    "canonicalize",
    "interleaves",
    "is_parallel",
    "parity",
    "parity_table",
    "parse",
    "render",
    "InvariantReport",
    "arc_shift_lower_bound",
    "odd_writhe",
    "report",
    "writhe",
    "MoveFamily",
    "MoveInstance",
    "MoveKind",
    "NotApplicable",
    "apply",
    "enumerate_moves",
    "parse_move",
    "PlanarDiagram",
    "read_gauss",
    "realize",
    "region_arc_shift",
    "regions",
    "SearchConfig",
    "SearchResult",
    "constructive_unknot",
    "forbidden_to_ras",
    "unknotting_search",
]
