"""MMP hypergraphs: parsing, contextuality checks, masters from vector
components, stripping to critical sets, canonical forms and coordinatization
checks."""
from .canon import CanonicalForm, are_isomorphic, canonical_form, dedup
from .coords import (
    Coordinatization,
    CoordReport,
    build_original_ks,
    coordinated_fill,
    parse_sidecar,
    verify_coordinatization,
)
from .hypergraph import (
    Mmph,
    cleanup,
    fill,
    parse_mmph,
    relabel,
    remove_hyperedge,
    serialize_mmph,
    validate,
)
from .master import ComponentSet, Master, build_master, enumerate_rays
from .states import find_binary_assignment, is_binary, is_critical, is_ks, verdict
from .strip import GenConfig, add_random_hyperedges, drop_m1, strip_search

__all__ = [
    "CanonicalForm", "ComponentSet", "CoordReport", "Coordinatization", "GenConfig",
    "Master", "Mmph", "add_random_hyperedges", "are_isomorphic", "build_master",
    "build_original_ks", "canonical_form", "cleanup", "coordinated_fill", "dedup",
    "drop_m1", "enumerate_rays", "fill", "find_binary_assignment", "is_binary",
    "is_critical", "is_ks", "parse_mmph", "parse_sidecar", "relabel",
    "remove_hyperedge", "serialize_mmph", "strip_search", "validate",
    "verdict", "verify_coordinatization",
]
