"""The numbers game on GCM and E-GCM graphs.

Node indices are 0-based throughout the Python API.
"""

from .catalog import CatalogId, catalog, format_id, parse_id
from .classify import Classification, cross_validate, is_admissible, recognize
from .coxeter import coxeter_matrix, is_reduced, longest_length, orbit
from .engine import conserved_form, fire, legal_moves, play, replay
from .graph import AmplitudeGraph, connected_components, coxeter_label, induced_subgraph, validate
from .poset import check_m_structure, infer_finite_type, j_components, validate_poset, weight
from .scalars import EGCM, GCM
from .spectral import certify_divergence, cycle_charpoly_shift, firing_matrix_A, perron, trichotomy

__all__ = [
    "AmplitudeGraph", "CatalogId", "Classification", "EGCM", "GCM",
    "catalog", "certify_divergence", "check_m_structure", "conserved_form",
    "connected_components", "coxeter_label", "coxeter_matrix", "cross_validate",
    "cycle_charpoly_shift", "fire", "firing_matrix_A", "format_id", "induced_subgraph",
    "infer_finite_type", "is_admissible", "is_reduced", "j_components", "legal_moves",
    "longest_length", "orbit", "parse_id", "perron", "play", "recognize", "replay",
    "trichotomy", "validate", "validate_poset", "weight",
]
