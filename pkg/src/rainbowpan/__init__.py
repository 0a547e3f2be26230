"""Rainbow cycles in families of graphs on a common vertex set."""

from .certify import RainbowCycleCert, RainbowPathCert, Violation, verify_cycle_cert, verify_path_cert
from .errors import FamilyFormatError, GenerationError, PreconditionError, RainbowError, UsageError
from .extremal import (
    ExceptionEvidence,
    detect_bipartite_exception,
    make_balanced_bipartite_family,
    make_joined_split_family,
)
from .family import INFINITY, GraphFamily, SigmaWitness, color_set, degree, is_strong_edge, sigma
from .oracle import NotFound, find_rainbow_cycle, pancyclicity_report
from .rotation import (
    ChordIndexSets,
    NotApplicable,
    chord_pair_reroute,
    constructive_vertex_pancyclic,
    find_c4_through,
    find_c5_through,
    reduce_by_one,
    reduce_by_two,
    strong_edge_relabel,
    triangle_via_common_neighborhood,
)

__version__ = "0.1.0"
