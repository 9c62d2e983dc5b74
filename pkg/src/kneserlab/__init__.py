"""Exhaustive verification of colorful bipartite subgraphs in Kneser-type graphs."""

from .budget import Budget
from .defect import (
    DefectCertificate,
    cd3_certificate,
    colorability_defect,
    is_m_colorable_hypergraph,
    pairwise_condition,
)
from .errors import BudgetExhausted, KneserLabError
from .families import (
    build_borsuk_sample,
    build_complete,
    build_cycle,
    build_empty,
    build_general_kneser,
    build_kneser,
    build_mycielski,
    build_rational_complete,
    build_schrijver,
    build_u,
    build_w,
    rational_canonical_coloring,
)
from .solve import (
    chromatic_number,
    circular_chromatic,
    enumerate_colorings,
    find_homomorphism,
    is_proper,
    is_wide,
    max_closed_neighborhood_colors,
    min_colors_local,
)
from .types import Coloring, Graph, SetSystem, SpherePointSet
from .witness import (
    BipartiteWitness,
    GroundPartition,
    Report,
    ZigzagWitness,
    find_colorful_bipartite,
    find_zigzag,
    spencer_su_partition,
    sweep_verify,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteWitness",
    "Budget",
    "BudgetExhausted",
    "build_borsuk_sample",
    "build_complete",
    "build_cycle",
    "build_empty",
    "build_general_kneser",
    "build_kneser",
    "build_mycielski",
    "build_rational_complete",
    "build_schrijver",
    "build_u",
    "build_w",
    "cd3_certificate",
    "chromatic_number",
    "circular_chromatic",
    "colorability_defect",
    "Coloring",
    "DefectCertificate",
    "enumerate_colorings",
    "find_colorful_bipartite",
    "find_homomorphism",
    "find_zigzag",
    "Graph",
    "GroundPartition",
    "is_m_colorable_hypergraph",
    "is_proper",
    "is_wide",
    "KneserLabError",
    "max_closed_neighborhood_colors",
    "min_colors_local",
    "pairwise_condition",
    "rational_canonical_coloring",
    "Report",
    "SetSystem",
    "spencer_su_partition",
    "SpherePointSet",
    "sweep_verify",
    "ZigzagWitness",
]
