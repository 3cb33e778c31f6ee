"""Tree embeddings: expected distortion, the exact Steiner-free oracle, the
cycle stretch witness, truncated-stretch lower bounds, and randomized
dominating trees."""

from .distortion import (
    DistortionReport,
    LowerBoundReport,
    TruncatedBoundResult,
    check_expansive,
    cycle_embedding_witness,
    distortion_report,
    expected_distortion,
    lower_bound_c_nu,
    stochastic_distortion_of,
    truncated_distortion_bound,
    truncated_expected_stretch,
)
from .frt import frt_embed, frt_tree
from .lp import LPResult, solve_min
from .oracle import (
    ORACLE_VERTEX_CAP,
    OracleResult,
    iter_labeled_trees,
    optimal_tree_weights,
    oracle_min_expected_distortion,
    prufer_to_edges,
    tree_pair_paths,
)
from .trees import (
    GeodesicTree,
    StochasticTreeEmbedding,
    TreeMap,
    identity_tree_map,
    path_tree,
)

__all__ = [
    "DistortionReport",
    "GeodesicTree",
    "LPResult",
    "LowerBoundReport",
    "ORACLE_VERTEX_CAP",
    "OracleResult",
    "StochasticTreeEmbedding",
    "TreeMap",
    "TruncatedBoundResult",
    "check_expansive",
    "cycle_embedding_witness",
    "distortion_report",
    "expected_distortion",
    "frt_embed",
    "frt_tree",
    "identity_tree_map",
    "iter_labeled_trees",
    "lower_bound_c_nu",
    "optimal_tree_weights",
    "oracle_min_expected_distortion",
    "path_tree",
    "prufer_to_edges",
    "solve_min",
    "stochastic_distortion_of",
    "tree_pair_paths",
    "truncated_distortion_bound",
    "truncated_expected_stretch",
]
