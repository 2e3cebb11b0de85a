"""Fault-tolerant virtual backbones: minimum-weight (k, m)-connected dominating sets in unit disk graphs."""
from .connectivity import (
    BlockTree,
    MarkedComponent,
    Separator,
    find_separator,
    is_k_connected,
    is_subset_k_connected,
    k_block_tree,
    marked_components,
    max_disjoint_paths,
    vertex_connectivity,
)
from .domset import exact_mfold_ds, greedy_mfold_ds, is_mfold_ds
from .errors import CapExceededError, InfeasibleError, ValidationError
from .kernels import BACKEND
from .pipeline import ProblemSpec, SolveReport, Verdict, exact_kmcds, solve_kmcds, verify_kmcds
from .spanning import (
    DegreeSixError,
    MssReport,
    check_mss_properties,
    degree_six_reduction,
    exact_k_mss,
    local_improve,
    reduce_to_minimal,
)
from .steiner import (
    SkcsInstance,
    SteinerSolution,
    derive_edge_weights,
    exact_mnwkcsn,
    extract_k_block,
    skcs_augment,
    skcs_exact,
    solve_mnwkcsn,
)
from .udg import (
    EdgeSubgraph,
    PointNode,
    UnitDiskGraph,
    build_udg,
    induced_udg,
    load_instance,
    parse_instance,
    random_instance,
    save_instance,
    write_instance,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
