"""
Deterministic projection engine for simplicial cones.

Public surface consumed by /probabilistic and /cli. Nothing in /engine reads
files, prints, or holds global state.
"""

from .cone import (
    Membership,
    MixedCoefficients,
    SimplicialCone,
    build_cone,
    check_vector,
    decompose,
    face_projection,
    membership,
    polar_cone,
    reconstruct,
    solve_alpha,
    solve_beta,
)
from .errors import (
    ConeError,
    DimensionGuard,
    DimensionMismatch,
    GenerationFailure,
    NonFinite,
    NoSectorFound,
    NotSubdual,
    SingularGenerators,
    SolveFailure,
)
from .exact import (
    ExactResult,
    candidate_pool,
    exact_project,
    exact_project_subdual,
    passing_sectors,
    project,
)
from .heuristic import (
    HeuristicConfig,
    HeuristicResult,
    RunStats,
    StartPolicy,
    Status,
    certify,
    heuristic_iterate,
    heuristic_project,
)
from .index_set import IndexSet, all_subsets, subsets_of
from .tolerances import DEFAULT_TOLERANCES, get_tolerances, profile_names, scaled_tol
from .verification import (
    Certificate,
    classify_sector,
    compare_projections,
    face_check,
    moreau_check,
)

__version__ = "1.0.0"
