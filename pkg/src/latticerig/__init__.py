"""Bar-joint frameworks on integer lattices and exact infinitesimal rigidity."""

from .core import (
    Framework,
    FrameworkError,
    MotionField,
    bipartition,
    girth,
    is_unit_bar,
    neighborhood,
    prune_min_degree,
    squared_bar_lengths,
)
from .generators import (
    contract_slice,
    knight_2d,
    knight_lattice,
    leaper_experiment,
    leaper_rigidity_criterion,
    project_motion,
    slice_framework,
    slice_joint_indices,
)
from .girth_builder import (
    BuildConfig,
    BuildResult,
    DirectionSet,
    SearchResult,
    build_one,
    derive_trial_seed,
    direction_set,
    search,
)
from .io_formats import (
    FormatError,
    adjacency_image,
    draw_svg,
    read_canonical,
    read_framefile,
    write_canonical,
    write_framefile,
    write_sparsematrix,
)
from .rigidity import (
    AnalysisReport,
    BudgetExceededError,
    RigidityMatrix,
    analyze,
    exact_rank,
    motion_nullspace_basis,
    motion_space_dim,
    numeric_rank,
    rigidity_matrix,
    trivial_motion_basis,
    verify_motion,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BudgetExceededError",
    "BuildConfig",
    "BuildResult",
    "DirectionSet",
    "FormatError",
    "Framework",
    "FrameworkError",
    "MotionField",
    "RigidityMatrix",
    "SearchResult",
    "adjacency_image",
    "analyze",
    "bipartition",
    "build_one",
    "contract_slice",
    "derive_trial_seed",
    "direction_set",
    "draw_svg",
    "exact_rank",
    "girth",
    "is_unit_bar",
    "knight_2d",
    "knight_lattice",
    "leaper_experiment",
    "leaper_rigidity_criterion",
    "motion_nullspace_basis",
    "motion_space_dim",
    "neighborhood",
    "numeric_rank",
    "project_motion",
    "prune_min_degree",
    "read_canonical",
    "read_framefile",
    "rigidity_matrix",
    "search",
    "slice_framework",
    "slice_joint_indices",
    "squared_bar_lengths",
    "trivial_motion_basis",
    "verify_motion",
    "write_canonical",
    "write_framefile",
    "write_sparsematrix",
]
