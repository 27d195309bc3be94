"""Exact relation-lattice toolkit for cycle-node incidence configurations."""

from .extension import (
    CorrectedClass,
    ExtensionLayer,
    RealizationMap,
    check_corrected_class,
    e_geom,
    gamma_map,
    is_incidence_compatible,
    is_rigid,
    propagation_closure,
    realize,
    vanishing_sector_span,
)
from .incidence import (
    AdmissibilityFlags,
    BlockPartition,
    IncidenceDatum,
    block_constant_space,
    block_quotient_matrix,
    block_relation_space,
    geometric_space,
    image_equals_block_constant_criterion,
    incidence_blocks,
    is_block_adapted,
    is_geometrically_admissible,
)
from .lattice import (
    ComparisonProblem,
    GroupAction,
    Side,
    SideAssignment,
    block_separated_equality,
    check_orbit_blocks,
    comparison_theorem,
    is_comparison_compatible,
    is_minimal,
    q_geom_kernel,
    side_lattice,
    verify_block_separated,
)
from .linalg import (
    DimensionMismatch,
    RationalMatrix,
    Subspace,
    image,
    intersect,
    kernel,
    membership,
    rank,
    rref,
    subspace_equal,
)
from .partitions import (
    BlockProfile,
    bell,
    coalesce,
    dimension_law,
    enumerate_partitions,
    profile_multiplicity,
    stirling2,
    thicken,
)
from .quiver import block_quiver, coupling_is_block_compatible, node_quiver, to_dot

__version__ = "0.1.0"
