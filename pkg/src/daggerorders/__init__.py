"""Quaternion algebras over Q with orthogonal involutions.

Constructs orders, intersects them with their involution images, certifies
maximality of involution-stable orders through the discriminant criterion,
and classifies the local (rank-2 quadratic lattice) side prime by prime.
"""

from ._kernel import BACKEND as KERNEL_BACKEND
from .exactnum import (
    INF,
    OO,
    FactorizationError,
    IdealZ,
    LocalIdeal,
    SquareClass,
    hilbert_symbol,
    iota,
    quadratic_defect,
    square_class,
    valuation,
)
from .quatalg import (
    AlgebraMismatchError,
    OrthogonalInvolution,
    Quat,
    QuaternionAlgebra,
    algebra_discriminant,
    is_similitude,
)
from .lattices import (
    IntegralLattice4,
    NotAnOrderError,
    Order4,
    RankError,
    canonicalize,
    intersect,
    involution_image,
    is_dagger_stable,
    is_order,
    lattice_sum,
    reduced_discriminant,
    standard_order,
    trace_dual,
)
from .maximality import (
    InternalInconsistencyError,
    MaximalityCertificate,
    enlarge_to_maximal_dagger,
    is_maximal_dagger_order,
    maximal_order_containing,
    target_discriminant,
)
from .localquad import (
    LocalOrder2x2,
    LocalQuadLattice2,
    count_classes,
    dual,
    isomorphism_class_count,
    is_maximal,
    is_modular,
    is_similitude_matrix,
    lattice_equivalent,
    norm_weight_orders,
    order_of_lattice,
    orthogonalize,
    same_local_lattice,
    scale_norm_volume,
    stabilizes_standard_order,
    standard_lattice,
)

__version__ = "0.1.0"
