# Core module initialization
__version__ = "1.0.0"

# Import utilities first (no dependencies)
from .utils import (
    configure_logging,
    create_error_response,
    create_success_response,
    log_performance,
    matrix_to_pairs,
    pairs_to_matrix
)

from .errors import (
    GeophaseError,
    NotHermitian,
    ConvergenceFailure,
    DomainError,
    ZeroArgument,
    ChartOverflow,
    ChartEscape,
    PairInvalid,
    ShapeMismatch,
    SingularQ,
    SingularBlock,
    ValidationError,
    ParseError
)

from .config import Tolerances, ManifoldConfig

from .matfun import MatrixFunction, herm_eig, herm_fn, det_c, principal_arg, wrap_phase

from .grassmann import (
    ManifoldSpec,
    GrassmannPoint,
    TangentParam,
    GroupElement,
    b_to_z,
    z_to_b,
    section,
    act,
    compose_points,
    pair_valid,
    kernel_defined,
    geodesic_from_origin,
    geodesic,
    random_group_element,
    random_point
)

from .phases import (
    TriangleArea,
    Overlap,
    kernel,
    normalized_overlap_phase,
    triangle_area_closed,
    omega_at,
    triangle_area_quadrature,
    chordal_distance
)

from .cocycles import (
    BlockProduct,
    CocycleTriple,
    block_product,
    gauss_alpha,
    gauss_u,
    multiplicative_phase,
    gw_cocycle,
    dupont_cocycle,
    automorphy_J,
    cocycle_triple_report
)

from .rankone import RankOnePoint, RankOneSpace, rank1_phase, rank1_area

__all__ = [
    '__version__',
    'configure_logging',
    'create_error_response',
    'create_success_response',
    'log_performance',
    'matrix_to_pairs',
    'pairs_to_matrix',
    'GeophaseError',
    'NotHermitian',
    'ConvergenceFailure',
    'DomainError',
    'ZeroArgument',
    'ChartOverflow',
    'ChartEscape',
    'PairInvalid',
    'ShapeMismatch',
    'SingularQ',
    'SingularBlock',
    'ValidationError',
    'ParseError',
    'Tolerances',
    'ManifoldConfig',
    'MatrixFunction',
    'herm_eig',
    'herm_fn',
    'det_c',
    'principal_arg',
    'wrap_phase',
    'ManifoldSpec',
    'GrassmannPoint',
    'TangentParam',
    'GroupElement',
    'b_to_z',
    'z_to_b',
    'section',
    'act',
    'compose_points',
    'pair_valid',
    'kernel_defined',
    'geodesic_from_origin',
    'geodesic',
    'random_group_element',
    'random_point',
    'TriangleArea',
    'Overlap',
    'kernel',
    'normalized_overlap_phase',
    'triangle_area_closed',
    'omega_at',
    'triangle_area_quadrature',
    'chordal_distance',
    'BlockProduct',
    'CocycleTriple',
    'block_product',
    'gauss_alpha',
    'gauss_u',
    'multiplicative_phase',
    'gw_cocycle',
    'dupont_cocycle',
    'automorphy_J',
    'cocycle_triple_report',
    'RankOnePoint',
    'RankOneSpace',
    'rank1_phase',
    'rank1_area'
]
