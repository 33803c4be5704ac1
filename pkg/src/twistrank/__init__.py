"""Quadratic twists, Kummer x-lines and rank certificates for elliptic curves over Q."""

from .arith import (
    LocalSquareClass,
    Place,
    is_prime,
    legendre_symbol,
    local_square_class,
    next_prime,
    squarefree_part,
)
from .elliptic import (
    CurveFq,
    CurveQ,
    GroupStructure,
    TwistPoint,
    group_order,
    group_structure,
    reduce_curve,
    reduce_point,
    torsion_p_trivial,
    twist_curve,
    twist_transport,
)
from .errors import (
    BadReductionError,
    CertificateError,
    ScanExhaustedError,
    TwistRankError,
    TwoTorsionError,
)
from .kummer import CommonLift, common_lift, is_two_torsion_x, lift_x, local_twist_class, x_of
from .rankcert import (
    INCONCLUSIVE,
    VALID,
    ProjectionMap,
    RankCertificate,
    build_matrix,
    certify_rank,
    dependence_search,
    find_certifying_places,
    projection_map,
)
from .search import (
    DensityReport,
    SearchConfig,
    density_probe,
    enumerate_x,
    rank_r_twist_search,
    twist_buckets,
)

__version__ = "0.1.0"
