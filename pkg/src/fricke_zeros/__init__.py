"""Zeros of the Eisenstein series for the Fricke groups of level 2 and 3:
arc-zero location, certified inequality suite, exact valence audits, and
modular-form space construction.
"""

from .errors import (
    CountMismatchError,
    EchelonError,
    FrickeError,
    IndeterminateSignError,
    LevelMismatchError,
    ReductionError,
    TailBoundError,
    UnstableWindingError,
)
from .qseries import (
    QSeries,
    bernoulli,
    divisor_sum,
    eisenstein_qseries,
    evaluate_qseries,
)
from .eisenstein import (
    LatticeSumConfig,
    eisenstein_lattice_sum,
    eisenstein_series_value,
)
from .fricke import (
    ArcSpec,
    GroupWord,
    arc_spec,
    f_restricted,
    fricke_eisenstein,
    fricke_qseries,
    in_fundamental_domain,
    m_count,
    reduce_to_fundamental_domain,
)
from .bounds import (
    BoundCertificate,
    SignWitness,
    aux_positivity,
    endpoint_sign,
    r1_bound,
    r1_lt_2_for_k_ge_8,
    r2_star_bound_raw,
    r2_star_bound_restricted,
    r3_star_bound_restricted,
    verify_term_bounds,
)
from .zeros import (
    ValenceReport,
    ZeroRecord,
    expected_elliptic_orders,
    locate_zeros,
    order_at_point,
    sample_points,
    valence_audit,
)
from .spaces import (
    SpaceDescriptor,
    build_basis,
    build_delta,
    dim_space,
    min_order_bound_check,
    verify_appendix_table,
)

__version__ = "0.1.0"
