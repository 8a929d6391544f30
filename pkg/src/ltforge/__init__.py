"""Exact Lubin-Tate formal group computations over towers of Q_p."""

from .errors import (
    BadPrime,
    InternalCheckFailed,
    LTForgeError,
    NonIntegralCoefficient,
    NonzeroConstantTerm,
    NotEisenstein,
    NotInSpan,
    NotIntegral,
    NotIrreducible,
    NotLubinTate,
    NotRegular,
    OutsideConvergenceDisc,
    PrecisionExhausted,
    RankDeficient,
    RatioTooSmall,
    RegularFieldGiven,
    SeriesNotPolynomial,
    StuckLevel,
    WrongLevel,
)
from .padic import PadicScalar
from .tower import FieldElement, LocalField, make_tower
from .series import (
    TruncSeries1,
    TruncSeries2,
    compose1,
    solve_coefficientwise,
    substitute2,
    substitute2_xy,
)
from .lubintate import (
    LTContext,
    TorsionField,
    basic_context,
    build_lt_morphism,
    conjugated_torsion_point,
    custom_context,
    default_trunc_degree,
    endo,
    eval_endo,
    eval_exp,
    eval_fgl,
    eval_iterated_lt,
    eval_log,
    eval_lt,
    f_negate,
    f_sum,
    get_context,
    iterate_pi,
    multiplicative_context,
    torsion_field,
    validate_lt_series,
)
from .structure import (
    GeneratingSet,
    RegularityReport,
    ValuationCertificate,
    coordinate_matrix_rank,
    coords_in_span,
    expand_in_generators,
    induced_map_check,
    lattices_equal,
    log_image_basis,
    min_log_valuation,
    module_basis,
    regularity_check,
    spanning_set,
    torsion_generating_sets,
    valuation_certificate,
)
from .verify import SuiteConfig, THEOREM_IDS, run_all, run_theorem

__version__ = "0.1.0"
