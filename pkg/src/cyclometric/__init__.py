"""Exact trace metric on prime cyclotomic fields."""

from .core import (
    CycloElement,
    add,
    element_from_json,
    element_to_json,
    from_rational,
    make_element,
    mul,
    mul_by_root_power,
    neg,
    root_power,
    scalar_mul,
    sub,
    zero,
)
from .empirical import (
    ConcentrationReport,
    box_size,
    brute_diameter_sq,
    brute_double_square_sum,
    brute_moment,
    brute_r_moment,
    concentration_experiment,
    sample_pair,
)
from .errors import (
    BadAutomorphismIndex,
    BudgetExceeded,
    CycloError,
    DimensionMismatch,
    ModulusMismatch,
    NonPositiveEpsilon,
    NonPrimeModulus,
    OddMomentUnsupported,
    OutOfBox,
    SearchExhausted,
    UnsupportedExponent,
)
from .galois import (
    Automorphism,
    SubfieldProfile,
    apply_automorphism,
    conjugates,
    krasner_check,
    primitive_element_search,
    subfield_contains,
    subfield_profile,
)
from .metric import (
    BoxSpec,
    TraceVector,
    diameter_sq,
    dist,
    dist_sq,
    euclidean_norm_sq,
    norm_sq,
    normalized_dist,
    trace,
    trace_vector,
)
from .moments import (
    MomentReport,
    concentration_bound,
    double_square_sum_normalized,
    m2_closed,
    m4_closed,
    mu,
    power_sum,
    r_moment_closed,
)

__version__ = "0.1.0"
