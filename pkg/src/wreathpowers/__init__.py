"""Exact span dimensions of symmetric and exterior power characters of the
generalised symmetric groups C_k wr S_n, ordinary and Brauer."""

from .algebra import (
    CycloNumber,
    NonUnitDenominatorError,
    NotDivisibleError,
    Poly,
    TruncatedSeries,
    cyclo_inverse,
    cyclotomic_polynomial,
    exact_rank,
    poly_div_exact,
    series_expand,
)
from .combinatorics import (
    A_set,
    ClassLabel,
    PartitionFamily,
    W_set,
    class_label_of,
    class_representative,
    classes,
    is_p_regular,
    partitions,
    r_p,
)
from .gf import (
    ExtPolynomial,
    RationalFunction,
    brute_force_ext_trace,
    brute_force_sym_trace,
    char_values,
    ext_gf_paper,
    ext_gf_true,
    sym_gf,
)
from .spans import (
    BoundViolation,
    CommonDenominator,
    DimensionReport,
    SpanQuery,
    bound_formulas,
    common_denominator_D,
    compute,
    compute_B,
    compute_B_wreath,
    compute_D,
    compute_E,
    delta_p,
    g_p_cyclotomic,
    g_p_product,
    verify_family_independent,
)

__version__ = "0.1.0"
