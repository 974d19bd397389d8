from fractions import Fraction

import pytest
import sympy

from wreathpowers import bounds as bd
from wreathpowers.algebra import Poly, poly_div_exact
from wreathpowers.combinatorics import A_count, W_count, classes, is_p_regular, partitions, r_p
from wreathpowers.gf import sym_gf
from wreathpowers.spans import (
    Bound,
    BoundViolation,
    DimensionReport,
    SpanQuery,
    a_family,
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
    sym_truncation,
    verify_family_independent,
    y_family,
)

X = sympy.Symbol("x")


def sympy_sym_rank(n, k, p=None, extra=10):
    """Rank of the symmetric class functions for k in {1, 2}, computed by sympy
    series expansion and sympy rank, independent of the package's kernels."""
    assert k in (1, 2)
    funcs = set()
    for c in classes(n, k):
        if p is not None and not is_p_regular(c, p):
            continue
        den = sympy.Integer(1)
        for part, a in c.pairs:
            den *= 1 - (-1) ** a * X**part
        funcs.add(sympy.expand(den))
    order = k * n * (n + 1) // 2 + extra
    rows = []
    for den in funcs:
        s = sympy.series(1 / den, X, 0, order).removeO()
        rows.append([s.coeff(X, i) for i in range(order)])
    return sympy.Matrix(rows).rank()


# ---------------------------------------------------------------- dimensions


def test_dimension_examples():
    assert compute_D(1, 3).dimension == 3
    assert compute_D(2, 1).dimension == 2
    assert compute_D(2, 2).dimension == 4
    assert compute_E(5, 2).dimension == 6
    assert compute_E(3, 1).dimension == 3
    assert compute_E(2, 2).dimension == 3
    assert compute_B(2, 2).dimension == 1
    assert compute_B(3, 3).dimension == 2
    assert compute_B(2, 4).dimension == 2
    assert compute_B_wreath(2, 2, 2).dimension == 1
    assert compute_B_wreath(3, 2, 3).dimension == 2


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 1), (5, 1), (2, 2), (3, 2), (4, 2)])
def test_D_matches_sympy(n, k):
    assert compute_D(n, k).dimension == sympy_sym_rank(n, k)


@pytest.mark.parametrize("p,n,k", [(2, 4, 1), (3, 5, 1), (5, 6, 1), (3, 3, 2), (3, 4, 2)])
def test_brauer_matches_sympy(p, n, k):
    assert compute_B_wreath(p, n, k).dimension == sympy_sym_rank(n, k, p)


def test_exterior_paper_convention_reported():
    r = compute_E(3, 1)
    assert (r.dimension, r.ext_paper_dimension) == (3, 2)
    for n in range(1, 6):
        for k in (2, 4):
            r = compute_E(n, k)
            assert r.ext_paper_dimension == r.dimension == n + 1


def test_ordering_invariants():
    for n in range(1, 6):
        for k in (1, 2, 3):
            d = compute_D(n, k).dimension
            for p in (2, 3):
                assert d >= compute_B_wreath(p, n, k).dimension >= 1
        for p in (2, 3, 5):
            assert compute_D(n, 1).dimension >= compute_B(p, n).dimension


def test_brauer_k1_agrees():
    for p in (2, 3):
        for n in range(1, 7):
            assert compute_B_wreath(p, n, 1).dimension == compute_B(p, n).dimension


def test_truncation_sufficiency_small():
    for n in range(1, 5):
        for k in (1, 2, 3):
            base = compute_D(n, k)
            assert base.truncation_order == sym_truncation(n, k)
            assert compute_D(n, k, base.truncation_order + n).dimension == base.dimension


def test_dispatch_and_query_validation():
    assert compute(SpanQuery("sym", 3, 1, 2)).dimension == compute_B(2, 3).dimension
    assert compute(SpanQuery("sym", 3, 2, 3)).dimension == compute_B_wreath(3, 3, 2).dimension
    with pytest.raises(ValueError):
        SpanQuery("ext", 3, 1, 2)
    with pytest.raises(ValueError):
        SpanQuery("sym", 3, 1, 4)
    with pytest.raises(ValueError):
        SpanQuery("sym", 0, 1)


# ---------------------------------------------------------------- reports


def test_report_round_trip():
    for r in (compute_D(3, 2), compute_E(4, 3), compute_B(3, 6), compute_B_wreath(2, 3, 2)):
        d = r.to_dict()
        assert DimensionReport.from_dict(d).to_dict() == d
        assert set(d) == {
            "kind", "n", "k", "p", "dimension", "ext_paper_dimension",
            "num_classes", "truncation", "bounds", "elapsed_ms",
        }


def test_bound_violation_is_raised():
    r = compute_D(2, 2)
    r.bounds.append(Bound.check("ub_fake", 1, r.dimension, upper=True))
    with pytest.raises(BoundViolation):
        r.check()


def test_informational_bound_not_enforced():
    r = compute_D(2, 2)
    r.bounds.append(Bound.check("info_lb_fake", 100, r.dimension, upper=False))
    assert r.check() is r


# ---------------------------------------------------------------- denominators


def P(*coeffs):
    return Poly(1, list(coeffs))


def test_common_denominator_examples():
    assert common_denominator_D(2, 1).poly.int_coeffs() == (P(1, -1) * P(1, 0, -1)).int_coeffs()
    assert common_denominator_D(2, 1).degree == 3
    assert common_denominator_D(1, 2).poly.int_coeffs() == [1, 0, -1]
    d22 = P(1, -1) * P(1, 0, -1) * P(1, 1) * P(1, 0, 1)
    assert common_denominator_D(2, 2).poly.int_coeffs() == d22.int_coeffs()
    assert common_denominator_D(2, 2).degree == 6


def test_common_denominator_is_divisible_by_class_denominators():
    for n in range(1, 5):
        for k in (1, 2, 3, 4):
            D = common_denominator_D(n, k)
            assert D.degree == k * n * (n + 1) // 2
            for c in classes(n, k):
                poly_div_exact(D.poly, sym_gf(c).denominator)


def test_g_p_examples():
    assert g_p_product(2, 1).poly.int_coeffs() == [1, -1]
    assert g_p_product(2, 3).poly.int_coeffs() == (P(1, -1) ** 2 * P(1, 0, 0, -1)).int_coeffs()
    assert g_p_product(3, 3).poly.int_coeffs() == (P(1, -1) ** 2 * P(1, 0, -1)).int_coeffs()
    assert g_p_cyclotomic(2, 3).poly.int_coeffs() == (P(-1, 1) ** 3 * P(1, 1, 1)).int_coeffs()
    assert g_p_cyclotomic(3, 2).poly.int_coeffs() == (P(-1, 1) ** 2 * P(1, 1)).int_coeffs()
    assert g_p_cyclotomic(2, 1).poly.int_coeffs() == [-1, 1]


def test_g_p_identity_against_sympy():
    for p in (2, 3, 5):
        for n in range(1, 16):
            prod = sympy.Integer(1)
            for j in range(1, n + 1):
                prod *= 1 - X ** r_p(j, p)
            ref = sympy.Poly(prod, X).all_coeffs()[::-1]
            ours = g_p_product(p, n).poly.int_coeffs()
            assert ours == [int(c) for c in ref]
            cyc = g_p_cyclotomic(p, n).poly.int_coeffs()
            assert cyc == ours or cyc == [-c for c in ours]


def test_delta_examples():
    assert delta_p(2, 3) == 5
    assert delta_p(3, 3) == 4
    assert delta_p(2, 1) == 1
    assert bd.ub_delta_p(2, 1) == Fraction(4, 3)
    for p in (2, 3, 5, 7):
        for n in range(1, 25):
            assert delta_p(p, n) == g_p_product(p, n).degree <= bd.ub_delta_p(p, n)


# ---------------------------------------------------------------- bounds


def test_bound_examples():
    for k in range(1, 8):
        assert bd.ub_D(1, k) == k
    assert bd.ub_D(2, 2) == 5
    assert bd.ub_B(2, 4) == Fraction(43, 3)
    ub = bd.ub_B(2, 5)
    assert ub > Fraction(50, 6) + 1
    assert float(ub) == pytest.approx(50 / 6 + 5 * 2.321928094887362 + 1, rel=1e-15)


def test_directed_rounding_brackets_true_value():
    import mpmath

    with mpmath.workdps(80):
        for p in (2, 3, 5):
            for n in (3, 7, 12):
                exact = mpmath.mpf(p) / (2 * p + 2) * n * n + n * (mpmath.log(n) / mpmath.log(p) + 1)
                up = bd.ub_delta_p(p, n)
                assert mpmath.mpf(up.numerator) / up.denominator >= exact - mpmath.mpf(10) ** -70
        for n in (3, 5, 9):
            lo = bd.lb_D_log(n, 2)
            exact = 2 * ((n - 1) * mpmath.log(n - 1) - 2 * (n - 2))
            assert mpmath.mpf(lo.numerator) / lo.denominator <= exact + mpmath.mpf(10) ** -70


def test_bound_formulas_names():
    names = [name for name, _ in bound_formulas(SpanQuery("sym", 4, 2))]
    assert names[0] == "ub_D" and "lb_D_family" in names
    names = dict(bound_formulas(SpanQuery("sym", 4, 1, 2)))
    assert names["lb_B_family"] == A_count(2, 4)
    assert names["ub_B_delta"] == delta_p(2, 4) + 1 - 4
    assert [n for n, _ in bound_formulas(SpanQuery("ext", 3, 2))] == ["ub_E"]


def test_harmonic_display_is_not_a_lower_bound():
    # The harmonic-number display overestimates |A_{p,n}| (see decisions ledger).
    assert bd.A_harmonic_lower(2, 4) > A_count(2, 4)
    assert compute_B(2, 4).bound("info_lb_B_harmonic").satisfied is False


# ---------------------------------------------------------------- families


def test_family_examples():
    a = verify_family_independent(a_family(3, 4), sym_truncation(4, 1))
    assert (a.rank, a.expected, a.equal) == (4, 4, True)
    single = verify_family_independent([sym_gf(classes(2, 1)[0])], 3)
    assert (single.rank, single.equal) == (1, True)


def test_y_family_rank_small_n():
    for k in range(1, 5):
        assert verify_family_independent(y_family(1, k), sym_truncation(1, k)).rank == k
        fam = verify_family_independent(y_family(2, k), sym_truncation(2, k))
        assert fam.rank == fam.expected == k * W_count(1)


def test_y_family_rank_is_deficient_for_k_at_least_2():
    # The independence claim fails from n = 3 on; the ranks here are confirmed by sympy.
    fam = verify_family_independent(y_family(4, 2), sym_truncation(4, 2))
    assert (fam.rank, fam.expected) == (5, 6)

    funcs = []
    for r in range(2):
        for lam in [(3,), (2, 1), (1, 1, 1)]:
            den = 1 - (-1) ** r * X
            for part in lam:
                den *= 1 - X**part
            funcs.append(sympy.expand(den))
    rows = []
    for den in funcs:
        s = sympy.series(1 / den, X, 0, 30).removeO()
        rows.append([s.coeff(X, i) for i in range(30)])
    assert sympy.Matrix(rows).rank() == 5


def test_y_family_k1_is_independent():
    for n in range(2, 8):
        fam = verify_family_independent(y_family(n, 1), sym_truncation(n, 1))
        assert fam.equal and fam.rank == W_count(n - 1)


def test_a_family_independent():
    for p in (2, 3, 5):
        for n in range(1, 10):
            fam = verify_family_independent(a_family(p, n), sym_truncation(n, 1))
            assert fam.equal and fam.rank == A_count(p, n)


def test_partition_functions_distinct():
    for n in range(1, 9):
        dens = {sym_gf(c).denominator for c in classes(n, 1)}
        assert len(dens) == len(partitions(n))
