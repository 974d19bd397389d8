from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathpowers.algebra import (
    ConductorMismatchError,
    CycloNumber,
    NonUnitDenominatorError,
    NotDivisibleError,
    Poly,
    cyclo_inverse,
    cyclotomic_polynomial,
    divisors,
    exact_rank,
    format_poly,
    poly_div_exact,
    series_expand,
)

X = sympy.Symbol("x")


def P(*coeffs, k=1):
    return Poly(k, list(coeffs))


def z(k, a=1):
    return CycloNumber.zeta(k, a)


# ---------------------------------------------------------------- cyclotomic


@pytest.mark.parametrize(
    "d, coeffs",
    [(1, [-1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1])],
)
def test_cyclotomic_examples(d, coeffs):
    assert cyclotomic_polynomial(d).int_coeffs() == coeffs


def test_cyclotomic_matches_sympy():
    for d in range(1, 61):
        ref = sympy.Poly(sympy.cyclotomic_poly(d, X), X).all_coeffs()[::-1]
        assert cyclotomic_polynomial(d).int_coeffs() == [int(c) for c in ref]


def test_cyclotomic_product_is_x_to_the_n_minus_one():
    for n in range(1, 201):
        prod = Poly.one(1)
        for d in divisors(n):
            prod = prod * cyclotomic_polynomial(d)
        assert prod.int_coeffs() == [-1] + [0] * (n - 1) + [1]


def test_cyclotomic_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


# ---------------------------------------------------------------- field arithmetic


def test_inverse_examples():
    assert cyclo_inverse(CycloNumber.from_rational(1, Fraction(3, 2))) == Fraction(2, 3)
    assert cyclo_inverse(z(4)) == -z(4)
    assert cyclo_inverse(1 + z(3)) == -z(3)


def test_zeta_relations():
    for k in range(1, 13):
        assert z(k) ** k == 1
        assert sum((z(k, a) for a in range(k)), CycloNumber.zero(k)) == (1 if k == 1 else 0)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        cyclo_inverse(CycloNumber.zero(5))


def test_mixed_conductors_rejected():
    with pytest.raises(ConductorMismatchError):
        z(3) + z(4)
    with pytest.raises(ConductorMismatchError):
        exact_rank([[z(3)], [z(4)]])


def cyclo(k):
    return st.lists(
        st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20)),
        min_size=k, max_size=k,
    ).map(lambda cs: sum((c * z(k, i) for i, c in enumerate(cs)), CycloNumber.zero(k)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 9, 12]).flatmap(lambda k: st.tuples(cyclo(k), cyclo(k), cyclo(k))))
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if not a.is_zero():
        assert a * cyclo_inverse(a) == 1
        assert (b / a) * a == b


def test_rational_values_hash_like_fractions():
    assert hash(CycloNumber.from_rational(6, Fraction(1, 3))) == hash(Fraction(1, 3))
    assert {CycloNumber.from_rational(4, 2), 2} == {2}


# ---------------------------------------------------------------- polynomials


def test_poly_div_examples():
    assert poly_div_exact(P(-1, 0, 1), P(-1, 1)) == P(1, 1)
    assert poly_div_exact(P(1, 0, 0, -1), P(1, -1)) == P(1, 1, 1)
    num = P(1, -1) * P(1, -1) * P(1, 0, 0, -1)
    with pytest.raises(NotDivisibleError):
        poly_div_exact(num, P(1, 0, -1))


def test_poly_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_div_exact(P(1, 1), Poly(1, []))


def poly_over(k, max_deg=5):
    return st.lists(cyclo(k), min_size=1, max_size=max_deg + 1).map(lambda cs: Poly(k, cs))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 3, 4]).flatmap(lambda k: st.tuples(poly_over(k), poly_over(k))))
def test_division_round_trip(pair):
    a, b = pair
    if b.is_zero():
        return
    assert poly_div_exact(a * b, b) == a
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_format_poly():
    assert format_poly(P(1, -2, 1)) == "1 - 2*x + x^2"
    assert format_poly(Poly.one_minus(3, z(3), 3)) == "1 - z*x^3"


# ---------------------------------------------------------------- series


def test_series_examples():
    assert series_expand(P(1), P(1, -1), 4).coeffs == tuple([1] * 5)
    den = P(1, -1) * P(1, 0, -1)
    assert list(series_expand(P(1), den, 5).coeffs) == [1, 1, 2, 2, 3, 3]
    s = series_expand(Poly.one(3), Poly.one_minus(3, z(3), 3), 6)
    assert list(s.coeffs) == [1, 0, 0, z(3), 0, 0, z(3, 2)]


def test_series_needs_unit_constant_term():
    with pytest.raises(NonUnitDenominatorError):
        series_expand(P(1), P(0, 1), 3)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=1, max_size=5),
    st.lists(st.integers(-5, 5), min_size=0, max_size=4),
    st.integers(0, 12),
)
def test_series_times_denominator_is_numerator(num, den_tail, order):
    num_p, den_p = P(*num), P(1, *den_tail)
    s = series_expand(num_p, den_p, order)
    conv = [sum(s.coeffs[i] * den_p[j - i] for i in range(j + 1)) for j in range(order + 1)]
    assert conv == [num_p[j] for j in range(order + 1)]


def test_series_matches_sympy():
    den = P(1, -1) ** 2 * P(1, 0, 1) * P(1, 0, 0, -1)
    ref = sympy.series(1 / sympy.Poly(list(reversed(den.int_coeffs())), X).as_expr(), X, 0, 15).removeO()
    ours = series_expand(P(1), den, 14).coeffs
    assert [int(ref.coeff(X, i)) for i in range(15)] == [c.to_fraction() for c in ours]


# ---------------------------------------------------------------- rank


def test_rank_examples():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exact_rank([[1, 1], [1, 1]]) == 1
    assert exact_rank([[1, z(4)], [z(4), -1]]) == 1
    assert exact_rank([]) == 0
    assert exact_rank([[0, 0]]) == 0


small_int_matrix = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    )
)


@settings(max_examples=80, deadline=None)
@given(small_int_matrix)
def test_rank_matches_sympy(m):
    assert exact_rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=40, deadline=None)
@given(small_int_matrix, st.randoms(use_true_random=False))
def test_rank_invariant_under_row_permutation_and_scaling(m, rnd):
    k = 5
    base = exact_rank([[CycloNumber.from_rational(k, v) for v in row] for row in m])
    rows = [list(r) for r in m]
    rnd.shuffle(rows)
    scaled = [[z(k, i + 1) * (i + 2) * v for v in row] for i, row in enumerate(rows)]
    assert exact_rank(scaled) == base


def test_rank_over_cyclotomic_field_matches_sympy():
    k = 3
    w = sympy.Rational(-1, 2) + sympy.sqrt(3) * sympy.I / 2
    rows = [[1, z(k), z(k, 2)], [1, z(k, 2), z(k)], [2, z(k) + z(k, 2), z(k) + z(k, 2)]]
    ref = [[1, w, w**2], [1, w**2, w], [2, w + w**2, w + w**2]]
    assert exact_rank(rows) == sympy.Matrix(ref).applyfunc(sympy.nsimplify).rank(simplify=True) == 2
    assert all(exact_rank([list(r) for r in perm]) == 2 for perm in permutations(rows))
