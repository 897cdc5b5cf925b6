from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf, pi, sqrt

from pviforge.errors import AmbiguousError, NoSolutionError, PoleError, SeriesInversionError
from pviforge.numerics import (
    Poly,
    PuiseuxSeries,
    RationalFunction,
    fit_rational,
    gamma_fn,
    gamma_hat,
    laurent_expand,
    laurent_to_rational,
    mpf_to_fraction,
    poly_gcd,
    rationalize,
    recognize_power_rational,
    t_series,
)
from pviforge.numerics.linalg import det, inverse, mat_mul, nullspace, rank


def _gamma_half_oracle():
    # Gamma(1/2)^2 = pi, via Wallis-free route: Gamma(3/2) = sqrt(pi)/2
    return sqrt(pi) / 2


def test_gamma_small_values():
    assert gamma_fn(1) == 1
    assert gamma_fn(5) == 24
    assert abs(gamma_fn(Fraction(3, 2)) - _gamma_half_oracle()) < mpf(2) ** -250


def test_gamma_hat_values():
    assert abs(gamma_hat(0) - 1) < mpf(2) ** -250
    assert abs(gamma_hat(2) - 1) < mpf(2) ** -250
    assert abs(gamma_hat(1) - _gamma_half_oracle()) < mpf(2) ** -250


def test_gamma_pole_raises():
    with pytest.raises(PoleError):
        gamma_fn(-3)
    with pytest.raises(PoleError):
        gamma_hat(-2)


def test_recognize_power_rational():
    c = mpc(1, 1) * mpf(7) ** 0.25 / (3 * sqrt(2))
    assert recognize_power_rational(c, 4) == Fraction(-7, 81)
    c6 = -5 / mpf(14) ** (mpf(1) / 3)
    assert recognize_power_rational(c6, 3) == Fraction(-125, 14)
    assert recognize_power_rational(mpc(1, 0.3), 2) is None


def test_rationalize_rejects_irrational():
    assert rationalize(pi) is None
    assert rationalize(mpf(3) / 7) == Fraction(3, 7)


def test_mpf_to_fraction_is_exact():
    x = mpf(1) / 3
    f = mpf_to_fraction(x)
    assert mpf(f.numerator) / f.denominator == x


def test_pade_geometric():
    s = PuiseuxSeries([1] * 12)
    rf = laurent_to_rational(s, 0, 1)
    assert rf == RationalFunction(Poly([1]), Poly([1, -1]))


def test_pade_finite_laurent():
    s = PuiseuxSeries([1, 2, 1] + [0] * 6, val=-1)
    rf = laurent_to_rational(s, 2, 1)
    assert rf == RationalFunction(Poly([1, 2, 1]), Poly([0, 1]))


def test_pade_positive_valuation():
    # t^2 / (1 - t): the zeros below the valuation count as equations
    s = PuiseuxSeries([1] * 5, val=2)
    rf = laurent_to_rational(s, 2, 1)
    assert rf == RationalFunction(Poly([0, 0, 1]), Poly([1, -1]))


def test_pade_klein_top_ratio(printed_curve):
    num = Poly([0, 567, -2268, 567])
    den = Poly([162, -243, -243, 162])
    target = RationalFunction(num, den)
    coeffs = laurent_expand(target, 0, 16)
    rf = laurent_to_rational(PuiseuxSeries(coeffs), 3, 3)
    assert rf == target


def test_pade_not_enough_terms():
    with pytest.raises(ValueError):
        laurent_to_rational(PuiseuxSeries([1, 1]), 2, 2)


def test_pade_ambiguous_and_missing():
    with pytest.raises((AmbiguousError, NoSolutionError)):
        laurent_to_rational(PuiseuxSeries([1] * 12), 3, 3)
    with pytest.raises(NoSolutionError):
        laurent_to_rational(PuiseuxSeries([mp.e ** k / mp.factorial(k) for k in range(12)]), 1, 1)


def test_fit_rational_searches_degrees():
    target = RationalFunction(Poly([2, -1]), Poly([1, 3, 1]))
    rf = fit_rational(PuiseuxSeries(laurent_expand(target, 0, 14)))
    assert rf == target


def test_poly_arithmetic_and_gcd():
    p = Poly([1, 0, -1])  # 1 - x^2
    q = Poly([1, 1])
    assert p // q == Poly([1, -1])
    assert p % q == Poly([])
    assert poly_gcd(p, Poly([-1, 1])).degree == 1
    assert p(3) == -8
    assert p.derivative() == Poly([0, -2])


def test_rational_function_normalizes():
    rf = RationalFunction(Poly([2, 2]), Poly([4, 4]))
    assert rf == RationalFunction(Poly([Fraction(1, 2)]))
    assert rf.derivative().is_zero()


def test_series_arithmetic():
    t = t_series(10)
    s = 1 / (1 - t)
    assert all(abs(c - 1) < mpf(2) ** -250 for c in s.coeffs[:10])
    half = PuiseuxSeries([1, 0, 0, 0], val=1, N=2)
    sq = half * half
    assert sq.val == 2 and sq.N == 2
    with pytest.raises(SeriesInversionError):
        PuiseuxSeries([], 5).inverse()


def test_exact_linear_algebra():
    A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert det(A) == 1
    assert mat_mul(A, inverse(A)) == [[1, 0], [0, 1]]
    assert rank([[1, 2], [2, 4]]) == 1
    assert nullspace([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == [[-2, 1]]
