"""Rational recognition of high-precision numbers via continued fractions."""
from fractions import Fraction

from mpmath import fabs, mpc

from .precision import as_mpc, default_tol, mpf_to_fraction, precise

DEFAULT_MAX_DEN = 10**6


@precise
def recognize_power_rational(c, k=1, max_den=DEFAULT_MAX_DEN, tol=None):
    """Return p/q with |c^k - p/q| < tol and q <= max_den, or None.

    The real part of c^k is expanded as a continued fraction (via
    ``Fraction.limit_denominator``); the imaginary part must vanish within tol.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if tol is None:
        tol = default_tol()
    if isinstance(c, (int, Fraction)):
        v = Fraction(c) ** k
        if v.denominator <= max_den:
            return v
        cand = v.limit_denominator(max_den)
        return cand if abs(v - cand) < mpf_to_fraction(tol) else None
    v = as_mpc(c) ** k
    if fabs(v.imag) >= tol:
        return None
    cand = mpf_to_fraction(v.real).limit_denominator(max_den)
    if fabs(v.real - mpc(cand.numerator) / cand.denominator) < tol:
        return cand
    return None


def rationalize(x, max_den=DEFAULT_MAX_DEN, tol=None):
    """Degree-one recognition; None when x is not close to a small rational."""
    return recognize_power_rational(x, 1, max_den, tol)
