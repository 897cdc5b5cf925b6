"""Working-precision control and conversions into mpmath numbers."""
import functools
from fractions import Fraction

from mpmath import mp, mpc, mpf

DEFAULT_PREC = 256


def current_prec():
    return max(mp.prec, DEFAULT_PREC)


def default_tol(prec=None):
    """Half-precision tolerance 2^(-prec/2) at the working precision."""
    bits = prec if prec is not None else mp.prec
    return mpf(2) ** (-(bits // 2))


def precise(fn):
    """Run ``fn`` at ``prec`` bits (keyword), or at least the default precision."""

    @functools.wraps(fn)
    def wrapper(*args, prec=None, **kwargs):
        bits = prec if prec is not None else current_prec()
        with mp.workprec(bits):
            return fn(*args, **kwargs)

    return wrapper


def as_mpc(x):
    if isinstance(x, Fraction):
        return mpc(mpf(x.numerator) / x.denominator)
    if hasattr(x, "to_mpc"):
        return x.to_mpc()
    return mpc(x)


def as_mpf(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def mpf_to_fraction(x):
    """Exact Fraction equal to the binary value of an mpf."""
    sign, man, exp, _ = mpf(x)._mpf_
    if not man:
        return Fraction(0)
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(int(man) << int(exp))
    return Fraction(int(man), 1 << int(-exp))
