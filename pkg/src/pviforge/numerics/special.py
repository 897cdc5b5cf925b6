"""Gamma function wrappers with explicit pole detection."""
from mpmath import gamma, mpf, nint

from ..errors import PoleError
from .precision import as_mpc, precise


def _is_nonpositive_integer(z):
    if z.imag != 0:
        return False
    r = z.real
    return r <= 0 and r == nint(r)


@precise
def gamma_fn(z):
    z = as_mpc(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z.real}")
    if z.imag == 0:
        return as_mpc(gamma(z.real))
    return gamma(z)


@precise
def gamma_hat(x):
    """Gamma(x/2 + 1)."""
    return gamma_fn(as_mpc(x) / 2 + 1)


__all__ = ["gamma_fn", "gamma_hat", "mpf"]
