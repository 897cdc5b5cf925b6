"""Arbitrary-precision and exact arithmetic shared by the other modules."""
from .pade import fit_rational, laurent_expand, laurent_to_rational
from .poly import Poly, RationalFunction, poly_gcd
from .precision import DEFAULT_PREC, as_mpc, as_mpf, default_tol, mpf_to_fraction, precise
from .recognize import DEFAULT_MAX_DEN, rationalize, recognize_power_rational
from .series import PuiseuxSeries, t_series
from .special import gamma_fn, gamma_hat

__all__ = [
    "DEFAULT_MAX_DEN",
    "DEFAULT_PREC",
    "Poly",
    "PuiseuxSeries",
    "RationalFunction",
    "as_mpc",
    "as_mpf",
    "default_tol",
    "fit_rational",
    "gamma_fn",
    "gamma_hat",
    "laurent_expand",
    "laurent_to_rational",
    "mpf_to_fraction",
    "poly_gcd",
    "precise",
    "rationalize",
    "recognize_power_rational",
    "t_series",
]
