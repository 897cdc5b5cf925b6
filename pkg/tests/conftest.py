import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

settings.register_profile(
    "seeded",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    print_blob=True,
)
settings.load_profile("seeded")


@pytest.fixture(autouse=True)
def precision():
    mp.prec = 256
    yield
    mp.prec = 256


class Timed:
    def __init__(self, value, seconds):
        self.value = value
        self.seconds = seconds


def _timed(fn):
    mp.prec = 256
    t0 = time.perf_counter()
    v = fn()
    return Timed(v, time.perf_counter() - t0)


@pytest.fixture(scope="session")
def klein_leads():
    from pviforge.cli import branch_leads

    return _timed(branch_leads)


@pytest.fixture(scope="session")
def klein_branches(klein_leads):
    """All seven branches extended to 30 coefficients."""
    from pviforge.series_curve import extend_branch

    params = (Fraction(9, 98), Fraction(-4, 98), Fraction(4, 98), Fraction(45, 98))
    return _timed(lambda: [extend_branch(L, params, 30) for _, _, L in klein_leads.value])


@pytest.fixture(scope="session")
def klein_curve(klein_branches):
    from pviforge.series_curve import curve_from_branches

    res = _timed(lambda: curve_from_branches([b.series for b in klein_branches.value]))
    # time of the whole pipeline from orbit to curve
    res.total = res.seconds + klein_branches.seconds
    return res


@pytest.fixture(scope="session")
def corollary_monodromy():
    from pviforge.fuchsian import klein_corollary_system, numeric_monodromy

    return _timed(lambda: numeric_monodromy(klein_corollary_system()))


PRINTED_CURVE = [
    (0, 0, 0, 0, 125, -88, 125),
    (0, 0, 0, 0, -567, -567),
    (0, 0, 0, -21, 3444, -21),
    (0, 0, 14, -2849, -2849, 14),
    (0, 0, 1407, 2856, 1407),
    (0, 0, -1701, -1701),
    (0, -567, 2268, -567),
    (162, -243, -243, 162),
]
"""Rows indexed by the power of y, entries by the power of t."""


@pytest.fixture(scope="session")
def printed_curve():
    from pviforge.series_curve import curve_from_rows

    return curve_from_rows([list(r) for r in PRINTED_CURVE])
