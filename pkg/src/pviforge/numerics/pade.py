"""Rational reconstruction of truncated Laurent series."""
from fractions import Fraction

from mpmath import fabs, matrix, mp, mpc, svd_c

from ..errors import AmbiguousError, NoSolutionError
from .poly import Poly, RationalFunction
from .precision import as_mpc, default_tol, precise
from .recognize import DEFAULT_MAX_DEN, rationalize


def _as_laurent(series):
    """Accept a PuiseuxSeries with N=1, or a (val, coeffs) pair."""
    if hasattr(series, "coeffs"):
        if series.N != 1:
            raise ValueError("expected an integral Laurent series")
        return series.val, [as_mpc(c) for c in series.coeffs]
    val, coeffs = series
    return int(val), [as_mpc(c) for c in coeffs]


def _kernel(rows, ncols, tol):
    """Right kernel of a complex matrix via the SVD; returns list of vectors."""
    A = matrix(len(rows), ncols)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            A[i, j] = v
    U, S, V = svd_c(A, full_matrices=True)
    smax = max((fabs(S[i]) for i in range(len(S))), default=mp.mpf(0))
    rank = sum(1 for i in range(len(S)) if fabs(S[i]) > tol * max(smax, 1))
    Vh = V  # rows of V are right singular vectors (conjugated)
    out = []
    for i in range(rank, ncols):
        out.append([Vh[i, j].conjugate() for j in range(ncols)])
    return out


@precise
def laurent_to_rational(series, deg_num, deg_den, max_den=DEFAULT_MAX_DEN, tol=None):
    """Rational function P/Q, deg P <= deg_num, deg Q <= deg_den, matching the series.

    Solves the homogeneous system Q*S - P = 0 on every supplied order, then
    normalizes Q to be monic and rationalizes every coefficient.
    """
    if tol is None:
        tol = default_tol()
    val, coeffs = _as_laurent(series)
    prec = val + len(coeffs)
    m, n = deg_num, deg_den
    lo = min(val, 0)
    # orders below a positive valuation are known zeros and count as equations
    if prec - lo < m + n + 2:
        raise ValueError("not enough coefficients for the requested degrees")

    def s(j):
        return coeffs[j - val] if val <= j < prec else mpc(0)

    ncols = (n + 1) + (m + 1)
    rows = []
    for j in range(lo, prec):
        row = [s(j - i) for i in range(n + 1)] + [mpc(-1) if j == k else mpc(0) for k in range(m + 1)]
        scale = max((fabs(v) for v in row), default=0)
        if scale:
            rows.append([v / scale for v in row])
    ker = _kernel(rows, ncols, tol)
    if not ker:
        raise NoSolutionError(f"no rational function of degrees ({m},{n}) matches the series")
    if len(ker) > 1:
        raise AmbiguousError(f"kernel of dimension {len(ker)} at degrees ({m},{n})")
    vec = ker[0]
    q, p = vec[: n + 1], vec[n + 1 :]
    top = max(i for i in range(n + 1) if fabs(q[i]) > tol) if any(fabs(v) > tol for v in q) else None
    if top is None:
        raise NoSolutionError("denominator vanishes")
    lead = q[top]
    exact_q, exact_p = [], []
    for v in q[: top + 1]:
        r = rationalize(v / lead, max_den, tol)
        if r is None:
            raise NoSolutionError("denominator coefficient is not a recognizable rational")
        exact_q.append(r)
    for v in p:
        r = rationalize(v / lead, max_den, tol)
        if r is None:
            raise NoSolutionError("numerator coefficient is not a recognizable rational")
        exact_p.append(r)
    rf = RationalFunction(Poly(exact_p), Poly(exact_q))
    expansion = laurent_expand(rf, val, prec)
    for j in range(val, prec):
        ref = s(j)
        if fabs(as_mpc(expansion[j - val]) - ref) > tol * max(1, fabs(ref)):
            raise NoSolutionError(f"re-expansion disagrees at order {j}")
    return rf


def laurent_expand(rf, start, stop):
    """Exact Laurent coefficients of rf at t=0 for orders start..stop-1."""
    num, den = list(rf.num.c), list(rf.den.c)
    shift = 0
    while den and den[0] == 0:
        den.pop(0)
        shift += 1
    # rf = t^(-shift) * num / den with den(0) != 0
    length = stop + shift
    inv0 = 1 / den[0]
    series = []
    for k in range(max(length, 0)):
        acc = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * series[k - i]
        series.append(acc * inv0)
    return [series[j + shift] if 0 <= j + shift < len(series) else Fraction(0) for j in range(start, stop)]


@precise
def fit_rational(series, max_num=None, max_den=None, rational_bound=DEFAULT_MAX_DEN, tol=None):
    """Search degrees in order of increasing total and return the first fit."""
    val, coeffs = _as_laurent(series)
    budget = len(coeffs) - 2
    max_num = budget if max_num is None else max_num
    max_den = budget if max_den is None else max_den
    for total in range(0, budget + 1):
        for n in range(0, min(total, max_den) + 1):
            m = total - n
            if m > max_num:
                continue
            try:
                return laurent_to_rational((val, coeffs), m, n, rational_bound, tol)
            except (NoSolutionError, AmbiguousError):
                continue
    raise NoSolutionError("no rational function fits within the available coefficients")
