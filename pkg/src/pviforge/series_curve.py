"""From branch leading terms to the integer solution curve F(t, y) = 0.

Each branch C t^e is lifted to a Puiseux series by solving PVI order by
order, the branches are combined into elementary symmetric functions (whose
fractional exponents must cancel), those are turned into rational functions
of t, and the denominators are cleared.  Parameterized solutions are checked
in exact rational-function arithmetic.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np
from mpmath import fabs, mp, mpc, mpf, polyroots

from .errors import (
    FractionalResidueError,
    NoSolutionError,
    AmbiguousError,
    NonRationalCoefficient,
    PathTooClose,
    ResonanceError,
    SeriesInversionError,
)
from .numerics import Poly, PuiseuxSeries, RationalFunction, as_mpc, default_tol, laurent_to_rational, poly_gcd
from .numerics.poly import poly_str


# ---------------------------------------------------------------- residuals


def _t_like(prec, N):
    """t as a series long enough to multiply anything known below prec."""
    return PuiseuxSeries.monomial(1, N, max(prec, N + 1) + 4 * N, N)


def _pvi_terms(y, yp, ypp, t, params):
    """Cleared PVI: 2 t^2 (t-1)^2 y(y-1)(y-t) times (LHS - RHS).

    Works for any ring elements supporting +, -, * with integers, so the
    same code serves series and exact rational functions.
    """
    a, b, c, d = params
    y1 = y - 1
    yt = y - t
    t1 = t - 1
    D = y * y1 * yt
    tt = t * t * t1 * t1
    S2 = y1 * yt + y * yt + y * y1
    lhs = 2 * tt * D * ypp - tt * S2 * yp * yp + 2 * t * t1 * (2 * t - 1) * D * yp + 2 * tt * y * y1 * yp
    y2, y12, yt2 = y * y, y1 * y1, yt * yt
    pot = a * D * D + b * t * y12 * yt2 + c * t1 * y2 * yt2 + d * t * t1 * y2 * y12
    return lhs - 2 * pot, 2 * tt * D


def _params_mp(params):
    return tuple(as_mpc(p) for p in params)


def pvi_residual_series(y, params):
    """LHS - RHS of PVI for a truncated Puiseux series y."""
    N = y.N
    t = _t_like(y.prec, N)
    yp = y.derivative()
    ypp = yp.derivative()
    a, b, c, d = _params_mp(params)
    try:
        iy = y.inverse()
        iy1 = (y - 1).inverse()
        iyt = (y - t).inverse()
        it = t.inverse()
        it1 = (t - 1).inverse()
    except SeriesInversionError:
        raise
    rhs = (iy + iy1 + iyt) * yp * yp * mpf(0.5) - (it + it1 + iyt) * yp
    rhs = rhs + y * (y - 1) * (y - t) * it * it * it1 * it1 * (
        PuiseuxSeries.constant(a, len(y.coeffs) + 4 * N, N) + b * t * iy * iy + c * (t - 1) * iy1 * iy1 + d * t * (t - 1) * iyt * iyt
    )
    return ypp - rhs


def cleared_residual_series(y, params):
    """The polynomial (inversion-free) form of the PVI residual."""
    t = _t_like(y.prec, y.N)
    yp = y.derivative()
    return _pvi_terms(y, yp, yp.derivative(), t, _params_mp(params))[0]


# ---------------------------------------------------------------- branch extension


@dataclass
class BranchSeries:
    series: PuiseuxSeries
    free_orders: list = field(default_factory=list)


def _series_from(coeffs, val, N):
    return PuiseuxSeries(list(coeffs), val, N)


def _scale(R):
    return max((fabs(c) for c in R.coeffs), default=mpf(0))


def _solve_orders(residual, a0, val0, N, terms, tol, on_free="zero"):
    """Find a_1.. a_{terms-1} so that residual(y) vanishes order by order.

    Each new coefficient enters the residual linearly at its first order of
    appearance; two probes (a_k = 0 and a_k = 1) give that linear equation.
    """
    coeffs = [as_mpc(a0)]
    free = []
    offset = None
    for k in range(1, terms):
        R0 = residual(_series_from(coeffs + [mpc(0)], val0, N))
        R1 = residual(_series_from(coeffs + [mpc(1)], val0, N))
        diff = R1 - R0
        scale = max(_scale(R0), _scale(R1), mpf(1))
        if offset is None:
            j = next((i for i, c in diff.items() if fabs(c) > tol * scale), None)
            if j is None:
                raise ResonanceError("new coefficient never enters the residual", order=k)
            offset = j - k
        j = offset + k
        if j >= diff.prec or j >= R0.prec:
            raise ResonanceError("residual truncated before the coefficient's order", order=k)
        lin = diff.coeff(j)
        rhs = R0.coeff(j)
        if fabs(lin) <= tol * scale:
            if fabs(rhs) > tol * scale:
                raise ResonanceError(f"singular and inconsistent equation at order {k}", order=k)
            if on_free == "error":
                raise ResonanceError(f"free coefficient at order {k}", order=k)
            free.append(k)
            coeffs.append(mpc(0))
            continue
        coeffs.append(-rhs / lin)
    return coeffs, free


def extend_branch(lead, params, order, N=None, tol=None):
    """Puiseux series of the branch with leading term lead.coefficient t^lead.exponent.

    order is the number of coefficients, i.e. the series is known through
    t^(e + (order-1)/N).  N defaults to the denominator of the exponent.
    """
    e = Fraction(lead.exponent)
    if not (0 < e < 1):
        raise ValueError("leading exponent must lie strictly between 0 and 1")
    if N is None:
        N = e.denominator
    if (e * N).denominator != 1:
        raise ValueError("ramification incompatible with the exponent")
    tol = default_tol() if tol is None else tol
    val0 = int(e * N)
    while True:
        try:
            coeffs, free = _solve_orders(
                lambda y: cleared_residual_series(y, params), lead.coefficient, val0, N, order, tol
            )
            return BranchSeries(PuiseuxSeries(coeffs, val0, N), free)
        except SeriesInversionError:
            if N > 64:
                raise
            N, val0, order = 2 * N, 2 * val0, 2 * order


# ---------------------------------------------------------------- symmetric functions


def _common(branches):
    N = 1
    for b in branches:
        N = lcm(N, b.N)
    return [b.with_ramification(N) for b in branches], N


def symmetric_laurent(branches, tol=None):
    """Elementary symmetric functions e_1..e_n of the branch series as Laurent series.

    The product of (Y - y_i) is expanded; coefficients at fractional
    exponents must cancel and are then dropped.
    """
    tol = default_tol() if tol is None else tol
    ys, N = _common(branches)
    P = max(y.prec for y in ys) + N
    one = PuiseuxSeries.constant(1, P, N)
    # c[k] = coefficient of Y^k
    c = [one]
    for y in ys:
        new = [None] * (len(c) + 1)
        for k in range(len(c) + 1):
            terms = []
            if k >= 1:
                terms.append(c[k - 1])
            if k < len(c):
                terms.append(-(y * c[k]))
            s = terms[0]
            for extra in terms[1:]:
                s = s + extra
            new[k] = s
        c = new
    n = len(ys)
    out = []
    for k in range(1, n + 1):
        s = c[n - k] * (-1 if k % 2 else 1)
        out.append(_integral_part(s, N, tol, k))
    return out


def _integral_part(s, N, tol, label):
    scale = max(_scale(s), mpf(1))
    lo = -((-s.val) // N)
    hi = s.prec // N  # exponents j with j*N < prec are known
    for i, c in s.items():
        if i % N and fabs(c) > tol * scale:
            raise FractionalResidueError(
                f"e_{label}: coefficient of t^({i}/{N}) = {mp.nstr(c, 8)} does not cancel"
            )
    coeffs = [s.coeff(j * N) if j * N >= s.val else mpc(0) for j in range(lo, hi)]
    return PuiseuxSeries(coeffs, lo, 1)


def monic_coefficients(esym):
    """r_0..r_{n-1} with y^n + r_{n-1} y^{n-1} + ... + r_0 = prod (y - y_i)."""
    n = len(esym)
    return [esym[n - i - 1] * (-1 if (n - i) % 2 else 1) for i in range(n)]


def laurent_to_rational_auto(series, max_total=None, margin=3, max_den=10**12, tol=None):
    """Smallest-degree rational fit leaving at least margin check equations."""
    count = series.prec - min(series.val, 0)
    budget = count - 1 - margin
    if max_total is not None:
        budget = min(budget, max_total)
    for total in range(0, budget + 1):
        for n in range(0, total + 1):
            try:
                return laurent_to_rational(series, total - n, n, max_den, tol)
            except (NoSolutionError, AmbiguousError, ValueError):
                continue
    raise NonRationalCoefficient("no rational function fits the series with the required margin")


# ---------------------------------------------------------------- curves


@dataclass(frozen=True)
class IntegerCurve:
    """F(t, y) = sum coeffs[i][j] y^i t^j with coprime integer coefficients."""

    coeffs: tuple
    normalization: dict = field(default_factory=dict, compare=False)

    @property
    def branch_count(self):
        return len(self.coeffs) - 1

    @property
    def deg_t(self):
        return max((len(r) - 1 for r in self.coeffs), default=0)

    def y_coefficient(self, i):
        return Poly(self.coeffs[i])

    def matrix(self):
        w = self.deg_t + 1
        return [list(r) + [0] * (w - len(r)) for r in self.coeffs]

    def __str__(self):
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            p = self.coeffs[i]
            if not any(p):
                continue
            mono = "" if i == 0 else "*y" if i == 1 else f"*y^{i}"
            parts.append(f"({poly_str(p, 't')}){mono}")
        return " + ".join(parts) if parts else "0"

    def evaluate(self, t, y):
        acc = 0
        for i in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * y + Poly(self.coeffs[i])(t)
        return acc

    def y_poly_at(self, t):
        """Numeric coefficients in y (lowest first) at a given t."""
        return [Poly(r)(t) for r in self.coeffs]

    def derivative_y(self):
        return [[i * c for c in self.coeffs[i]] for i in range(1, len(self.coeffs))]

    def derivative_t(self):
        return [[j * c for j, c in enumerate(r)][1:] for r in self.coeffs]

    def as_dict(self):
        return {"coefficients": self.matrix(), "branch_count": self.branch_count, "polynomial": str(self)}


def _bivariate_eval(rows, t, y):
    acc = 0
    for i in range(len(rows) - 1, -1, -1):
        acc = acc * y + Poly(rows[i])(t)
    return acc


def _normalize(rows):
    """Remove integer content; make the lowest t-term of the top y-coefficient positive."""
    flat = [v for r in rows for v in r]
    den = lcm(*(Fraction(v).denominator for v in flat))
    ints = [[int(Fraction(v) * den) for v in r] for r in rows]
    g = 0
    for r in ints:
        for v in r:
            g = gcd(g, v)
    if g == 0:
        raise NonRationalCoefficient("zero curve")
    top = next(v for v in ints[-1] if v)
    sign = 1 if top > 0 else -1
    ints = [[sign * v // g for v in r] for r in ints]
    return ints, Fraction(sign * den, g)


def curve_from_rows(rows):
    """IntegerCurve from rational bivariate coefficients rows[i][j] (y^i t^j)."""
    ints, scale = _normalize(rows)
    out = []
    for r in ints:
        r = list(r)
        while r and r[-1] == 0:
            r.pop()
        out.append(tuple(r))
    return IntegerCurve(tuple(out), {"scale": str(scale), "convention": "top y-coefficient has positive lowest t-term"})


def assemble_curve(symfns):
    """Clear denominators of y^n + r_{n-1} y^{n-1} + ... + r_0.

    symfns are the rational functions r_0..r_{n-1}.
    """
    for r in symfns:
        for c in r.num.c + r.den.c:
            if not isinstance(c, Fraction):
                raise NonRationalCoefficient("coefficient is not rational")
    q = Poly((1,))
    for r in symfns:
        q = q * r.den // poly_gcd(q, r.den)
    rows = []
    for r in symfns:
        rows.append((r.num * (q // r.den)).c)
    rows.append(q.c)
    return curve_from_rows([list(r) for r in rows])


def curve_from_branches(branches, tol=None, max_total=None):
    """Full pipeline from branch series to the integer curve."""
    esym = symmetric_laurent(branches, tol)
    rs = [laurent_to_rational_auto(s, max_total=max_total) for s in monic_coefficients(esym)]
    return assemble_curve(rs)


# ---------------------------------------------------------------- parameterizations


@dataclass(frozen=True)
class RationalParameterization:
    y: RationalFunction
    t: RationalFunction

    def __post_init__(self):
        if self.y.num.degree <= 0 and self.y.den.degree <= 0:
            raise ValueError("y(s) is constant")
        if self.t.num.degree <= 0 and self.t.den.degree <= 0:
            raise ValueError("t(s) is constant")

    def at(self, s):
        return self.t(s), self.y(s)

    def derivatives(self):
        """(y', y'') as rational functions of s, derivatives taken in t."""
        dt = self.t.derivative()
        if dt.is_zero():
            raise ZeroDivisionError("dt/ds vanishes identically")
        yp = self.y.derivative() / dt
        ypp = yp.derivative() / dt
        return yp, ypp

    def as_dict(self):
        def enc(rf):
            ni, nd = rf.num.integer_primitive(), rf.den.integer_primitive()
            return {"num": [str(c * ni[0]) for c in ni[1]], "den": [str(c * nd[0]) for c in nd[1]]}

        return {"y": enc(self.y), "t": enc(self.t)}


def _p(*c):
    return Poly(c)


def klein_parameterization():
    s = Poly.x()
    num_y = -(_p(5, -8, 5) * _p(4, -7, 7))
    den_y = s * (s - 2) * (s + 1) * (2 * s - 1) * _p(7, -7, 4)
    num_t = _p(4, -7, 7) ** 2
    den_t = s**3 * _p(7, -7, 4) ** 2
    return RationalParameterization(RationalFunction(num_y, den_y), RationalFunction(num_t, den_t))


KLEIN_PARAMS = (Fraction(9, 98), Fraction(-4, 98), Fraction(4, 98), Fraction(45, 98))


def verify_parameterization(p, params):
    """Exact PVI residual LHS - RHS of the parameterized solution, as a function of s."""
    yp, ypp = p.derivatives()
    params = tuple(Fraction(x) for x in params)
    num, den = _pvi_terms(p.y, yp, ypp, p.t, params)
    if den.is_zero():
        raise ZeroDivisionError("parameterization lies on a singular locus of PVI")
    return num / den


def curve_on_curve_check(c, p):
    """True when F(t(s), y(s)) vanishes identically."""
    a, b = p.t.num, p.t.den
    u, v = p.y.num, p.y.den
    dt, dy = c.deg_t, c.branch_count
    total = Poly()
    for i, row in enumerate(c.coeffs):
        for j, cf in enumerate(row):
            if cf:
                total = total + (a**j) * (b ** (dt - j)) * (u**i) * (v ** (dy - i)) * cf
    return total.is_zero()


# ---------------------------------------------------------------- cover monodromy


def _np_roots(curve, t):
    C = _float_rows(curve)
    coeffs = [np.polyval(r[::-1], t) if len(r) else 0j for r in C]
    return np.roots(coeffs[::-1])


def _float_rows(curve):
    return [np.array(r, dtype=float) for r in curve.coeffs]


def _match(prev, new):
    """Assignment of new roots to previous ones; None when ambiguous."""
    n = len(prev)
    d = np.abs(prev[:, None] - new[None, :])
    perm = np.argmin(d, axis=1)
    if len(set(perm.tolist())) != n:
        return None, None
    moved = d[np.arange(n), perm].max()
    sep = min((abs(prev[i] - prev[j]) for i in range(n) for j in range(i + 1, n)), default=np.inf)
    return perm, moved / sep if sep else np.inf


def _track(curve, path, steps=400, max_ratio=0.2, min_dt=1e-9):
    """Follow the roots of F(z(s), y) for s in [0,1]; returns the final permutation."""
    roots0 = _np_roots(curve, path(0.0))
    if len(roots0) != curve.branch_count:
        raise PathTooClose("leading coefficient vanishes at the base point")
    cur = roots0
    s, h = 0.0, 1.0 / steps
    while s < 1.0:
        h = min(h, 1.0 - s)
        new = _np_roots(curve, path(s + h))
        perm, ratio = _match(cur, new)
        if perm is None or ratio > max_ratio:
            h /= 2
            if h < min_dt:
                raise PathTooClose(f"roots collide near parameter {s:.6f}")
            continue
        cur = new[perm]
        s += h
        if ratio < max_ratio / 4:
            h *= 1.5
    d = np.abs(roots0[:, None] - cur[None, :])
    final = np.argmin(d, axis=0)
    # root i ended where root final[i] started
    out = [0] * len(final)
    for i, f in enumerate(final):
        out[i] = int(f)
    if sorted(out) != list(range(len(out))):
        raise PathTooClose("loop did not close up")
    return tuple(out)


def curve_cover_monodromy(curve, base=Fraction(2, 5), min_gap=1e-6):
    """Permutations of the roots of F(base, y) along loops around t = 0 and t = 1.

    Loops are the circles centred at 0 and 1 through the base point,
    traversed counterclockwise.  Returned permutations p send a root's
    starting index to the index of the root where it ends.
    """
    b = float(base)
    if not 0 < b < 1:
        raise ValueError("base point must lie in (0, 1)")
    crit = critical_t_values(curve)
    for z0, r in ((0.0, b), (1.0, 1.0 - b)):
        for c in crit:
            if abs(abs(c - z0) - r) < min_gap:
                raise PathTooClose(f"loop passes within {min_gap} of a discriminant point {c}")

    def around(z0, r, phase0):
        return lambda s: z0 + r * np.exp(1j * (phase0 + 2 * np.pi * s))

    p0 = _track(curve, around(0.0, b, 0.0))
    p1 = _track(curve, around(1.0, 1 - b, np.pi))
    return _as_image_perm(p0), _as_image_perm(p1)


def _as_image_perm(p):
    """Convert 'root i ended at start index p[i]' into a permutation i -> p[i]."""
    return tuple(p)


# ---------------------------------------------------------------- discriminant data


def _resultant_at(rows_f, rows_g, t):
    """Sylvester resultant in y of two polynomials (coefficients in t) at a rational t."""
    # formal degrees are kept even if the top coefficient vanishes at t
    f = [Poly(r)(t) if r else Fraction(0) for r in rows_f]
    g = [Poly(r)(t) if r else Fraction(0) for r in rows_g]
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    S = []
    for i in range(n):
        S.append([0] * i + f[::-1] + [0] * (size - m - 1 - i))
    for i in range(m):
        S.append([0] * i + g[::-1] + [0] * (size - n - 1 - i))
    return _int_det(S)


def _int_det(M):
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    M = [[int(x) for x in row] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k]), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _interpolate(xs, ys):
    """Exact Newton interpolation."""
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(v) for v in ys]
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Poly((coef[-1],))
    for i in range(n - 2, -1, -1):
        p = p * Poly((-xs[i], 1)) + coef[i]
    return p


def discriminant_t(curve):
    """Res_y(F, F_y) as an exact polynomial in t (up to a constant factor)."""
    rows = [list(r) for r in curve.coeffs]
    dy = curve.derivative_y()
    bound = (2 * curve.branch_count - 1) * curve.deg_t + 1
    xs = list(range(2, bound + 3))
    ys = [_resultant_at(rows, dy, x) for x in xs]
    return _interpolate(xs, ys)


def _squarefree_disc(curve):
    disc = discriminant_t(curve)
    if disc.is_zero():
        return disc
    return disc // poly_gcd(disc, disc.derivative())


def _poly_roots_mp(p):
    ints = p.integer_primitive()[1]
    if len(ints) <= 1:
        return []
    return polyroots([mpf(c) for c in ints[::-1]], maxsteps=400, extraprec=4 * mp.prec)


def critical_t_values(curve):
    """Roots of the squarefree discriminant, numerically (complex floats)."""
    with mp.workprec(max(mp.prec, 256)):
        return [complex(r) for r in _poly_roots_mp(_squarefree_disc(curve))]


def _squarefree_degree(p):
    if p.degree <= 0:
        return 0
    return (p // poly_gcd(p, p.derivative())).degree


def _rows_at(rows, t0):
    return Poly([Poly(r)(t0) if r else Fraction(0) for r in rows])


def _rel(rows, t, y):
    """|sum| / sum |terms| of a bivariate polynomial at (t, y)."""
    val = _bivariate_eval(rows, t, y)
    size = sum(abs(c) * abs(t) ** j * abs(y) ** i for i, r in enumerate(rows) for j, c in enumerate(r))
    return fabs(val) / size if size else mpf(0)


def singularity_census(curve, tol=None):
    """Singular points of the projective closure of F = 0 in the (t, y) plane.

    Returns a dict with the affine singular points over t not in {0, 1}
    (numeric), the number over t = 0 and t = 1 (exact), and the number on
    the line at infinity (exact).
    """
    rows = [list(r) for r in curve.coeffs]
    dy = curve.derivative_y()
    dt = curve.derivative_t()
    with mp.workprec(max(mp.prec, 256)):
        tol = mpf(2) ** (-mp.prec // 3) if tol is None else tol
        sqf = _squarefree_disc(curve)
        special = {}
        generic = []
        for t0 in (Fraction(0), Fraction(1)):
            if sqf(t0) == 0:
                h = poly_gcd(poly_gcd(_rows_at(rows, t0), _rows_at(dy, t0)), _rows_at(dt, t0))
                special[str(t0)] = _squarefree_degree(h)
            else:
                special[str(t0)] = 0
        rest = sqf
        for t0 in (0, 1):
            if rest(t0) == 0:
                rest = rest // Poly((-t0, 1))
        for tc in _poly_roots_mp(rest):
            coeffs = [Poly(r)(tc) if r else mpc(0) for r in rows]
            top = max(fabs(c) for c in coeffs)
            while coeffs and fabs(coeffs[-1]) <= tol * top:
                coeffs.pop()
            for y in polyroots(coeffs[::-1], maxsteps=800, extraprec=4 * mp.prec):
                if _rel(dy, tc, y) < tol and _rel(dt, tc, y) < tol:
                    if not any(fabs(tc - a) < tol and fabs(y - b) < mpf(2) ** (-40) for a, b in generic):
                        generic.append((tc, y))
        infinity = _singular_at_infinity(rows)
    total = len(generic) + sum(special.values()) + infinity
    return {
        "over_generic": [(complex(a), complex(b)) for a, b in generic],
        "over_0_1": special,
        "at_infinity": infinity,
        "total": total,
    }


def _singular_at_infinity(rows):
    """Exact count of singular points of the closure on the line at infinity."""
    d = max(i + len(r) - 1 for i, r in enumerate(rows) if any(r))

    def form(k):
        # sum of c_ij z^i over i + j = k, in z = Y/T
        out = []
        for i in range(len(rows)):
            j = k - i
            out.append(Fraction(rows[i][j]) if 0 <= j < len(rows[i]) else Fraction(0))
        return Poly(out)

    f, g = form(d), form(d - 1)
    count = _squarefree_degree(poly_gcd(poly_gcd(f, f.derivative()), g))
    # the point T = 0, i.e. [0:1:0], has multiplicity d - deg f
    mult = d - f.degree
    g_at = g.c[d - 1] if len(g.c) > d - 1 else 0
    if mult >= 2 and g_at == 0:
        count += 1
    return count


# ---------------------------------------------------------------- Newton-Puiseux


def newton_polygon_leads(curve):
    """Leading terms (a, e) of the Puiseux roots of F at t = 0 from the Newton polygon."""
    pts = []
    for i, row in enumerate(curve.coeffs):
        js = [j for j, c in enumerate(row) if c]
        if js:
            pts.append((i, js[0]))
    # lower convex hull, left to right in i
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    leads = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        e = Fraction(v1 - v2, i2 - i1)
        # edge polynomial in a: terms with v_i + i e minimal
        edge = [0] * (i2 - i1 + 1)
        for i, row in enumerate(curve.coeffs):
            if i1 <= i <= i2:
                j = v1 + (e * (i1 - i))
                if j.denominator == 1 and 0 <= j < len(row):
                    edge[i - i1] = row[int(j)]
        roots = polyroots([mpf(c) for c in edge[::-1]], maxsteps=400, extraprec=500)
        for a in roots:
            leads.append((mpc(a), e))
    return leads


def puiseux_roots(curve, terms, tol=None):
    """Newton-Puiseux expansions of all roots of F(t, y) = 0 at t = 0."""
    tol = default_tol() if tol is None else tol
    out = []
    for a, e in newton_polygon_leads(curve):
        if e <= 0:
            continue
        N = e.denominator
        val0 = int(e * N)

        def residual(y, N=N):
            acc = None
            for i in range(len(curve.coeffs) - 1, -1, -1):
                row = curve.coeffs[i]
                term = None
                for j, c in enumerate(row):
                    if c:
                        m = PuiseuxSeries.monomial(mpc(c), j * N, y.prec + 8 * N + 8 * len(curve.coeffs) * N, N)
                        term = m if term is None else term + m
                acc = (term if term is not None else PuiseuxSeries.zero(y.prec * 8, N)) if acc is None else (
                    acc * y + term if term is not None else acc * y
                )
            return acc

        coeffs, _ = _solve_orders(residual, a, val0, N, terms, tol, on_free="zero")
        out.append(PuiseuxSeries(coeffs, val0, N))
    return out
