"""Leading Puiseux term of a PVI branch at t = 0 from its monodromy data.

Labelling: the SL2 triple (M1, M2, M3) is read as (M0, Mt, M1) with
M_inf M1 Mt M0 = 1, so sigma (= sigma_0t) comes from m12, sigma_1t from
m23 and sigma_01 from m13.  The parameter s carries the corrected sign.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import acos, cos, exp, fabs, mpc, nint, pi, sin

from .errors import DegenerateDenominator, DomainError, ValidityError, ZeroSigmaError, ZeroShat
from .numerics import as_mpc, default_tol, gamma_fn, gamma_hat, recognize_power_rational
from .numerics.linalg import chain, inverse, mat_mul, mat_scale, trace

I = mpc(0, 1)


@dataclass(frozen=True)
class JimboInput:
    theta0: object
    thetat: object
    theta1: object
    thetainf: object
    sigma: object
    sigma01: object
    sigma1t: object

    @property
    def thetas(self):
        return (self.theta0, self.thetat, self.theta1, self.thetainf)


@dataclass(frozen=True)
class BranchLeadingTerm:
    coefficient: object
    exponent: object
    prefactor: object = None
    s: object = None
    s_hat: object = None
    sigma: object = None


@dataclass
class ValidityReport:
    theta_nonintegral: dict = field(default_factory=dict)
    sigma_ok: bool = True
    combos_not_even: dict = field(default_factory=dict)

    @property
    def failed(self):
        out = [f"b:{k}" for k, v in self.theta_nonintegral.items() if not v]
        if not self.sigma_ok:
            out.append("c:sigma")
        out += [f"d:{k}" for k, v in self.combos_not_even.items() if not v]
        return out

    @property
    def ok(self):
        return not self.failed


def _is_integer(x, tol):
    if isinstance(x, (int, Fraction)):
        return Fraction(x).denominator == 1
    x = as_mpc(x)
    return fabs(x - nint(x.real)) <= tol


def _is_even_integer(x, tol):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return x.denominator == 1 and x.numerator % 2 == 0
    x = as_mpc(x)
    r = nint(x.real)
    return fabs(x - r) <= tol and int(r) % 2 == 0


def sigma_from_trace(tr, tol=None):
    """sigma with 2 cos(pi sigma) = tr and 0 <= Re sigma < 1."""
    tol = default_tol() if tol is None else tol
    if isinstance(tr, (int, Fraction)):
        if tr == 2:
            raise ZeroSigmaError("Tr = 2 gives sigma = 0")
        if tr <= -2:
            raise DomainError("Tr lies on the real ray <= -2")
    z = as_mpc(tr)
    if fabs(z - 2) <= tol:
        raise ZeroSigmaError("Tr = 2 gives sigma = 0")
    if fabs(z.imag) <= tol and z.real <= -2 + tol:
        raise DomainError("Tr lies on the real ray <= -2")
    return _acos_sigma(z)


def _acos_sigma(z):
    s = acos(z / 2) / pi
    if s.real < 0:
        s = -s
    return mpc(s)


def sigma_jk(tr):
    """sigma_jk with 0 <= Re <= 1; no exclusions apply to these."""
    return _acos_sigma(as_mpc(tr))


def _exact_sigma(sigma, max_den=1000):
    if isinstance(sigma, (int, Fraction)):
        return Fraction(sigma)
    r = recognize_power_rational(sigma, 1, max_den)
    return r if r is not None else sigma


def jimbo_input_from_traces(d, theta, exact=True):
    """Build the input for a branch from SL2 trace data and (theta_1..theta_4)."""
    sigma = sigma_from_trace(d.m12)
    s01 = sigma_jk(d.m13)
    s1t = sigma_jk(d.m23)
    if exact:
        sigma, s01, s1t = _exact_sigma(sigma), _exact_sigma(s01), _exact_sigma(s1t)
    th = tuple(theta)
    return JimboInput(th[0], th[1], th[2], th[3], sigma, s01, s1t)


def check_conditions(inp, tol=None):
    tol = default_tol() if tol is None else tol
    rep = ValidityReport()
    names = ("theta0", "thetat", "theta1", "thetainf")
    for n, th in zip(names, inp.thetas):
        rep.theta_nonintegral[n] = not _is_integer(th, tol)
    sg = inp.sigma
    sgn = as_mpc(sg)
    rep.sigma_ok = fabs(sgn) > tol and -tol <= sgn.real < 1 - tol
    t0, tt, t1, ti = inp.thetas
    for a, b, la in ((t0, tt, "0t"), (ti, t1, "inf1")):
        for s1 in (1, -1):
            for s2 in (1, -1):
                key = f"{la}:{'+' if s1 > 0 else '-'}{'+' if s2 > 0 else '-'}"
                rep.combos_not_even[key] = not _is_even_integer(a + s1 * b + s2 * sg, tol)
    return rep


def _cs(x):
    x = as_mpc(x)
    return cos(pi * x), sin(pi * x)


def half_angle_sines(inp):
    """(alpha, beta, gamma, delta, alpha', beta', gamma', delta')."""
    t0, tt, t1, ti = (as_mpc(v) for v in inp.thetas)
    sg = as_mpc(inp.sigma)
    h = pi / 2
    return (
        sin(h * (ti - t1 + sg)),
        sin(h * (ti + t1 + sg)),
        sin(h * (ti + t1 - sg)),
        sin(h * (ti - t1 - sg)),
        sin(h * (t0 - tt + sg)),
        sin(h * (t0 + tt + sg)),
        sin(h * (t0 + tt - sg)),
        sin(h * (t0 - tt - sg)),
    )


def jimbo_s(inp):
    c0, _ = _cs(inp.theta0)
    ct, _ = _cs(inp.thetat)
    c1, _ = _cs(inp.theta1)
    ci, _ = _cs(inp.thetainf)
    _, ss = _cs(inp.sigma)
    c01, _ = _cs(inp.sigma01)
    c1t, _ = _cs(inp.sigma1t)
    eps = exp(I * pi * as_mpc(inp.sigma))
    al, _, ga, _, alp, _, gap, _ = half_angle_sines(inp)
    den = 4 * al * ga * alp * gap
    if fabs(den) <= default_tol():
        raise DegenerateDenominator("4 alpha gamma alpha' gamma' vanishes")
    num = eps * (I * ss * c1t - ct * ci - c0 * c1) + I * ss * c01 + ct * c1 + ci * c0
    return num / den


def jimbo_c_gamma(inp):
    t0, tt, t1, ti = (as_mpc(v) for v in inp.thetas)
    sg = as_mpc(inp.sigma)

    def hats(s):
        return gamma_hat(t0 + tt + s) * gamma_hat(-t0 + tt + s) * gamma_hat(ti + t1 + s) * gamma_hat(-ti + t1 + s)

    return gamma_fn(1 - sg) ** 2 * hats(sg) / (gamma_fn(1 + sg) ** 2 * hats(-sg))


def prefactor(inp):
    """Rational prefactor of the leading coefficient (exact when inputs are)."""
    t0, tt, t1, ti = inp.thetas
    sg = inp.sigma
    return (t0 + tt + sg) * (-t0 + tt + sg) * (ti + t1 + sg) / (4 * sg * sg * (ti + t1 - sg))


def leading_term(inp, tol=None):
    rep = check_conditions(inp, tol)
    if not rep.ok:
        raise ValidityError("Jimbo validity conditions fail: " + ", ".join(rep.failed), rep.failed)
    s = jimbo_s(inp)
    shat = jimbo_c_gamma(inp) * s
    if fabs(shat) <= (default_tol() if tol is None else tol):
        raise ZeroShat("s_hat vanishes")
    pre = prefactor(inp)
    exponent = 1 - inp.sigma
    return BranchLeadingTerm(as_mpc(pre) / shat, exponent, pre, s, shat, inp.sigma)


def jimbo_matrices(inp, s):
    """Explicit (M0, Mt, M1, M_inf) for the parameter s, with M_inf diagonal."""
    c0, _ = _cs(inp.theta0)
    ct, _ = _cs(inp.thetat)
    c1, _ = _cs(inp.theta1)
    _, sinf = _cs(inp.thetainf)
    csg, ssg = _cs(inp.sigma)
    eps = exp(I * pi * as_mpc(inp.sigma))
    ei = exp(I * pi * as_mpc(inp.thetainf))
    al, be, ga, de, alp, bep, gap, dep = half_angle_sines(inp)
    C = [[de, be], [al, ga]]
    Ci = inverse(C)
    A0 = [[eps * c0 - ct, 2 * s * alp * gap], [-2 / s * bep * dep, -c0 / eps + ct]]
    At = [[eps * ct - c0, -2 * s * eps * alp * gap], [2 / s / eps * bep * dep, -ct / eps + c0]]
    M0 = mat_scale(chain(Ci, A0, C), 1 / (I * ssg))
    Mt = mat_scale(chain(Ci, At, C), 1 / (I * ssg))
    M1 = mat_scale([[csg - c1 / ei, -2 / ei * be * ga], [2 * ei * al * de, -csg + ei * c1]], 1 / (I * sinf))
    Minf = [[ei, mpc(0)], [mpc(0), 1 / ei]]
    return M0, Mt, M1, Minf


def jimbo_roundtrip_traces(inp, s=None):
    """Traces (Tr M0M1, Tr M1Mt) of the explicit parameterization at s."""
    s = jimbo_s(inp) if s is None else s
    M0, Mt, M1, _ = jimbo_matrices(inp, s)
    return trace(mat_mul(M0, M1)), trace(mat_mul(M1, Mt))


def appendix_identities(inp):
    """Residuals of the three half-angle identities used to simplify s."""
    _, _, c1, ci = (cos(pi * as_mpc(v)) for v in inp.thetas)
    si = sin(pi * as_mpc(inp.thetainf))
    ss = sin(pi * as_mpc(inp.sigma))
    eps = exp(I * pi * as_mpc(inp.sigma))
    ei = exp(I * pi * as_mpc(inp.thetainf))
    al, be, ga, de = half_angle_sines(inp)[:4]
    a = (ga * de - al * be) - (-si * ss)
    b = (ga * de / ei - al * be * ei) - I * si * (eps * ci - c1)
    c = (ga * de * ei - al * be / ei) - I * si * (c1 - ci / eps)
    return a, b, c
