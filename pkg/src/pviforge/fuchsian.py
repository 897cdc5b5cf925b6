"""Linear systems attached to a PVI solution.

Going from (t, y, y') to the rank-two Jimbo-Miwa residues, from their traces
to a rank-three system with reflection monodromy, back from a rank-three
system to y, and numerically continuing a fundamental solution around the
poles to read off the monodromy.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import exp, fabs, mp, mpc, mpf, pi

from .errors import (
    ConstantPolynomialError,
    DegenerateParameters,
    DependentImagesError,
    GaugeDegenerateError,
    SingularPointError,
    StepFailure,
)
from .numerics import as_mpc
from .numerics.linalg import (
    chain,
    det,
    eigenvalues,
    inverse,
    mat_add,
    mat_mul,
    mat_scale,
    nullspace,
    to_numeric,
    trace,
)


def _exact(*xs):
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _f(x):
    return Fraction(x) if isinstance(x, int) else x


# ---------------------------------------------------------------- rank two


def x_from_y(y, yprime, t, theta):
    th1, th2, th3, _ = theta
    y, yprime, t = _f(y), _f(yprime), _f(t)
    if y == 0 or y == 1 or y == t:
        raise SingularPointError("y sits at a pole of the system")
    if not _exact(y, t) and min(fabs(as_mpc(y)), fabs(as_mpc(y) - 1), fabs(as_mpc(y) - as_mpc(t))) == 0:
        raise SingularPointError("y sits at a pole of the system")
    half = Fraction(1, 2) if _exact(y, yprime, t) else mpf(0.5)
    return half * (t * (t - 1) * yprime / (y * (y - 1) * (y - t)) - th1 / y - th3 / (y - 1) - (th2 + 1) / (y - t))


@dataclass(frozen=True)
class JMSystem:
    z1: object
    z2: object
    z3: object
    u: object
    v: object
    w: object
    theta: tuple
    t: object

    @property
    def k(self):
        th1, th2, th3, th4 = self.theta
        half = Fraction(1, 2)
        return (th4 - th1 - th2 - th3) * half, (-th4 - th1 - th2 - th3) * half

    def residues(self):
        """(A1, A2, A3) at the poles (0, t, 1); each has eigenvalues {0, theta_i}."""
        th1, th2, th3, _ = self.theta

        def block(z, th, g):
            return [[z + th, -g * z], [(z + th) / g, -z]]

        return block(self.z1, th1, self.u), block(self.z2, th2, self.w), block(self.z3, th3, self.v)

    def constraint_residuals(self):
        th1, th2, th3, _ = self.theta
        k2 = self.k[1]
        z1, z2, z3, u, v, w, t = self.z1, self.z2, self.z3, self.u, self.v, self.w, self.t
        return (
            z1 + z2 + z3 - k2,
            u * z1 + v * z3 + w * z2,
            (z1 + th1) / u + (z3 + th3) / v + (z2 + th2) / w,
            (t + 1) * u * z1 + t * v * z3 + w * z2 - 1,
        )

    def y(self):
        """Zero of the (1,2) entry of z(z-1)(z-t) A(z)."""
        z1, z2, z3, u, v, w, t = self.z1, self.z2, self.z3, self.u, self.v, self.w, self.t
        # -(u z1 (z-t)(z-1) + w z2 z(z-1) + v z3 z(z-t)); the z^2 term cancels
        lin = u * z1 * (t + 1) + w * z2 + v * z3 * t
        return u * z1 * t / lin

    def x(self):
        y, t = self.y(), self.t
        return self.z1 / y + self.z2 / (y - t) + self.z3 / (y - 1)

    def as_dict(self):
        return {k: str(getattr(self, k)) for k in ("z1", "z2", "z3", "u", "v", "w", "t")}


def jm_from_xy(x, y, t, theta):
    """Residues of the rank-two system with the given (x, y) at time t.

    The torus freedom is fixed by (t+1) u z1 + t v z3 + w z2 = 1.
    """
    th1, th2, th3, th4 = theta
    x, y, t = _f(x), _f(y), _f(t)
    if th4 == 0:
        raise DegenerateParameters("theta_4 = 0")
    if t == 0 or t == 1:
        raise DegenerateParameters("t must avoid 0 and 1")
    half = Fraction(1, 2)
    k1 = (th4 - th1 - th2 - th3) * half
    k2 = (-th4 - th1 - th2 - th3) * half
    E = (
        y * (y - 1) * (y - t) * x * x
        + (th3 * (y - t) + t * th2 * (y - 1) - 2 * k2 * (y - 1) * (y - t)) * x
        + k2 * k2 * y
        - k2 * (th3 + t * th2)
    )
    z1 = y * (E - k2 * k2 * (t + 1)) / (t * th4)
    z2 = (y - t) * (E + t * th4 * (y - 1) * x - k2 * k2 - t * k1 * k2) / (t * (t - 1) * th4)
    z3 = -(y - 1) * (E + th4 * (y - t) * x - k2 * k2 * t - k1 * k2) / ((t - 1) * th4)
    if any(_is_zero(z) for z in (z1, z2, z3)):
        raise DegenerateParameters("a residue degenerates (z_i = 0)")
    u = y / (t * z1)
    v = -(y - 1) / ((t - 1) * z3)
    w = (y - t) / (t * (t - 1) * z2)
    return JMSystem(z1, z2, z3, u, v, w, tuple(theta), t)


def _is_zero(z):
    if isinstance(z, (int, Fraction)):
        return z == 0
    return fabs(as_mpc(z)) < mpf(2) ** (-mp.prec // 2)


def b_traces_from_jm(sys):
    """(Tr A1A2, Tr A2A3, Tr A1A3, Tr A3A2A1) of the rank-one residues."""
    A1, A2, A3 = sys.residues()
    return (
        trace(mat_mul(A1, A2)),
        trace(mat_mul(A2, A3)),
        trace(mat_mul(A1, A3)),
        trace(chain(A3, A2, A1)),
    )


# ---------------------------------------------------------------- rank three


@dataclass(frozen=True)
class FuchsianSystem3:
    B: tuple
    t: object
    lam: tuple = ()
    mu: tuple = ()

    @property
    def poles(self):
        return (0, self.t, 1)

    def total(self):
        return mat_add(mat_add(self.B[0], self.B[1]), self.B[2])

    def as_dict(self):
        return {
            "poles": [str(p) for p in self.poles],
            "residues": [[[str(v) for v in row] for row in M] for M in self.B],
            "lambda": [str(v) for v in self.lam],
            "mu": [str(v) for v in self.mu],
        }


def b_traces_from_B(sys):
    B1, B2, B3 = sys.B
    return (
        trace(mat_mul(B1, B2)),
        trace(mat_mul(B2, B3)),
        trace(mat_mul(B1, B3)),
        trace(chain(B3, B2, B1)),
    )


def assemble_B(traces, lam, t=None, mu=()):
    """Residues in the normal form with b21 = b32 = 1.

    B_i is zero outside row i, has lam_i on the diagonal, and the
    off-diagonal entries are solved from the pair and triple traces.
    """
    T12, T23, T13, T321 = traces
    if _is_zero(T321):
        raise GaugeDegenerateError("Tr(B3 B2 B1) = 0 leaves b31 undetermined")
    z = Fraction(0) if _exact(*traces) else mpc(0)
    one = z + 1
    b12, b23, b13 = T12, T23, T321
    b31 = T13 / b13
    l1, l2, l3 = lam
    B1 = [[l1, b12, b13], [z, z, z], [z, z, z]]
    B2 = [[z, z, z], [one, l2, b23], [z, z, z]]
    B3 = [[z, z, z], [z, z, z], [b31, one, l3]]
    return FuchsianSystem3((B1, B2, B3), t, tuple(lam), tuple(mu))


def _image_vector(B):
    """A nonzero column of a rank-one matrix."""
    j = max(range(3), key=lambda c: max(abs(B[r][c]) for r in range(3)))
    return [B[r][j] for r in range(3)]


def scalar_shift_residues(sys, lam):
    """B_i + lam * (projector onto the image of B_i along the other images)."""
    if lam == 0:
        return sys
    F = [_image_vector(B) for B in sys.B]
    cols = [[F[j][i] for j in range(3)] for i in range(3)]
    try:
        if _is_zero(det(cols)):
            raise DependentImagesError("images of the residues are linearly dependent")
        Fi = inverse(cols)
    except ZeroDivisionError:
        raise DependentImagesError("images of the residues are linearly dependent") from None
    newB = []
    for i, B in enumerate(sys.B):
        proj = [[F[i][r] * Fi[i][c] for c in range(3)] for r in range(3)]
        newB.append(mat_add(B, mat_scale(proj, lam)))
    return FuchsianSystem3(
        tuple(newB), sys.t, tuple(l + lam for l in sys.lam), tuple(m + lam for m in sys.mu)
    )


def _eigvec(M, mu):
    shifted = [[M[i][j] - (mu if i == j else 0) for j in range(3)] for i in range(3)]
    if _exact(*(v for row in shifted for v in row)):
        ns = nullspace(shifted)
    else:
        ns = nullspace(to_numeric(shifted), tol=mpf(2) ** (-mp.prec // 2))
    if len(ns) != 1:
        raise ConstantPolynomialError("sum of residues is not diagonalisable with simple spectrum")
    return ns[0]


def y_from_B(sys, mu=None):
    """Position of the zero of the (2,3) entry of z(z-1)(z-t)B(z) in the basis where
    B1 + B2 + B3 = diag(mu)."""
    mu = tuple(sys.mu) if mu is None else tuple(mu)
    if len(mu) != 3:
        raise ValueError("an ordered triple of eigenvalues is required")
    S = sys.total()
    P = [[None] * 3 for _ in range(3)]
    for k, m in enumerate(mu):
        v = _eigvec(S, m)
        for i in range(3):
            P[i][k] = v[i]
    Pi = inverse(P)
    c = [chain(Pi, B, P)[1][2] for B in sys.B]
    t = sys.t
    lin = c[0] * (1 + t) + c[1] + c[2] * t
    if _is_zero(lin):
        raise ConstantPolynomialError("the (2,3) entry has no finite zero")
    return c[0] * t / lin


# ---------------------------------------------------------------- numeric monodromy


@dataclass
class MonodromyReport:
    r: tuple
    traces: tuple
    dets: tuple
    pair_traces: dict
    product_eigenvalues: list
    loop_word: tuple = ()
    extra: dict = field(default_factory=dict)

    def as_dict(self, digits=20):
        def s(z):
            z = as_mpc(z)
            return [mp.nstr(z.real, digits), mp.nstr(z.imag, digits)]

        return {
            "traces": [s(x) for x in self.traces],
            "dets": [s(x) for x in self.dets],
            "pair_traces": {k: s(v) for k, v in sorted(self.pair_traces.items())},
            "product_eigenvalues": [s(x) for x in self.product_eigenvalues],
            "loop_word": list(self.loop_word),
        }


def _shift_poly(coeffs, c):
    """Coefficients of p(c + h) in h, given p(z) coefficients (lowest first)."""
    out = list(coeffs)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] = out[j] + c * out[j + 1]
    return out


class _Cleared:
    """P(z) Phi' = Q(z) Phi with P = z(z-t)(z-1) and Q a matrix polynomial."""

    def __init__(self, B, t):
        t = as_mpc(t)
        B = [to_numeric(M) for M in B]
        self.t = t
        self.poles = (mpc(0), t, mpc(1))
        # P(z) = z^3 - (1+t) z^2 + t z
        self.P = [mpc(0), t, -(1 + t), mpc(1)]
        # Q(z) = B1 (z-t)(z-1) + B2 z(z-1) + B3 z(z-t)
        q1 = [t, -(1 + t), mpc(1)]
        q2 = [mpc(0), mpc(-1), mpc(1)]
        q3 = [mpc(0), -t, mpc(1)]
        self.Q = [
            [[B[0][i][j] * q1[k] + B[1][i][j] * q2[k] + B[2][i][j] * q3[k] for j in range(3)] for i in range(3)]
            for k in range(3)
        ]

    def dist(self, z):
        return min(fabs(z - a) for a in self.poles)

    def step(self, Phi, z, h, tol):
        """Taylor step of Phi from z to z + h (|h| below the radius of convergence)."""
        p = _shift_poly(self.P, z)
        Q = [[[mpc(0)] * 3 for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(3):
                qs = _shift_poly([self.Q[k][i][j] for k in range(3)], z)
                for k in range(3):
                    Q[k][i][j] = qs[k]
        coeffs = [Phi]
        total = [row[:] for row in Phi]
        hk = mpc(1)
        scale = max(fabs(v) for row in Phi for v in row)
        quiet = 0
        m = 0
        while True:
            # p0 (m+1) Phi_{m+1} = sum_j Q_j Phi_{m-j} - sum_{j>=1} p_j (m+1-j) Phi_{m+1-j}
            acc = [[mpc(0)] * 3 for _ in range(3)]
            for j in range(3):
                if m - j >= 0:
                    acc = mat_add(acc, mat_mul(Q[j], coeffs[m - j]))
            for j in range(1, 4):
                if m + 1 - j >= 1:
                    acc = mat_add(acc, mat_scale(coeffs[m + 1 - j], -p[j] * (m + 1 - j)))
            nxt = mat_scale(acc, 1 / (p[0] * (m + 1)))
            coeffs.append(nxt)
            hk = hk * h
            term = mat_scale(nxt, hk)
            total = mat_add(total, term)
            size = max(fabs(v) for row in term for v in row)
            m += 1
            quiet = quiet + 1 if size <= tol * scale else 0
            if quiet >= 3:
                return total
            if m > 4000:
                raise StepFailure("Taylor series did not converge within the step")


def _continue(sysc, Phi, path, tol, ratio):
    """Continue Phi along a polyline, stepping at most ratio * (distance to poles)."""
    for a, b in zip(path, path[1:]):
        z = a
        while True:
            rem = b - z
            if fabs(rem) == 0:
                break
            d = sysc.dist(z)
            if d == 0:
                raise StepFailure("path runs into a pole")
            hmax = ratio * d
            h = rem if fabs(rem) <= hmax else rem / fabs(rem) * hmax
            Phi = sysc.step(Phi, z, h, tol)
            z = z + h
            if z == b or fabs(b - z) < tol:
                break
    return Phi


def _circle(center, radius, start_angle, pieces=16):
    return [center + radius * exp(mpc(0, 1) * (start_angle + 2 * pi * k / pieces)) for k in range(pieces + 1)]


def loop_paths(t, base=-1):
    """Polylines of the standard loops around 0, t, 1 from the base point.

    Each loop runs straight from the base to the point just above its pole
    (passing above the poles on the way), goes once counterclockwise around
    a circle of radius (minimum pole gap)/3, and returns the same way.
    """
    poles = (mpc(0), as_mpc(t), mpc(1))
    gaps = [fabs(poles[i] - poles[j]) for i in range(3) for j in range(i + 1, 3)]
    rho = min(gaps) / 3
    base = as_mpc(base)
    paths = []
    for a in poles:
        top = a + mpc(0, 1) * rho
        go = [base, top]
        paths.append(go + _circle(a, rho, pi / 2)[1:] + [base])
    return paths, rho


def _braid_triple_loops(r, word):
    from .char_variety import Sl2Triple, braid_triple

    T = braid_triple(Sl2Triple(*r), word)
    return (T.M1, T.M2, T.M3)


def numeric_monodromy(sys, base=-1, word=(), prec=None, tol=None, ratio=mpf(0.5)):
    """Monodromy (r1, r2, r3) of dPhi/dz = B(z) Phi along the standard loops.

    Phi is normalized to the identity at the base point; continuing along a
    loop multiplies it on the right by the loop's monodromy matrix.  A braid
    word changes the loop system; its effect on the matrices is the braid
    action on triples.
    """
    bits = prec if prec is not None else max(mp.prec, 128)
    with mp.workprec(bits):
        tol = mpf(10) ** -20 if tol is None else tol
        sysc = _Cleared(sys.B, sys.t)
        paths, _ = loop_paths(sys.t, base)
        r = []
        for path in paths:
            Phi = [[mpc(1) if i == j else mpc(0) for j in range(3)] for i in range(3)]
            r.append(_continue(sysc, Phi, path, tol, ratio))
        r = tuple(r)
        if word:
            r = _braid_triple_loops(r, word)
        return monodromy_report(r, word)


def monodromy_report(r, word=()):
    r1, r2, r3 = r
    prod = chain(r3, r2, r1)
    return MonodromyReport(
        r=tuple(r),
        traces=tuple(trace(M) for M in r),
        dets=tuple(det(M) for M in r),
        pair_traces={"12": trace(mat_mul(r1, r2)), "23": trace(mat_mul(r2, r3)), "13": trace(mat_mul(r1, r3))},
        product_eigenvalues=sorted(eigenvalues(prod), key=lambda z: float(_arg01(z))),
        loop_word=tuple(word),
    )


def _arg01(z):
    from mpmath import arg

    a = arg(as_mpc(z))
    return a if a >= 0 else a + 2 * pi


def klein_corollary_system():
    """The rank-three Klein system at s = 5/4 in the b21 = b32 = 1 gauge."""
    traces = (Fraction(3, 224), Fraction(5, 176), Fraction(249, 2464), Fraction(21, 1408))
    half = Fraction(1, 2)
    mu = (Fraction(3, 14), Fraction(5, 14), Fraction(13, 14))
    return assemble_B(traces, (half, half, half), Fraction(121, 125), mu)
