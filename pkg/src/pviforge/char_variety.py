"""Trace coordinates on SL2 triples and on triples of 3x3 pseudo-reflections.

Both models carry a braid group action on the stored tuple.  Words are
sequences of nonzero integers: ``1`` is beta_1, ``-1`` its inverse, ``2`` and
``-2`` likewise for beta_2.  Words act left to right.
"""
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from mpmath import fabs, mp, mpc, mpf, nint, sqrt

from .errors import (
    DegenerateError,
    DivisionByZero,
    OrbitOverflow,
    ReducibleDataError,
    ResidualError,
    SignConstraintError,
)
from .numerics import as_mpc, default_tol
from .numerics.linalg import mat_mul, trace


def _coerce(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not trace values")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return mpc(x)
    return x


def _is_zero(x):
    return x == 0


class _Record:
    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _coerce(getattr(self, f.name)))

    def as_tuple(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def numeric(self):
        return type(self)(*(as_mpc(v) for v in self.as_tuple()))

    def distance(self, other):
        return max(fabs(as_mpc(a) - as_mpc(b)) for a, b in zip(self.as_tuple(), other.as_tuple()))


@dataclass(frozen=True)
class TraceData2(_Record):
    """The seven invariant functions of an SL2 triple (M1, M2, M3)."""

    m1: object
    m2: object
    m3: object
    m12: object
    m23: object
    m13: object
    m321: object

    @property
    def quadratics(self):
        return (self.m12, self.m23, self.m13)


@dataclass(frozen=True)
class ReflectionData3(_Record):
    """Square-root data (t_i, n_i) and shifted pair traces of a reflection triple."""

    t1: object
    t2: object
    t3: object
    n1: object
    n2: object
    n3: object
    t12: object
    t23: object
    t13: object

    @property
    def t321(self):
        return self.n1**2 + self.n2**2 + self.n3**2

    @property
    def t321p(self):
        return (self.n1 * self.n2) ** 2 + (self.n2 * self.n3) ** 2 + (self.n1 * self.n3) ** 2

    @property
    def quadratics(self):
        return (self.t12, self.t23, self.t13)

    def product_defect(self):
        """t1 t2 t3 - n1 n2 n3; zero for admissible square-root choices."""
        return self.t1 * self.t2 * self.t3 - self.n1 * self.n2 * self.n3


@dataclass(frozen=True)
class Sl2Triple:
    M1: list
    M2: list
    M3: list

    def matrices(self):
        return (self.M1, self.M2, self.M3)


@dataclass(frozen=True)
class Orbit:
    elements: tuple
    perm_b1sq: tuple
    perm_b2sq: tuple
    base_point: int = 0
    action: str = "P3"

    def __len__(self):
        return len(self.elements)


# ---------------------------------------------------------------- SL2 side


def fricke_pq(d):
    P = d.m1 * d.m23 + d.m2 * d.m13 + d.m3 * d.m12 - d.m1 * d.m2 * d.m3
    Q = (
        d.m1**2 + d.m2**2 + d.m3**2 + d.m12**2 + d.m23**2 + d.m13**2
        + d.m12 * d.m23 * d.m13
        - d.m1 * d.m2 * d.m12 - d.m2 * d.m3 * d.m23 - d.m1 * d.m3 * d.m13
    )
    return P, Q


def fricke_residual(d):
    P, Q = fricke_pq(d)
    return d.m321**2 - P * d.m321 + Q - 4


def trace_m123(d):
    """Tr(M1 M2 M3), the second root of the Fricke quadratic in m321."""
    return fricke_pq(d)[0] - d.m321


def _b2_step(d, g):
    m1, m2, m3 = d.m1, d.m2, d.m3
    m12, m23, m13, m = d.m12, d.m23, d.m13, d.m321
    if g == 1:
        return TraceData2(m1, m3, m2, m2 * m + m1 * m3 - m13 - m12 * m23, m23, m12, m)
    if g == -1:
        return TraceData2(m1, m3, m2, m13, m23, m3 * m + m1 * m2 - m13 * m23 - m12, m)
    if g == 2:
        return TraceData2(m2, m1, m3, m12, m13, m1 * m + m2 * m3 - m23 - m13 * m12, m)
    if g == -2:
        return TraceData2(m2, m1, m3, m12, m2 * m + m1 * m3 - m12 * m23 - m13, m23, m)
    raise ValueError(f"unknown braid generator {g!r}")


def braid2_apply(d, word):
    for g in word:
        d = _b2_step(d, g)
    return d


def traces_from_triple(T):
    M1, M2, M3 = T.matrices()
    return TraceData2(
        trace(M1),
        trace(M2),
        trace(M3),
        trace(mat_mul(M1, M2)),
        trace(mat_mul(M2, M3)),
        trace(mat_mul(M1, M3)),
        trace(mat_mul(mat_mul(M3, M2), M1)),
    )


def braid_triple(T, word):
    """Matrix-level braid moves on (M3, M2, M1), matching the trace action."""
    from .numerics.linalg import inverse

    M1, M2, M3 = T.matrices()
    for g in word:
        if g == 1:
            M3, M2 = M2, mat_mul(mat_mul(inverse(M2), M3), M2)
        elif g == -1:
            M3, M2 = mat_mul(mat_mul(M3, M2), inverse(M3)), M3
        elif g == 2:
            M2, M1 = M1, mat_mul(mat_mul(inverse(M1), M2), M1)
        elif g == -2:
            M2, M1 = mat_mul(mat_mul(M2, M1), inverse(M2)), M2
        else:
            raise ValueError(f"unknown braid generator {g!r}")
    return Sl2Triple(M1, M2, M3)


def is_reducible(d, tol=None):
    """Reducible triples have unipotent commutators and Tr(M3M2M1) = Tr(M1M2M3)."""
    tol = default_tol() if tol is None else tol
    pairs = ((d.m1, d.m2, d.m12), (d.m2, d.m3, d.m23), (d.m1, d.m3, d.m13))
    for a, b, ab in pairs:
        kappa = a * a + b * b + ab * ab - a * b * ab - 2
        if fabs(as_mpc(kappa) - 2) > tol:
            return False
    return fabs(as_mpc(2 * d.m321 - fricke_pq(d)[0])) <= tol


def triple_from_traces(d, tol=None):
    """An SL2 triple realizing d, with M1 = diag(z, 1/z), Im z >= 0."""
    tol = default_tol() if tol is None else tol
    d = d.numeric()
    if fabs(fricke_residual(d)) > tol:
        raise ResidualError("trace data does not satisfy the Fricke relation")
    if is_reducible(d, tol):
        raise ReducibleDataError("trace data is reducible")
    disc = sqrt(d.m1**2 - 4)
    if fabs(disc) <= tol:
        raise DegenerateError("M1 must have distinct eigenvalues for the diagonal normal form")
    z = (d.m1 + disc) / 2
    if z.imag < -tol or (fabs(z.imag) <= tol and z.real < 0):
        z = 1 / z
    zi = 1 / z
    # M2 = [[a, b], [c, e]]: a + e = m2, z a + e/z = m12
    a = (d.m12 - zi * d.m2) / (z - zi)
    e = d.m2 - a
    bc = a * e - 1
    if fabs(bc) > tol:
        b, c = mpc(1), bc
    else:
        b, c = mpc(1), mpc(0)
    # M3 = [[p, f], [g, q]]
    p = (d.m13 - zi * d.m3) / (z - zi)
    q = d.m3 - p
    D = p * q - 1
    R = d.m23 - a * p - e * q
    # b g + c f = R with b = 1, f g = D
    if fabs(c) > tol:
        disc2 = sqrt(R * R - 4 * c * D)
        cands = [(R + disc2) / (2 * c), (R - disc2) / (2 * c)]
        cands = [(f, R - c * f) for f in cands]
    else:
        g = R
        if fabs(g) <= tol:
            cands = [(mpc(0), mpc(0))] if fabs(D) <= tol else []
            if not cands:
                raise DegenerateError("cannot place M3 in the chosen gauge")
        else:
            cands = [(D / g, g)]
    M1 = [[z, mpc(0)], [mpc(0), zi]]
    M2 = [[a, b], [c, e]]
    best, err = None, None
    for f, g in cands:
        T = Sl2Triple(M1, M2, [[p, f], [g, q]])
        r = traces_from_triple(T).distance(d)
        if err is None or r < err:
            best, err = T, r
    if err > tol * 2**16:
        raise ResidualError(f"reconstructed triple misses the traces by {mp.nstr(err, 5)}")
    return best


# ---------------------------------------------------------- 3x3 reflections


def fricke3_residual(d):
    s1, s2, s3 = d.t1**2, d.t2**2, d.t3**2
    cubic = s3 * d.t12 + s2 * d.t13 + s1 * d.t23 - s1 * s2 - s2 * s3 - s1 * s3 - d.t321p
    lin = d.t321 + s1 + s2 + s3 - d.t12 - d.t13 - d.t23
    rhs = (d.t12 - s1 - s2) * (d.t13 - s1 - s3) * (d.t23 - s2 - s3)
    return cubic * lin - rhs


def _nonzero(*vals):
    for v in vals:
        if _is_zero(v):
            raise DivisionByZero("a square-root coordinate vanishes")


def _b3_step(d, g):
    t1, t2, t3 = d.t1, d.t2, d.t3
    s1, s2, s3 = t1**2, t2**2, t3**2
    a, b, c = d.t12, d.t23, d.t13
    T, Tp = d.t321, d.t321p
    if g == 1:
        _nonzero(s2)
        return replace(d, t2=t3, t3=t2, t12=T + s1 + s3 - c + (Tp - a * b) / s2, t23=b, t13=a)
    if g == -1:
        _nonzero(s3)
        return replace(d, t2=t3, t3=t2, t12=c, t23=b, t13=T + s1 + s2 - a + (Tp - c * b) / s3)
    if g == 2:
        _nonzero(s1)
        return replace(d, t1=t2, t2=t1, t12=a, t23=c, t13=T + s2 + s3 - b + (Tp - c * a) / s1)
    if g == -2:
        _nonzero(s2)
        return replace(d, t1=t2, t2=t1, t12=a, t23=T + s1 + s3 - c + (Tp - a * b) / s2, t13=b)
    raise ValueError(f"unknown braid generator {g!r}")


def braid3_apply(d, word):
    for g in word:
        d = _b3_step(d, g)
    return d


def phi(d):
    """Map reflection data to SL2 trace data."""
    _nonzero(d.t1, d.t2, d.t3, d.n1, d.n2, d.n3)
    n1 = d.n1
    return TraceData2(
        d.t1 / n1 + n1 / d.t1,
        d.t2 / n1 + n1 / d.t2,
        d.t3 / n1 + n1 / d.t3,
        d.t12 / (d.t1 * d.t2),
        d.t23 / (d.t2 * d.t3),
        d.t13 / (d.t1 * d.t3),
        d.n2 / d.n3 + d.n3 / d.n2,
    )


def cstar_scale(d, h):
    h = _coerce(h)
    if _is_zero(h):
        raise ValueError("h must be nonzero")
    h2 = h * h
    return ReflectionData3(
        h * d.t1, h * d.t2, h * d.t3, h * d.n1, h * d.n2, h * d.n3, h2 * d.t12, h2 * d.t23, h2 * d.t13
    )


def sigma_variant(d, perm=(0, 1, 2), eps=(1, 1, 1), delta=(1, 1, 1)):
    """t_i -> eps_i t_i, n_i -> delta_i n_perm(i); perm is 0-based."""
    if sorted(perm) != [0, 1, 2]:
        raise ValueError("perm must be a permutation of (0, 1, 2)")
    if any(s not in (1, -1) for s in (*eps, *delta)):
        raise ValueError("signs must be +1 or -1")
    if eps[0] * eps[1] * eps[2] != delta[0] * delta[1] * delta[2]:
        raise SignConstraintError("sign products of eps and delta differ")
    ts = (d.t1, d.t2, d.t3)
    ns = (d.n1, d.n2, d.n3)
    return ReflectionData3(
        *(e * t for e, t in zip(eps, ts)),
        *(delta[i] * ns[perm[i]] for i in range(3)),
        d.t12, d.t23, d.t13,
    )


# ------------------------------------------------------------------ orbits


def _bucket_key(d, quantum):
    key = []
    for v in d.as_tuple():
        v = as_mpc(v)
        key.append(int(nint(v.real / quantum)))
        key.append(int(nint(v.imag / quantum)))
    return tuple(key)


class _OrbitStore:
    """Insertion-ordered set of data points, deduplicated to a tolerance.

    Points are hashed by coordinates rounded to a grid much coarser than the
    tolerance; points within the same cell are compared at full precision.
    """

    def __init__(self, tol):
        self.tol = tol
        self.quantum = mpf(2) ** (-(mp.prec // 4))
        self.items = []
        self.buckets = {}

    def find(self, d):
        for i in self.buckets.get(_bucket_key(d, self.quantum), ()):
            if self.items[i].distance(d) < self.tol:
                return i
        return None

    def add(self, d):
        i = self.find(d)
        if i is not None:
            return i, False
        self.items.append(d)
        self.buckets.setdefault(_bucket_key(d, self.quantum), []).append(len(self.items) - 1)
        return len(self.items) - 1, True


def enumerate_orbit(seed, action="P3", dedup_tol=None, max_size=10000):
    """Breadth-first closure of ``seed`` under the braid or pure braid group."""
    if max_size < 1:
        raise ValueError("max_size must be positive")
    if action not in ("B3", "P3"):
        raise ValueError("action must be 'B3' or 'P3'")
    apply = braid3_apply if isinstance(seed, ReflectionData3) else braid2_apply
    gens = ((1,), (2,)) if action == "B3" else ((1, 1), (2, 2))
    tol = default_tol() if dedup_tol is None else dedup_tol
    store = _OrbitStore(tol)
    store.add(seed)
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for w in gens:
                j, new = store.add(apply(store.items[i], w))
                if new:
                    if len(store.items) > max_size:
                        raise OrbitOverflow(f"orbit exceeds {max_size} elements")
                    nxt.append(j)
        frontier = nxt
    perms = []
    for w in ((1, 1), (2, 2)):
        p = []
        for d in store.items:
            j = store.find(apply(d, w))
            if j is None:
                raise OrbitOverflow("orbit is not closed under the pure braid generators")
            p.append(j)
        perms.append(tuple(p))
    return Orbit(tuple(store.items), perms[0], perms[1], 0, action)


# ------------------------------------------------------ Painleve parameters


def theta_from_lambda_mu(lam, mu):
    lam = [Fraction(x) for x in lam]
    mu = [Fraction(x) for x in mu]
    return (lam[0] - mu[0], lam[1] - mu[0], lam[2] - mu[0], mu[2] - mu[1])


def lambda_mu_defect(lam, mu):
    """sum(lambda) - sum(mu); must be an even integer for consistent roots."""
    return sum(Fraction(x) for x in lam) - sum(Fraction(x) for x in mu)


def pvi_params_from_theta(theta):
    th1, th2, th3, th4 = (Fraction(x) if not isinstance(x, mpc) else x for x in theta)
    half = Fraction(1, 2)
    return ((th4 - 1) ** 2 * half, -(th1**2) * half, th3**2 * half, (1 - th2**2) * half)
