"""Explicit reflection triples and the binary dihedral case analysis.

Contents: the Klein group generators (exact over Q(sqrt(-7))), the
Dubrovin-Mazzocco orthogonal triples and their unipotent SL2 partners, the
extraction of square-root data from a triple, permutation-cover invariants,
and a brute-force scan of pure braid orbits on binary dihedral triples.
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
from mpmath import arg, exp, fabs, mp, mpc, mpf, nint, pi, sqrt

from .char_variety import ReflectionData3, Sl2Triple
from .errors import DegenerateError, NonTransitiveError, RoundingError, SignConstraintError
from .numerics import Poly, as_mpc, default_tol, poly_gcd
from .numerics.linalg import chain, det, eigenvalues, identity, mat_mul, mat_sub, rank, to_numeric, trace


class QuadraticElement:
    """a + b*sqrt(D) with rational a, b, for a fixed negative integer D."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D=-7):
        self.a, self.b, self.D = Fraction(a), Fraction(b), D

    def _lift(self, other):
        if isinstance(other, QuadraticElement):
            return other
        return QuadraticElement(other, 0, self.D)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticElement(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadraticElement(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticElement(self.a, -self.b, self.D)

    def norm(self):
        return self.a * self.a - self.D * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return QuadraticElement(num.a / n, num.b / n, self.D)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticElement):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __abs__(self):
        return float(self.norm()) ** 0.5

    def is_rational(self):
        return self.b == 0

    def to_mpc(self):
        root = sqrt(mpc(self.D))
        return mpc(mpf(self.a.numerator) / self.a.denominator) + (mpf(self.b.numerator) / self.b.denominator) * root

    def __repr__(self):
        return f"QuadraticElement({self.a}, {self.b}, D={self.D})"


@dataclass(frozen=True)
class PseudoReflectionTriple:
    r1: list
    r2: list
    r3: list
    name: str = ""
    exponents: tuple = ()
    h: int = 0
    form: list = None
    degenerate: bool = False

    def matrices(self):
        return (self.r1, self.r2, self.r3)

    def numeric(self):
        return [to_numeric(r) for r in self.matrices()]


def klein_generators():
    """Standard generating reflections of the Klein group (order 336)."""
    a = QuadraticElement(Fraction(1, 2), Fraction(1, 2))
    ab = a.conjugate()
    h = Fraction(1, 2)
    r1 = [[h, -h, -ab * h], [-h, h, -ab * h], [-a * h, -a * h, QuadraticElement(0)]]
    r2 = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    r3 = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    r2 = [[QuadraticElement(v) for v in row] for row in r2]
    r3 = [[QuadraticElement(v) for v in row] for row in r3]
    return PseudoReflectionTriple(r1, r2, r3, "klein", (3, 5, 13), 14)


KLEIN_LAMBDA = (Fraction(1, 2),) * 3
KLEIN_MU = (Fraction(3, 14), Fraction(5, 14), Fraction(13, 14))


def klein_reflection_data():
    """Data of the Klein generators with t_i = i and n_k = exp(pi i mu_k)."""
    ts = [exp(mpc(0, 1) * pi * l) for l in KLEIN_LAMBDA]
    ns = [exp(mpc(0, 1) * pi * m) for m in KLEIN_MU]
    return reflection_data_from_roots(klein_generators(), ts, ns)


def klein_su2_triple():
    """An SU2 triple carrying the trace data of Klein branch 0."""
    ph = exp(2j * pi / 7)
    w = (1 + ph**2) / (ph - ph**3)
    x = sqrt(1 - fabs(w) ** 2)
    wb = w.conjugate()
    # r = mu + 1/mu is fixed by Tr(M2 M3) = 0
    r = ((w * w + wb * wb) / (x * x)).real
    mu = (r + 1j * sqrt(4 - r * r)) / 2
    M1 = [[ph, mpc(0)], [mpc(0), 1 / ph]]
    M2 = [[w, mpc(x)], [mpc(-x), wb]]
    M3 = [[w, mu * x], [-x / mu, wb]]
    return Sl2Triple(M1, M2, M3)


def dm_reflections(x1, x2, x3):
    """Reflections preserving the form [[2,x1,x3],[x1,2,x2],[x3,x2,2]]."""
    r1 = [[-1, -x1, -x3], [0, 1, 0], [0, 0, 1]]
    r2 = [[1, 0, 0], [-x1, -1, -x2], [0, 0, 1]]
    r3 = [[1, 0, 0], [0, 1, 0], [-x3, -x2, -1]]
    form = [[2, x1, x3], [x1, 2, x2], [x3, x2, 2]]
    m = dm_m(x1, x2, x3)
    degenerate = m == 2 or m == -2
    return PseudoReflectionTriple(r1, r2, r3, "dubrovin-mazzocco", (), 0, form, bool(degenerate))


def dm_m(x1, x2, x3):
    return 2 + x1 * x2 * x3 - (x1 * x1 + x2 * x2 + x3 * x3)


def dm_unipotent_triple(x1, x2, x3):
    if x1 == 0:
        raise DegenerateError("x1 must be nonzero")
    M1 = [[1, -x1], [0, 1]]
    M2 = [[1, 0], [x1, 1]]
    M3 = [[1 + x2 * x3 / x1, -x2 * x2 / x1], [x3 * x3 / x1, 1 - x2 * x3 / x1]]
    return Sl2Triple(M1, M2, M3)


def _half_angle_root(z):
    """Square root exp(i*theta/2) * sqrt|z| with theta = arg z taken in [0, 2*pi)."""
    z = as_mpc(z)
    th = arg(z)
    if th < 0:
        th += 2 * pi
    return sqrt(fabs(z)) * exp(1j * th / 2)


def _sorted_eigenvalues(M):
    ev = [as_mpc(e) for e in eigenvalues(M)]

    def key(e):
        th = arg(e)
        return th + 2 * pi if th < -default_tol() else th

    return sorted(ev, key=key)


def _pair_traces(T):
    r1, r2, r3 = T.matrices()
    return [as_mpc(trace(mat_mul(a, b)) - 1) for a, b in ((r1, r2), (r2, r3), (r1, r3))]


def reflection_data(T, mu_order=(0, 1, 2), sqrt_choice=(1, 1, 1, 1, 1, 1), tol=None):
    """Square-root data of a reflection triple.

    Eigenvalues of r3 r2 r1 are sorted by argument in [0, 2*pi) and then
    permuted by ``mu_order``; every square root starts from the half-angle
    determination and is multiplied by the matching entry of ``sqrt_choice``
    (three signs for t, three for n).
    """
    tol = default_tol() if tol is None else tol
    if sorted(mu_order) != [0, 1, 2]:
        raise ValueError("mu_order must be a permutation of (0, 1, 2)")
    if len(sqrt_choice) != 6 or any(s not in (1, -1) for s in sqrt_choice):
        raise ValueError("sqrt_choice needs six signs")
    ts = [s * _half_angle_root(det(r)) for s, r in zip(sqrt_choice[:3], T.matrices())]
    ev = _sorted_eigenvalues(chain(*[to_numeric(r) for r in (T.r3, T.r2, T.r1)]))
    ns = [s * _half_angle_root(ev[k]) for s, k in zip(sqrt_choice[3:], mu_order)]
    d = ReflectionData3(*ts, *ns, *_pair_traces(T))
    if fabs(d.product_defect()) > tol:
        raise SignConstraintError("chosen square roots violate t1 t2 t3 = n1 n2 n3")
    return d


def reflection_data_from_roots(T, ts, ns, tol=None):
    """Reflection data with explicitly supplied square roots (validated)."""
    tol = default_tol() if tol is None else tol
    ts = [as_mpc(t) for t in ts]
    ns = [as_mpc(n) for n in ns]
    for t, r in zip(ts, T.matrices()):
        if fabs(t * t - as_mpc(det(r))) > tol:
            raise SignConstraintError("t_i is not a square root of det r_i")
    P = chain(*[to_numeric(r) for r in (T.r3, T.r2, T.r1)])
    # each n_i^2 must be an eigenvalue, counted with multiplicity
    Pm = [[as_mpc(v) for v in row] for row in P]
    for n in ns:
        shifted = mat_sub(Pm, [[n * n if i == j else 0 for j in range(3)] for i in range(3)])
        if fabs(det(shifted)) > tol * 2**8:
            raise SignConstraintError("n_i^2 is not an eigenvalue of r3 r2 r1")
    d = ReflectionData3(*ts, *ns, *_pair_traces(T))
    if fabs(d.product_defect()) > tol:
        raise SignConstraintError("chosen square roots violate t1 t2 t3 = n1 n2 n3")
    return d


def dm_reflection_data(x1, x2, x3, swapped=False):
    """Square-root data of the orthogonal triple with the standard choices.

    With ``swapped`` the eigenvalue -1 is placed second and n3 = -1/n1, which
    makes all four local monodromies of the image conjugate.
    """
    T = dm_reflections(x1, x2, x3)
    m = as_mpc(dm_m(x1, x2, x3))
    w = (m + sqrt(m * m - 4)) / 2  # exp(2 pi i mu)
    e = sqrt(w)  # exp(pi i mu)
    i = mpc(0, 1)
    if not swapped:
        return reflection_data_from_roots(T, (i, i, i), (i, i * e, i / e))
    n1 = i * e
    return reflection_data_from_roots(T, (i, i, i), (n1, i, -1 / n1))


def is_pseudo_reflection(r, tol=None):
    n = len(r)
    diff = mat_sub(r, identity(n))
    if all(isinstance(v, (int, Fraction, QuadraticElement)) for row in diff for v in row):
        return rank(diff) == 1
    return rank(to_numeric(diff), default_tol() if tol is None else tol) == 1


# ------------------------------------------------------ permutation covers


def cycle_type(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            L, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            out.append(L)
    return tuple(sorted(out))


def cycles(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            c, j = [], i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = p[j]
            out.append(tuple(c))
    return out


def cycle_notation(p):
    return "".join("(" + "".join(map(str, c)) + ")" for c in cycles(p) if len(c) > 1) or "()"


def compose(p, q):
    """Apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


def invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_transitive(perms, n):
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for p in perms:
            for j in (p[i], invert(p)[i]):
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
    return len(seen) == n


def genus_from_permutations(p1, p2):
    """Genus of the cover of the sphere branched over three points.

    p1 and p2 are the monodromies around 0 and 1; the monodromy at infinity
    is the inverse of their product.  Riemann-Hurwitz gives
    2 - 2g = 2n - sum(n - #cycles).
    """
    n = len(p1)
    if len(p2) != n:
        raise ValueError("permutations act on different sets")
    if not is_transitive((p1, p2), n):
        raise NonTransitiveError("the permutations do not act transitively")
    pinf = invert(compose(p2, p1))
    defic = sum(n - len(cycle_type(p)) for p in (p1, p2, pinf))
    twice = 2 - 2 * n + defic
    if twice % 2:
        raise ValueError("Riemann-Hurwitz count is odd; inputs are inconsistent")
    return twice // 2


def group_order(perms, closure_limit=200000):
    """Order of the permutation group generated by ``perms``.

    Small groups are enumerated directly; larger ones fall back to sympy's
    Schreier-Sims implementation.
    """
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    todo = deque([ident])
    while todo:
        g = todo.popleft()
        for p in perms:
            h = compose(p, g)
            if h not in seen:
                seen.add(h)
                if len(seen) > closure_limit:
                    from sympy.combinatorics import Permutation, PermutationGroup

                    return int(PermutationGroup([Permutation(list(q)) for q in perms]).order())
                todo.append(h)
    return len(seen)


def simultaneous_conjugator(src, dst):
    """A relabeling s with s[a[i]] = b[s[i]] for every pair (a, b) of src, dst.

    Both tuples must generate transitive groups; the image of 0 fixes the
    rest, so at most n candidates are tried.  Returns None when the two
    tuples are not simultaneously conjugate.
    """
    n = len(src[0])
    if len(src) != len(dst) or any(len(p) != n for p in (*src, *dst)):
        raise ValueError("tuples of permutations on the same set are required")
    gens = [(a, b) for a, b in zip(src, dst)] + [(invert(a), invert(b)) for a, b in zip(src, dst)]
    for c in range(n):
        s = [None] * n
        s[0] = c
        todo = [0]
        ok = True
        while todo and ok:
            i = todo.pop()
            for a, b in gens:
                j, v = a[i], b[s[i]]
                if s[j] is None:
                    s[j] = v
                    todo.append(j)
                elif s[j] != v:
                    ok = False
                    break
        if ok and None not in s and len(set(s)) == n:
            return tuple(s)
    return None


def denominator7_obstruction(theta):
    return any(Fraction(x).denominator % 7 == 0 for x in theta)


# ---------------------------------------------------- binary dihedral groups
#
# Element codes for the group of order 4d: code e < 2d is zeta^e, code
# 2d + a is tau*zeta^a ("tau a").  tau^2 = zeta^d = -1.


@dataclass(frozen=True)
class BinaryDihedralElement:
    has_tau: bool
    exponent: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")
        object.__setattr__(self, "exponent", self.exponent % (2 * self.d))

    @property
    def code(self):
        return (2 * self.d if self.has_tau else 0) + self.exponent

    @classmethod
    def from_code(cls, c, d):
        c = int(c)
        return cls(c >= 2 * d, c % (2 * d), d)

    def __mul__(self, other):
        return BinaryDihedralElement.from_code(_dihedral_mul(self.code, other.code, self.d), self.d)

    def inverse(self):
        return BinaryDihedralElement.from_code(_dihedral_inv(self.code, self.d), self.d)

    def matrix(self):
        eps = exp(pi * 1j / self.d)
        z = [[eps**self.exponent, 0], [0, eps ** (-self.exponent)]]
        if not self.has_tau:
            return z
        return mat_mul([[0, -1], [1, 0]], z)

    def __repr__(self):
        return f"{'tau ' if self.has_tau else ''}{self.exponent} (d={self.d})"


def _dihedral_mul(x, y, d):
    n = 2 * d
    tx, ax = x >= n, x % n
    ty, ay = y >= n, y % n
    if not tx and not ty:
        return (ax + ay) % n
    if not tx and ty:
        return n + (ay - ax) % n
    if tx and not ty:
        return n + (ax + ay) % n
    return (d + ay - ax) % n


def _dihedral_inv(x, d):
    n = 2 * d
    if x >= n:
        return n + (x - n + d) % n
    return (-x) % n


def dihedral_tables(d):
    """Multiplication table and inverse array on element codes."""
    n = 4 * d
    codes = np.arange(n)
    X, Y = np.meshgrid(codes, codes, indexing="ij")
    m = 2 * d
    tx, ax = X >= m, X % m
    ty, ay = Y >= m, Y % m
    out = np.where(
        ~tx & ~ty,
        (ax + ay) % m,
        np.where(~tx & ty, m + (ay - ax) % m, np.where(tx & ~ty, m + (ax + ay) % m, (d + ay - ax) % m)),
    )
    inv = np.where(codes >= m, m + (codes - m + d) % m, (-codes) % m)
    return out.astype(np.int64), inv.astype(np.int64)


def _p_moves(X, Y, Z, mul, inv, which):
    """Apply p1 (on positions x,y) or p2 (on positions y,z) twice-braided."""
    if which == "p1":
        a, b = X, Y
    else:
        a, b = Y, Z
    for _ in range(2):
        a, b = b, mul[mul[inv[b], a], b]
    if which == "p1":
        return a, b, Z
    return X, a, b


def dihedral_p_action(triple, which):
    """p1 = beta_1^2 on positions (x, y), p2 = beta_2^2 on (y, z).

    beta_1 maps (x, y, z) to (y, y^-1 x y, z) and beta_2 maps it to
    (x, z, z^-1 y z).
    """
    x, y, z = triple
    if not (x.d == y.d == z.d):
        raise ValueError("elements come from different groups")
    if which not in ("p1", "p2"):
        raise ValueError("which must be 'p1' or 'p2'")
    if which == "p1":
        a, b = x, y
    else:
        a, b = y, z
    for _ in range(2):
        a, b = b, b.inverse() * a * b
    return (a, b, z) if which == "p1" else (x, a, b)


def _canonical_codes(X, Y, Z, d):
    """Canonical representative of simultaneous conjugacy classes (vectorized).

    Conjugation by zeta^c fixes the zeta^a and sends tau a to tau(a - 2c);
    conjugation by tau negates every exponent.  After optionally negating,
    the first tau-entry is shifted to exponent 0 or 1; the smaller of the
    two resulting codes is the canonical one.
    """
    m = 2 * d
    n = 4 * d
    best = None
    for flip in (False, True):
        A = [X, Y, Z]
        if flip:
            A = [np.where(V >= m, m + (-(V - m)) % m, (-V) % m) for V in A]
        first = np.where(A[0] >= m, A[0], np.where(A[1] >= m, A[1], np.where(A[2] >= m, A[2], -1)))
        shift = np.where(first >= 0, ((first - m) // 2) * 2, 0)
        A = [np.where(V >= m, m + (V - m - shift) % m, V) for V in A]
        code = (A[0] * n + A[1]) * n + A[2]
        best = code if best is None else np.minimum(best, code)
    return best


def _class_representatives(d):
    """Sorted canonical codes of all conjugacy classes of triples.

    Only triples whose first tau-entry already has exponent 0 or 1 (or with
    no tau-entry at all) are generated; every class meets this set.
    """
    n, m = 4 * d, 2 * d
    allc = np.arange(n, dtype=np.int64)
    zeta = np.arange(m, dtype=np.int64)
    taus = np.array([m, m + 1], dtype=np.int64)
    parts = []
    for first in range(4):
        axes = []
        for pos in range(3):
            if pos < first:
                axes.append(zeta)
            elif pos == first:
                axes.append(taus)
            else:
                axes.append(allc)
        if first == 3:
            axes = [zeta, zeta, zeta]
        X, Y, Z = (a.ravel() for a in np.meshgrid(*axes, indexing="ij"))
        parts.append(_canonical_codes(X, Y, Z, d))
    return np.unique(np.concatenate(parts))


def _decode(code, d):
    n = 4 * d
    return code // (n * n), (code // n) % n, code % n


def _cycle_lengths(P, cap):
    idx = np.arange(len(P))
    L = np.zeros(len(P), dtype=np.int64)
    cur = P.copy()
    for step in range(1, cap + 1):
        hit = (cur == idx) & (L == 0)
        L[hit] = step
        cur = P[cur]
    return L  # 0 means longer than cap


def _orbit_labels(P1, P2):
    N = len(P1)
    lab = np.arange(N)
    I1, I2 = np.empty_like(P1), np.empty_like(P2)
    I1[P1] = np.arange(N)
    I2[P2] = np.arange(N)
    while True:
        new = np.minimum.reduce([lab, lab[P1], lab[P2], lab[I1], lab[I2]])
        new = new[new]
        if np.array_equal(new, lab):
            return lab
        lab = new


@dataclass
class DihedralScanReport:
    d_max: int
    rows: list = field(default_factory=list)
    size7: list = field(default_factory=list)
    flagged: list = field(default_factory=list)

    def as_dict(self):
        return {"d_max": self.d_max, "per_d": self.rows, "size7_orbits": self.size7, "flagged": self.flagged}


def _scan_one(d):
    reps = _class_representatives(d)
    mul, inv = dihedral_tables(d)
    X, Y, Z = _decode(reps, d)
    perms = []
    for which in ("p1", "p2"):
        A, B, C = _p_moves(X, Y, Z, mul, inv, which)
        img = _canonical_codes(A, B, C, d)
        perms.append(np.searchsorted(reps, img))
    P1, P2 = perms
    lab = _orbit_labels(P1, P2)
    roots, sizes = np.unique(lab, return_counts=True)
    L1, L2 = _cycle_lengths(P1, 7), _cycle_lengths(P2, 7)
    size7 = []
    for r in roots[sizes == 7]:
        members = np.nonzero(lab == r)[0]
        t1 = _type_from_lengths(L1[members])
        t2 = _type_from_lengths(L2[members])
        x, y, z = (int(v) for v in _decode(reps[r], d))
        size7.append({"d": d, "class": [x, y, z], "p1_type": t1, "p2_type": t2,
                      "flag": t1 == [2, 2, 3] and t2 == [2, 2, 3]})
    row = {"d": d, "classes": int(len(reps)), "orbits": int(len(roots)),
           "max_orbit": int(sizes.max()), "size7": len(size7)}
    return row, size7, (reps, P1, P2, lab)


def _type_from_lengths(lengths):
    """Cycle type from per-element cycle lengths (each cycle of length L seen L times)."""
    out = []
    for L in sorted(set(int(v) for v in lengths)):
        count = int(np.sum(lengths == L))
        out.extend([L] * (count // L if L else 1))
    return sorted(out)


def dihedral_orbit_scan(d_max):
    """Scan pure braid orbits on conjugacy classes of binary dihedral triples.

    Flags every orbit with seven classes on which both p1 and p2 have cycle
    type (2, 2, 3).
    """
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    rep = DihedralScanReport(d_max)
    for d in range(2, d_max + 1):
        row, size7, _ = _scan_one(d)
        rep.rows.append(row)
        rep.size7.extend(size7)
        rep.flagged.extend(s for s in size7 if s["flag"])
    return rep


def dihedral_class_orbit(triple):
    """The P3 orbit of conjugacy classes through ``triple``, with p1, p2 as permutations."""
    d = triple[0].d
    reps, P1, P2, lab = _scan_one(d)[2]
    code = _canonical_codes(*(np.array([e.code]) for e in triple), d)[0]
    i = int(np.searchsorted(reps, code))
    members = np.nonzero(lab == lab[i])[0]
    pos = {int(m): k for k, m in enumerate(members)}
    p1 = tuple(pos[int(P1[m])] for m in members)
    p2 = tuple(pos[int(P2[m])] for m in members)
    elems = [tuple(BinaryDihedralElement.from_code(c, d) for c in _decode(reps[m], d)) for m in members]
    return elems, p1, p2, pos[i]


def canonical_class(triple):
    d = triple[0].d
    code = int(_canonical_codes(*(np.array([e.code]) for e in triple), d)[0])
    return tuple(BinaryDihedralElement.from_code(c, d) for c in _decode(code, d))


# -------------------------------------------------- minimal polynomials


def galois_minpoly_numeric(coeffs, N, eigenvalue_of_trace=True, tol=mpf(10) ** -30):
    """Integer polynomial vanishing on the Galois orbit of a cyclotomic value.

    ``coeffs[j]`` multiplies zeta_N^j.  With ``eigenvalue_of_trace`` the
    value is read as a trace tau and the roots are the eigenvalues
    eps with eps + 1/eps = tau; otherwise the value itself is the root.
    """
    coeffs = [Fraction(c) for c in coeffs]
    vals = []
    for k in range(1, N + 1):
        if gcd(k, N) != 1:
            continue
        z = exp(2j * pi * k / N)
        v = sum((as_mpc(c) * z**j for j, c in enumerate(coeffs)), mpc(0))
        if all(fabs(v - u) > mpf(10) ** -40 for u in vals):
            vals.append(v)
    poly = [mpc(1)]
    for v in vals:
        factor = [mpc(1), -v, mpc(1)] if eigenvalue_of_trace else [-v, mpc(1)]
        out = [mpc(0)] * (len(poly) + len(factor) - 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(factor):
                out[i + j] += a * b
        poly = out
    ints = []
    resid = mpf(0)
    for c in poly:
        r = nint(c.real)
        resid = max(resid, fabs(c - r))
        ints.append(int(r))
    if resid > tol:
        raise RoundingError(f"coefficients are {mp.nstr(resid, 5)} away from integers")
    p = Poly(ints)
    g = poly_gcd(p, p.derivative())
    if g.degree > 0:
        p = p // g
    content, prim = p.integer_primitive()
    if prim[-1] < 0:
        prim = [-v for v in prim]
    return prim  # lowest degree first


KLEIN_EPSILON_TRACE = (0, -2, 0, -1, -1, 0, -2)
"""tau = -(1 + phi^2)(phi + phi^4 + phi^6) as coefficients of phi^j, phi = exp(2 pi i/7)."""
