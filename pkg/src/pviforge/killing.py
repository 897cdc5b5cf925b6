"""Pseudo-reflections through their pairing matrix u.

Given r_i = 1 + e_i (x) alpha_i, the pairing matrix has u_ij = alpha_i(e_j).
Writing u = t2 u_plus - u_minus with u_plus upper unipotent, u_minus lower
unipotent and t2 diagonal, the product r_n ... r_1 in the e-basis equals
u_minus^-1 t2 u_plus.  Everything here works for any n and over any field
type that supports + - * / (Fraction, QuadraticElement, mpc).

Braid generators are 1-based: gamma_i moves (r_{i+1}, r_i) to
(r_i, r_i^-1 r_{i+1} r_i).
"""
from dataclasses import dataclass
from fractions import Fraction

from mpmath import fabs, mp, mpc, mpf

from .char_variety import Sl2Triple
from .errors import DegenerateDiagonal, IrreducibleError, NotInBigCell, NoUnitEigenvalue, SingularU
from .numerics import as_mpc, default_tol
from .numerics.linalg import chain, det, identity, inverse, mat_sub, max_abs_diff, to_mp, to_numeric


def _exact(x):
    return isinstance(x, (int, Fraction)) or hasattr(x, "to_mpc")


def _is_zero(x, tol=None):
    if _exact(x):
        return x == 0
    return fabs(as_mpc(x)) <= (default_tol() if tol is None else tol)


def _one_like(x):
    return mpc(1) if not _exact(x) else Fraction(1)


def _copy(A):
    return [list(r) for r in A]


@dataclass(frozen=True)
class UMatrix:
    u: list

    def __post_init__(self):
        n = len(self.u)
        if any(len(r) != n for r in self.u):
            raise ValueError("u must be square")
        for i in range(n):
            if _is_zero(1 + self.u[i][i]):
                raise DegenerateDiagonal(f"1 + u[{i}][{i}] vanishes")

    @property
    def n(self):
        return len(self.u)

    @property
    def t2(self):
        return [1 + self.u[i][i] for i in range(self.n)]

    @property
    def u_plus(self):
        n, t2 = self.n, self.t2
        one = _one_like(self.u[0][0])
        zero = one - one
        return [[one if i == j else (self.u[i][j] / t2[i] if j > i else zero) for j in range(n)] for i in range(n)]

    @property
    def u_minus(self):
        n = self.n
        one = _one_like(self.u[0][0])
        zero = one - one
        return [[one if i == j else (-self.u[i][j] if i > j else zero) for j in range(n)] for i in range(n)]

    def recompose_check(self):
        """t2 u_plus - u_minus, which must give back u."""
        t2, up, um = self.t2, self.u_plus, self.u_minus
        return [[t2[i] * up[i][j] - um[i][j] for j in range(self.n)] for i in range(self.n)]

    def product(self):
        """u_minus^-1 t2 u_plus, the big-cell point carrying the same data."""
        t2 = self.t2
        D = [[t2[i] if i == j else 0 * t2[i] for j in range(self.n)] for i in range(self.n)]
        return chain(inverse(self.u_minus), D, self.u_plus)

    def as_dict(self):
        return {"u": self.u}


@dataclass(frozen=True)
class ReflectionTuple:
    """r_i = 1 + e_i (x) alpha_i; e holds column vectors, alpha row vectors."""

    e: list
    alpha: list

    @property
    def n(self):
        return len(self.e)

    def matrices(self):
        n = self.n
        out = []
        for ei, ai in zip(self.e, self.alpha):
            out.append([[(1 if a == b else 0) + ei[a] * ai[b] for b in range(n)] for a in range(n)])
        return out


def _pairing(alpha, e):
    return sum(a * b for a, b in zip(alpha, e))


def u_from_reflections(rt):
    n = rt.n
    return UMatrix([[_pairing(rt.alpha[i], rt.e[j]) for j in range(n)] for i in range(n)])


def rank_one_factor(A):
    """(e, alpha) with A = e alpha^T; e is the column of largest norm."""
    n = len(A)
    m = len(A[0])

    def col_norm(j):
        return sum(abs(as_mpc(A[i][j])) ** 2 for i in range(n))

    j = max(range(m), key=col_norm)
    e = [A[i][j] for i in range(n)]
    p = max(range(n), key=lambda i: abs(as_mpc(e[i])))
    if _is_zero(e[p]):
        raise ValueError("matrix is zero, not rank one")
    alpha = [A[p][k] / e[p] for k in range(m)]
    return e, alpha


def reflection_tuple_from_matrices(mats):
    n = len(mats[0])
    es, als = [], []
    for r in mats:
        e, a = rank_one_factor(mat_sub(r, identity(n)))
        es.append(e)
        als.append(a)
    return ReflectionTuple(es, als)


def _elementary(u):
    """Matrices R_i = 1 + E_i u_i (row i of u) of the r_i in the e-basis."""
    n = len(u)
    out = []
    for i in range(n):
        R = identity(n, _one_like(u[0][0]))
        R = [[R[a][b] + (u[i][b] if a == i else 0) for b in range(n)] for a in range(n)]
        out.append(R)
    return out


@dataclass
class KillingFactorization:
    u_minus: list
    t2: list
    u_plus: list
    product: list
    direct: list
    certified: bool
    residual: object

    def as_dict(self):
        return {
            "u_minus": self.u_minus,
            "t2": self.t2,
            "u_plus": self.u_plus,
            "certified": self.certified,
            "residual": self.residual,
        }


def killing_factorize(u, tol=None):
    """Factor r_n...r_1 as u_minus^-1 t2 u_plus and certify against the direct product."""
    if not isinstance(u, UMatrix):
        u = UMatrix(u)
    a = u.product()
    R = _elementary(u.u)
    direct = chain(*reversed(R))
    exact = all(_exact(x) for row in u.u for x in row)
    if exact:
        ok = all(x == y for ra, rb in zip(a, direct) for x, y in zip(ra, rb))
        res = 0 if ok else max_abs_diff(a, direct)
    else:
        res = max_abs_diff(a, direct)
        scale = max(1, max(abs(as_mpc(x)) for row in direct for x in row))
        ok = res <= (default_tol() if tol is None else tol) * scale
    return KillingFactorization(u.u_minus, u.t2, u.u_plus, a, direct, bool(ok), res)


def bjl_shift(u, h):
    """u~ = h^2 t2 u_plus - u_minus: upper part times h^2, lower part fixed."""
    if not isinstance(u, UMatrix):
        u = UMatrix(u)
    if _is_zero(h):
        raise ValueError("h must be nonzero")
    h2 = h * h
    n, t2 = u.n, u.t2
    out = _copy(u.u)
    for i in range(n):
        out[i][i] = h2 * t2[i] - 1
        for j in range(i + 1, n):
            out[i][j] = h2 * u.u[i][j]
    return UMatrix(out)


def _check_index(i, n):
    if not (isinstance(i, int) and 1 <= i <= n - 1):
        raise ValueError(f"generator index must lie in 1..{n - 1}")


def braid_on_u(u, i):
    """Action of gamma_i on the pairing matrix."""
    if not isinstance(u, UMatrix):
        u = UMatrix(u)
    n = u.n
    _check_index(i, n)
    a, b = i - 1, i
    U = u.u
    t2 = 1 + U[a][a]
    if _is_zero(t2):
        raise DegenerateDiagonal("t_i^2 vanishes")
    V = _copy(U)
    V[a][a] = U[b][b]
    V[b][b] = U[a][a]
    V[a][b] = t2 * U[b][a]
    V[b][a] = U[a][b] / t2
    for j in range(n):
        if j in (a, b):
            continue
        V[a][j] = U[b][j] + U[b][a] * U[a][j]
        V[j][a] = U[j][b] - U[j][a] * U[a][b] / t2
        V[b][j] = U[a][j]
        V[j][b] = U[j][a]
    return UMatrix(V)


def braid_word_on_u(u, word):
    for g in word:
        u = braid_on_u(u, g)
    return u


def braid_on_tuple(rt, i):
    """Lifted action on (e, alpha): e_{i+1}' = e_i, e_i' = r_i^-1 e_{i+1}, alpha_i' = alpha_{i+1} r_i."""
    n = rt.n
    _check_index(i, n)
    a, b = i - 1, i
    e, al = [list(v) for v in rt.e], [list(v) for v in rt.alpha]
    ea, aa = e[a], al[a]
    t2 = 1 + _pairing(aa, ea)
    # r^-1 = 1 - e (x) alpha / t2
    c = _pairing(aa, e[b]) / t2
    new_ea = [x - c * y for x, y in zip(e[b], ea)]
    # alpha o r = alpha + alpha(e) alpha_a
    d = _pairing(al[b], ea)
    new_aa = [x + d * y for x, y in zip(al[b], aa)]
    e[b], al[b] = ea, aa
    e[a], al[a] = new_ea, new_aa
    return ReflectionTuple(e, al)


def ldu(a, tol=None):
    """a = L D U with L, U unipotent; NotInBigCell when a leading minor vanishes."""
    n = len(a)
    M = _copy(a)
    one = _one_like(a[0][0])
    zero = one - one
    L = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        if _is_zero(M[c][c], tol):
            raise NotInBigCell(f"leading minor {c + 1} vanishes")
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            L[r][c] = f
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    D = [M[i][i] for i in range(n)]
    U = [[M[i][j] / D[i] if j >= i else zero for j in range(n)] for i in range(n)]
    for i in range(n):
        U[i][i] = one
    return L, D, U


def u_from_bigcell(a, tol=None):
    """Inverse of UMatrix.product: recover u from a big-cell point."""
    L, D, U = ldu(a, tol)
    um = inverse(L)
    n = len(a)
    return UMatrix([[D[i] * U[i][j] - um[i][j] for j in range(n)] for i in range(n)])


def _swap(n, i, one):
    P = identity(n, one)
    P = [list(r) for r in P]
    a, b = i - 1, i
    P[a][a] = P[b][b] = one - one
    P[a][b] = P[b][a] = one
    return P


def braid_on_bigcell(a, i, tol=None):
    """gamma_i(a) = P_i xi_i(u_plus) a xi_i(u_plus)^-1 P_i."""
    n = len(a)
    _check_index(i, n)
    _, _, U = ldu(a, tol)
    one = _one_like(a[0][0])
    x = U[i - 1][i]
    xi = [list(r) for r in identity(n, one)]
    xi_inv = [list(r) for r in identity(n, one)]
    xi[i - 1][i] = x
    xi_inv[i - 1][i] = -x
    P = _swap(n, i, one)
    return chain(P, xi, a, xi_inv, P)


def reflections_from_u(u, tol=None):
    """r_i = 1 + e_i (x) gamma_i with gamma_i the i-th row of u (standard basis)."""
    if not isinstance(u, UMatrix):
        u = UMatrix(u)
    d = det(u.u)
    if _is_zero(d, tol):
        raise SingularU("det u vanishes; the tuple is not determined by u")
    return reflections_in_e_basis(u)


def reflections_in_e_basis(u):
    """The tuple written in its own e-basis; valid whether or not det u vanishes."""
    if not isinstance(u, UMatrix):
        u = UMatrix(u)
    n = u.n
    one = _one_like(u.u[0][0])
    zero = one - one
    es = [[one if k == i else zero for k in range(n)] for i in range(n)]
    return ReflectionTuple(es, [list(r) for r in u.u])


# ---------------------------------------------------------- semisimplify


def _threshold(A):
    scale = max(1, max(abs(as_mpc(x)) for row in A for x in row))
    return mpf(2) ** (-(mp.prec // 2)) * scale


def _half_angle_root(z):
    from .catalog import _half_angle_root as root

    return root(z)


def _smallest_singular(A):
    U, S, V = mp.svd_c(to_mp(A))
    k = min(range(len(S)), key=lambda j: S[j])
    return S[k], U, S, V, k


def semisimplify_to_sl2(rt, roots=None):
    """SL2 triple from the rank two part of a reducible reflection triple.

    ``roots`` are square roots t_i of det r_i (after the shift, so that the
    SL2 matrices are M_i = block_i / t_i); the half-angle roots are used when
    omitted.
    """
    if rt.n != 3:
        raise ValueError("semisimplification is defined for triples")
    rs = [to_numeric(r) for r in rt.matrices()]
    P = chain(rs[2], rs[1], rs[0])
    I3 = identity(3, mpc(1))
    smin = _smallest_singular(mat_sub(P, I3))[0]
    if smin > _threshold(P):
        raise NoUnitEigenvalue("1 is not an eigenvalue of r3 r2 r1")
    E = [[as_mpc(rt.e[j][i]) for j in range(3)] for i in range(3)]
    se, Ue, _, _, _ = _smallest_singular(E)
    if se <= _threshold(E):
        # span of the e_i is a two dimensional invariant subspace
        g = Ue
        top = True
    else:
        _, _, _, V, k = _smallest_singular(mat_sub(P, I3))
        v = [V[k, j].conjugate() for j in range(3)]
        others = [m for m in range(3) if m != k]
        cols = [v] + [[V[m, j].conjugate() for j in range(3)] for m in others]
        g = mp.matrix(3, 3)
        for c in range(3):
            for r in range(3):
                g[r, c] = cols[c][r]
        top = False
    gi = g.transpose_conj()
    blocks = []
    for r in rs:
        B = gi * to_mp(r) * g
        if top:
            off = max(fabs(B[2, 0]), fabs(B[2, 1]))
            blk = [[B[0, 0], B[0, 1]], [B[1, 0], B[1, 1]]]
        else:
            off = max(fabs(B[1, 0]), fabs(B[2, 0]))
            blk = [[B[1, 1], B[1, 2]], [B[2, 1], B[2, 2]]]
        if off > _threshold(r):
            raise IrreducibleError("no invariant structure shared by the r_i")
        blocks.append(blk)
    if roots is None:
        roots = [_half_angle_root(det(r)) for r in rs]
    roots = [as_mpc(t) for t in roots]
    Ms = [[[x / t for x in row] for row in blk] for blk, t in zip(blocks, roots)]
    return Sl2Triple(*Ms)
