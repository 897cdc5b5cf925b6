"""Small dense matrix helpers on nested lists.

Entries may be Fractions (exact work) or mpmath numbers; pivoting picks the
entry of largest modulus so the same code serves both.
"""
from fractions import Fraction

from mpmath import eig, matrix, mpc

from .precision import as_mpc


def zeros(n, m=None):
    m = n if m is None else m
    return [[0] * m for _ in range(n)]


def identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum((A[i][l] * B[l][j] for l in range(k)), 0) for j in range(m)] for i in range(n)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def trace(A):
    return sum((A[i][i] for i in range(len(A))), 0)


def outer(u, v):
    return [[a * b for b in v] for a in u]


def chain(*mats):
    out = mats[0]
    for M in mats[1:]:
        out = mat_mul(out, M)
    return out


def _is_zero(x, tol):
    return x == 0 if tol == 0 else abs(x) <= tol


def row_reduce(A, tol=0):
    """Reduced row echelon form; returns (R, pivot columns)."""
    R = [list(r) for r in A]
    n, m = len(R), len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(m):
        if r >= n:
            break
        p = max(range(r, n), key=lambda i: abs(R[i][c]))
        if _is_zero(R[p][c], tol):
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [x / piv for x in R[r]]
        for i in range(n):
            if i != r and not _is_zero(R[i][c], 0):
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, tol=0):
    return len(row_reduce(A, tol)[1])


def nullspace(A, tol=0):
    """Basis of the right kernel."""
    m = len(A[0])
    R, pivots = row_reduce(A, tol)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    one = Fraction(1) if tol == 0 else mpc(1)
    for f in free:
        v = [0] * m
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def det(A):
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        p = max(range(c, n), key=lambda i: abs(M[i][c]))
        if M[p][c] == 0:
            return 0 * d
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f != 0:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(A, b):
    return mat_vec(inverse(A), b)


def to_mp(A):
    M = matrix(len(A), len(A[0]))
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            M[i, j] = as_mpc(v)
    return M


def from_mp(M):
    return [[M[i, j] for j in range(M.cols)] for i in range(M.rows)]


def to_numeric(A):
    return [[as_mpc(v) for v in row] for row in A]


def eigenvalues(A):
    ev = eig(to_mp(A), left=False, right=False)
    return list(ev)


def charpoly3(A):
    """Coefficients (c0, c1, c2, 1) of det(x - A) for a 3x3 matrix."""
    tr = trace(A)
    A2 = mat_mul(A, A)
    half = Fraction(1, 2) if isinstance(tr, (int, Fraction)) else 0.5
    c1 = (tr * tr - trace(A2)) * half
    return (-det(A), c1, -tr, 1)


def max_abs_diff(A, B):
    return max(abs(as_mpc(a) - as_mpc(b)) for ra, rb in zip(A, B) for a, b in zip(ra, rb))
