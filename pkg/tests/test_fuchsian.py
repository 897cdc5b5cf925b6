from fractions import Fraction

import pytest
import sympy
from mpmath import arg, exp, mpc, mpf, pi

from _factories import close, rand_c, rng_for
from pviforge.char_variety import theta_from_lambda_mu
from pviforge.catalog import KLEIN_LAMBDA, KLEIN_MU
from pviforge.errors import (
    ConstantPolynomialError,
    DegenerateParameters,
    DependentImagesError,
    GaugeDegenerateError,
    SingularPointError,
)
from pviforge.fuchsian import (
    FuchsianSystem3,
    assemble_B,
    b_traces_from_B,
    b_traces_from_jm,
    jm_from_xy,
    klein_corollary_system,
    numeric_monodromy,
    scalar_shift_residues,
    x_from_y,
    y_from_B,
)
from pviforge.numerics.linalg import chain, charpoly3, det, eigenvalues, inverse, mat_add, mat_mul, outer, trace

F = Fraction
THETA = theta_from_lambda_mu(KLEIN_LAMBDA, KLEIN_MU)
S0 = F(5, 4)
T0, Y0 = F(121, 125), F(11, 9)
KLEIN_TRACES = (F(3, 224), F(5, 176), F(249, 2464), F(21, 1408))


def _klein_yprime():
    # dy/dt = (dy/ds) / (dt/ds), differentiated symbolically
    s = sympy.symbols("s")
    y = -(5 * s**2 - 8 * s + 5) * (7 * s**2 - 7 * s + 4) / (s * (s - 2) * (s + 1) * (2 * s - 1) * (4 * s**2 - 7 * s + 7))
    t = (7 * s**2 - 7 * s + 4) ** 2 / (s**3 * (4 * s**2 - 7 * s + 7) ** 2)
    val = (sympy.diff(y, s) / sympy.diff(t, s)).subs(s, sympy.Rational(5, 4))
    val = sympy.nsimplify(val)
    return F(int(val.p), int(val.q))


def _diag(*d):
    return [[F(d[i]) if i == j else F(0) for j in range(3)] for i in range(3)]


def _conj(D, M):
    return chain(inverse(D), M, D)


# ------------------------------------------------------------- rank two


def test_theta_of_klein():
    assert THETA == (F(2, 7), F(2, 7), F(2, 7), F(4, 7))


def test_x_at_anchor():
    yp = _klein_yprime()
    th1, th2, th3, _ = THETA
    want = (T0 * (T0 - 1) * yp / (Y0 * (Y0 - 1) * (Y0 - T0)) - th1 / Y0 - th3 / (Y0 - 1) - (th2 + 1) / (Y0 - T0)) / 2
    assert x_from_y(Y0, yp, T0, THETA) == want == F(-2439, 1144)


def test_x_is_affine_in_yprime():
    a = x_from_y(Y0, 0, T0, THETA)
    b = x_from_y(Y0, 1, T0, THETA)
    c = x_from_y(Y0, 3, T0, THETA)
    assert c - a == 3 * (b - a)


@pytest.mark.parametrize("y", [0, 1, F(121, 125)])
def test_x_singular_points(y):
    with pytest.raises(SingularPointError):
        x_from_y(y, 1, T0, THETA)


def test_jm_constraints_exact():
    x = x_from_y(Y0, _klein_yprime(), T0, THETA)
    jm = jm_from_xy(x, Y0, T0, THETA)
    assert jm.constraint_residuals() == (0, 0, 0, 0)
    assert jm.y() == Y0
    assert jm.x() == x


def test_jm_residue_spectra():
    jm = jm_from_xy(F(-2439, 1144), Y0, T0, THETA)
    for A, th in zip(jm.residues(), THETA):
        assert trace(A) == th and det(A) == 0


@pytest.mark.parametrize("seed", range(5))
def test_jm_roundtrip_random_exact(seed):
    rng = rng_for(seed)
    r = lambda: F(rng.randint(-9, 9), rng.randint(1, 9))  # noqa: E731
    theta = (r(), r(), r(), F(rng.randint(1, 9), rng.randint(2, 9)))
    x, y, t = r(), F(rng.randint(2, 9), rng.randint(11, 19)) + 2, F(-3, 7)
    try:
        jm = jm_from_xy(x, y, t, theta)
    except DegenerateParameters:
        pytest.skip("degenerate draw")
    assert jm.constraint_residuals() == (0, 0, 0, 0)
    assert (jm.x(), jm.y()) == (x, y)


def test_jm_degenerate_parameters():
    with pytest.raises(DegenerateParameters):
        jm_from_xy(1, Y0, T0, (F(1, 3), F(1, 3), F(1, 3), 0))
    with pytest.raises(DegenerateParameters):
        jm_from_xy(1, Y0, 1, THETA)


def test_b_traces_klein():
    jm = jm_from_xy(F(-2439, 1144), Y0, T0, THETA)
    assert b_traces_from_jm(jm) == KLEIN_TRACES


def test_b_traces_gauge_invariant():
    jm = jm_from_xy(F(-2439, 1144), Y0, T0, THETA)
    D = [[F(3), F(0)], [F(0), F(-2, 5)]]
    Di = [[F(1, 3), F(0)], [F(0), F(-5, 2)]]
    A = [chain(Di, M, D) for M in jm.residues()]
    got = (trace(mat_mul(A[0], A[1])), trace(mat_mul(A[1], A[2])), trace(mat_mul(A[0], A[2])), trace(chain(A[2], A[1], A[0])))
    assert got == KLEIN_TRACES


# ----------------------------------------------------------- rank three


def test_assemble_reproduces_klein_rows():
    sysB = klein_corollary_system()
    B1, B2, B3 = sysB.B
    assert B1[0] == [F(1, 2), F(3, 224), F(21, 1408)]
    assert B2[1] == [1, F(1, 2), F(5, 176)]
    assert B3[2] == [F(332, 49), 1, F(1, 2)]
    assert all(B[i] == [0, 0, 0] for k, B in enumerate(sysB.B) for i in range(3) if i != k)


def test_assemble_trace_transfer():
    sysB = klein_corollary_system()
    assert b_traces_from_B(sysB) == KLEIN_TRACES
    for B in sysB.B:
        c0, c1, c2, _ = charpoly3(B)
        # rank one with trace 1/2: l^3 - l^2/2
        assert (c0, c1, c2) == (0, 0, F(-1, 2))


def test_assemble_generic_traces():
    tr = (F(2, 3), F(-1, 5), F(7, 4), F(3, 11))
    sysB = assemble_B(tr, (F(1), F(-2), F(1, 3)))
    assert b_traces_from_B(sysB) == tr
    assert [trace(B) for B in sysB.B] == [1, -2, F(1, 3)]


def test_assemble_gauge_degenerate():
    with pytest.raises(GaugeDegenerateError):
        assemble_B((F(1), F(1), F(1), F(0)), KLEIN_LAMBDA)


def test_klein_total_spectrum():
    S = klein_corollary_system().total()
    c0, c1, c2, _ = charpoly3(S)
    m = KLEIN_MU
    assert (c0, c1, c2) == (-m[0] * m[1] * m[2], m[0] * m[1] + m[1] * m[2] + m[0] * m[2], -sum(m))


# ---------------------------------------------------------- scalar shift


def _random_rank_one_system(seed, t=mpf("0.4")):
    rng = rng_for(seed)
    return FuchsianSystem3(tuple(outer([rand_c(rng, 0.4) for _ in range(3)], [rand_c(rng, 0.4) for _ in range(3)]) for _ in range(3)), t)


def test_scalar_shift_zero_is_identity():
    sysB = klein_corollary_system()
    assert scalar_shift_residues(sysB, 0) is sysB


def test_scalar_shift_exact_klein():
    sysB = klein_corollary_system()
    sh = scalar_shift_residues(sysB, F(1, 7))
    assert sh.lam == tuple(l + F(1, 7) for l in sysB.lam)
    assert sh.mu == tuple(m + F(1, 7) for m in sysB.mu)
    assert [trace(B) for B in sh.B] == [F(9, 14)] * 3
    total = mat_add(sysB.total(), _diag(F(1, 7), F(1, 7), F(1, 7)))
    assert sh.total() == total


def test_scalar_shift_spectra_random():
    sysB = _random_rank_one_system(3)
    lam = mpc("0.3", "-0.2")
    sh = scalar_shift_residues(sysB, lam)
    for B, C in zip(sysB.B, sh.B):
        assert close(trace(C), trace(B) + lam, mpf(2) ** -180)
        ev = sorted(eigenvalues(C), key=abs)
        assert abs(ev[0]) < mpf(2) ** -100 and abs(ev[1]) < mpf(2) ** -100
    before = eigenvalues(sysB.total())
    after = eigenvalues(sh.total())
    for e in before:
        assert min(abs(e + lam - f) for f in after) < mpf(2) ** -150


@pytest.mark.parametrize("seed", range(6))
def test_y_from_B_invariant_under_shift(seed):
    rng = rng_for(100 + seed)
    base = _random_rank_one_system(seed, t=rand_c(rng, 0.4) + mpf("0.5"))
    sysB = FuchsianSystem3(base.B, base.t, mu=tuple(eigenvalues(base.total())))
    lam = rand_c(rng)
    assert close(y_from_B(sysB), y_from_B(scalar_shift_residues(sysB, lam)), mpf(2) ** -150)


def test_scalar_shift_dependent_images():
    e = [F(1), F(0), F(0)]
    sysB = FuchsianSystem3(tuple(outer(e, [F(k), F(1), F(0)]) for k in (1, 2, 3)), F(1, 2))
    with pytest.raises(DependentImagesError):
        scalar_shift_residues(sysB, F(1, 3))


# ------------------------------------------------------------- back to y


def test_y_from_klein_system():
    assert y_from_B(klein_corollary_system()) == Y0


def test_y_from_B_diagonal_gauge():
    sysB = klein_corollary_system()
    D = _diag(2, F(-1, 3), 5)
    conj = FuchsianSystem3(tuple(_conj(D, B) for B in sysB.B), sysB.t, sysB.lam, sysB.mu)
    assert y_from_B(conj) == Y0


def test_y_from_B_needs_three_eigenvalues():
    with pytest.raises(ValueError):
        y_from_B(FuchsianSystem3(klein_corollary_system().B, T0))


def test_y_from_B_constant_polynomial():
    sysB = FuchsianSystem3((_diag(1, 0, 0), _diag(0, 2, 0), _diag(0, 0, 3)), F(1, 3), mu=(1, 2, 3))
    with pytest.raises(ConstantPolynomialError):
        y_from_B(sysB)
    zero = FuchsianSystem3((_diag(0, 0, 0),) * 3, F(1, 3), mu=(0, 0, 0))
    with pytest.raises(ConstantPolynomialError):
        y_from_B(zero)


# -------------------------------------------------------- numeric monodromy


def test_monodromy_abelian_case():
    z = F(0)
    sysB = FuchsianSystem3((_diag(F(1, 3), 0, 0), _diag(z, z, z), _diag(z, z, z)), F(1, 2))
    rep = numeric_monodromy(sysB)
    r1, r2, r3 = rep.r
    want = exp(2j * pi / 3)
    tol = mpf(10) ** -18
    for i in range(3):
        for j in range(3):
            assert abs(r1[i][j] - (want if i == j == 0 else (1 if i == j else 0))) < tol
            assert abs(r2[i][j] - (1 if i == j else 0)) < tol
            assert abs(r3[i][j] - (1 if i == j else 0)) < tol


def test_monodromy_base_point_and_product():
    sysB = _random_rank_one_system(1)
    a = numeric_monodromy(sysB, base=-1)
    b = numeric_monodromy(sysB, base=-2)
    tol = mpf(10) ** -15
    for x, y in zip(a.traces + a.dets, b.traces + b.dets):
        assert abs(x - y) < tol
    for k in a.pair_traces:
        assert abs(a.pair_traces[k] - b.pair_traces[k]) < tol
    # the product around all poles has eigenvalues exp(2 pi i mu)
    for e in eigenvalues(sysB.total()):
        assert min(abs(exp(2j * pi * e) - p) for p in a.product_eigenvalues) < tol


def test_klein_monodromy_traces(corollary_monodromy):
    rep = corollary_monodromy.value
    tol = mpf(10) ** -15
    assert all(abs(x - 1) < tol for x in rep.traces)
    assert all(abs(x + 1) < tol for x in rep.dets)
    want = [exp(2j * pi * F(k, 14)) for k in (3, 5, 13)]
    for w in want:
        assert min(abs(e - w) for e in rep.product_eigenvalues) < tol
    args = sorted(float(arg(e) % (2 * pi) / (2 * pi) * 14) for e in rep.product_eigenvalues)
    assert [round(a) for a in args] == [3, 5, 13]


def test_klein_monodromy_pair_traces(corollary_monodromy):
    rep = corollary_monodromy.value
    tol = mpf(10) ** -15
    got = tuple(rep.pair_traces[k] for k in ("12", "23", "13"))
    assert all(abs(g - w) < tol for g, w in zip(got, (0, 0, 1)))
    from pviforge.fuchsian import monodromy_report
    from pviforge.char_variety import Sl2Triple, braid_triple

    T = braid_triple(Sl2Triple(*rep.r), (1, -2))
    moved = monodromy_report((T.M1, T.M2, T.M3), (1, -2))
    got = tuple(moved.pair_traces[k] for k in ("12", "23", "13"))
    assert all(abs(g - w) < tol for g, w in zip(got, (1, 1, 0)))
