from fractions import Fraction

import pytest
from mpmath import cos, exp, mpc, mpf, pi, sqrt

from _factories import close, data_close, random_reflection_data, random_trace_data, random_triple, rng_for
from pviforge.catalog import klein_generators, klein_reflection_data, klein_su2_triple
from pviforge.char_variety import (
    Sl2Triple,
    TraceData2,
    ReflectionData3,
    braid2_apply,
    braid3_apply,
    braid_triple,
    cstar_scale,
    enumerate_orbit,
    fricke3_residual,
    fricke_residual,
    lambda_mu_defect,
    phi,
    pvi_params_from_theta,
    sigma_variant,
    theta_from_lambda_mu,
    trace_m123,
    traces_from_triple,
    triple_from_traces,
)
from pviforge.errors import DivisionByZero, OrbitOverflow, ReducibleDataError, SignConstraintError
from pviforge.numerics.linalg import chain, inverse, mat_mul, to_numeric, trace

TIGHT = mpf(2) ** -200


def c7():
    return 2 * cos(2 * pi / 7)


def identity_data():
    return TraceData2(2, 2, 2, 2, 2, 2, 2)


def diag_i_data():
    return TraceData2(0, 0, 0, -2, -2, -2, 0)


# ------------------------------------------------------------- Fricke


def test_fricke_trivial_examples():
    assert fricke_residual(identity_data()) == 0
    assert fricke_residual(diag_i_data()) == 0


def test_fricke_klein_branch0_from_matrices():
    d = traces_from_triple(klein_su2_triple())
    assert abs(fricke_residual(d)) < TIGHT
    assert close(d.m1, c7()) and close(d.m2, c7()) and close(d.m3, c7())
    assert close(d.m321, 2 * cos(4 * pi / 7))
    assert all(abs(q) < TIGHT for q in d.quadratics)


def test_trace_m123():
    assert trace_m123(identity_data()) == 2
    assert trace_m123(diag_i_data()) == 0
    T = random_triple(rng_for(3))
    direct = trace(chain(T.M1, T.M2, T.M3))
    assert close(trace_m123(traces_from_triple(T)), direct)


def test_traces_from_identity_triple():
    one = [[1, 0], [0, 1]]
    d = traces_from_triple(Sl2Triple(one, one, one))
    assert d.as_tuple() == (2,) * 7


# ---------------------------------------------------------- SL2 braids


def test_klein_beta1_squared_on_branch0():
    d = TraceData2(c7(), c7(), c7(), 0, 0, 0, 2 * cos(4 * pi / 7))
    out = braid2_apply(d, [1, 1])
    assert close(out.m12, 1) and close(out.m23, 0) and close(out.m13, 1)


def test_braid2_group_action():
    d = random_trace_data(rng_for(1))
    assert braid2_apply(d, []) == d
    for w in ([1, -1], [-1, 1], [2, -2], [-2, 2]):
        assert data_close(braid2_apply(d, w), d)


def test_braid2_relation():
    d = random_trace_data(rng_for(2))
    assert data_close(braid2_apply(d, [1, 2, 1]), braid2_apply(d, [2, 1, 2]))


def test_braid2_matches_matrix_moves():
    T = random_triple(rng_for(4))
    for w in ([1], [2], [-1], [-2], [1, 2, -1, 2]):
        lhs = braid2_apply(traces_from_triple(T), w)
        rhs = traces_from_triple(braid_triple(T, w))
        assert data_close(lhs, rhs, mpf(2) ** -180)


def test_braid2_rejects_unknown_generator():
    with pytest.raises(ValueError):
        braid2_apply(identity_data(), [3])


# --------------------------------------------------- reflection braids


def _klein_numeric():
    return [to_numeric(r) for r in klein_generators().matrices()]


def test_klein_reflection_pair_traces():
    d = klein_reflection_data()
    assert close(d.t12, 0) and close(d.t23, 0) and close(d.t13, -1)
    assert abs(fricke3_residual(d)) < TIGHT


def test_braid3_klein_beta1_matches_conjugation():
    r1, r2, r3 = _klein_numeric()
    # beta_1 sends (r3, r2) to (r2, r2^-1 r3 r2)
    r3b, r2b = r2, chain(inverse(r2), r3, r2)
    d = braid3_apply(klein_reflection_data(), [1])
    assert close(d.t12, trace(mat_mul(r1, r2b)) - 1)
    assert close(d.t23, trace(mat_mul(r2b, r3b)) - 1)
    assert close(d.t13, trace(mat_mul(r1, r3b)) - 1)


def test_braid3_inverse_and_relation():
    d = random_reflection_data(rng_for(5))
    assert data_close(braid3_apply(d, [1, -1]), d)
    assert data_close(braid3_apply(d, [-2, 2]), d)
    assert data_close(braid3_apply(d, [1, 2, 1]), braid3_apply(d, [2, 1, 2]))


def test_braid3_division_by_zero():
    d = ReflectionData3(1, 0, 1, 1, 1, 0, 1, 1, 1)
    with pytest.raises(DivisionByZero):
        braid3_apply(d, [1])


def test_fricke3_negative_control():
    d = random_reflection_data(rng_for(6))
    assert abs(fricke3_residual(d)) < mpf(2) ** -180
    broken = ReflectionData3(d.t1, d.t2, d.t3, d.n1, d.n2, 2 * d.n3, d.t12, d.t23, d.t13)
    assert abs(fricke3_residual(broken)) > mpf(10) ** -6


# ----------------------------------------------------------------- phi


def test_phi_klein():
    m = phi(klein_reflection_data())
    assert close(m.m1, c7()) and close(m.m2, c7()) and close(m.m3, c7())
    assert close(m.m321, 2 * cos(4 * pi / 7))
    assert close(m.m12, 0) and close(m.m23, 0) and close(m.m13, 1)


def test_phi_all_ones():
    m = phi(ReflectionData3(1, 1, 1, 1, 1, 1, 1, 1, 1))
    assert m.as_tuple() == (2, 2, 2, 1, 1, 1, 2)


def test_phi_dm_data():
    x = (mpf("0.7"), mpf("1.3"), mpf("-0.4"))
    mu = mpf("0.21")
    i = mpc(0, 1)
    e = exp(i * pi * mu)
    t = lambda v: v * v - 2  # noqa: E731
    d = ReflectionData3(i, i, i, i, i * e, i / e, t(x[0]), t(x[1]), t(x[2]))
    m = phi(d)
    assert close(m.m1, 2) and close(m.m2, 2) and close(m.m3, 2)
    assert close(m.m12, 2 - x[0] ** 2) and close(m.m23, 2 - x[1] ** 2) and close(m.m13, 2 - x[2] ** 2)
    assert close(m.m321, 2 * cos(2 * pi * mu))


def test_phi_division_by_zero():
    with pytest.raises(DivisionByZero):
        phi(ReflectionData3(1, 1, 1, 0, 1, 1, 1, 1, 1))


def test_phi_quadratics_ignore_n():
    d = random_reflection_data(rng_for(7))
    e = ReflectionData3(d.t1, d.t2, d.t3, 3 * d.n1, d.n2 / 5, d.n3 + 1, d.t12, d.t23, d.t13)
    assert phi(d).quadratics == phi(e).quadratics


# ---------------------------------------------------------- C* and sigma


def test_cstar_identity_and_normalization():
    d = klein_reflection_data()
    assert cstar_scale(d, 1) == d
    assert close(cstar_scale(d, 1 / d.n1).n1, 1)
    assert data_close(phi(cstar_scale(d, mpc(0.3, 1.7))), phi(d))
    with pytest.raises(ValueError):
        cstar_scale(d, 0)


def test_sigma_trivial_and_sign_check():
    d = random_reflection_data(rng_for(8))
    assert sigma_variant(d) == d
    with pytest.raises(SignConstraintError):
        sigma_variant(d, eps=(-1, 1, 1))
    with pytest.raises(ValueError):
        sigma_variant(d, perm=(0, 0, 1))


def test_sigma_dm_swap_gives_equal_local_traces():
    from pviforge.catalog import dm_m, dm_reflection_data

    x = (mpf("0.7"), mpf("1.3"), mpf("-0.4"))
    d = dm_reflection_data(*x)
    s = sigma_variant(d, perm=(1, 0, 2), eps=(1, 1, 1), delta=(1, 1, 1))
    m = phi(s)
    vals = (m.m1, m.m2, m.m3, m.m321)
    assert all(close(v, vals[0]) for v in vals)
    # +-2 cos(pi mu), where -exp(2 pi i mu) is an eigenvalue of r3 r2 r1
    M = mpc(dm_m(*x))
    e = sqrt((M + sqrt(M * M - 4)) / 2)
    w = e + 1 / e
    assert close(vals[0], w, mpf(2) ** -180) or close(vals[0], -w, mpf(2) ** -180)


def test_sigma_orbits_isomorphic():
    from pviforge.catalog import simultaneous_conjugator

    d = klein_reflection_data()
    s = sigma_variant(d, perm=(0, 2, 1), eps=(-1, -1, 1), delta=(1, 1, 1))
    o1 = enumerate_orbit(phi(d))
    o2 = enumerate_orbit(phi(s))
    assert len(o1) == len(o2)
    assert simultaneous_conjugator((o1.perm_b1sq, o1.perm_b2sq), (o2.perm_b1sq, o2.perm_b2sq)) is not None


# --------------------------------------------------------------- orbits


KLEIN_TABLE = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0)]


def _binary(d):
    return tuple(int(round(float(q.real))) for q in d.quadratics)


def test_klein_orbit_values_and_permutations():
    from pviforge.catalog import cycle_notation

    orbit = enumerate_orbit(phi(klein_reflection_data()), action="P3")
    assert len(orbit) == 7
    labels = [_binary(d) for d in orbit.elements]
    for d, lab in zip(orbit.elements, labels):
        assert all(close(q, v) for q, v in zip(d.quadratics, lab))
    assert sorted(labels) == KLEIN_TABLE
    idx = [KLEIN_TABLE.index(lab) for lab in labels]
    relabel = lambda p: tuple(idx[p[idx.index(k)]] for k in range(7))  # noqa: E731
    assert cycle_notation(relabel(orbit.perm_b1sq)) == "(05)(14)(236)"
    assert cycle_notation(relabel(orbit.perm_b2sq)) == "(03)(12)(465)"


def test_klein_full_braid_orbit_also_seven():
    assert len(enumerate_orbit(phi(klein_reflection_data()), action="B3")) == 7


def test_orbit_permutations_are_consistent():
    orbit = enumerate_orbit(phi(klein_reflection_data()))
    for perm, w in ((orbit.perm_b1sq, (1, 1)), (orbit.perm_b2sq, (2, 2))):
        assert sorted(perm) == list(range(7))
        for i, d in enumerate(orbit.elements):
            assert data_close(braid2_apply(d, w), orbit.elements[perm[i]], mpf(2) ** -120)


def test_identity_orbit_is_a_point():
    assert len(enumerate_orbit(identity_data())) == 1


def test_orbit_overflow_and_bad_arguments():
    with pytest.raises(OrbitOverflow):
        enumerate_orbit(phi(klein_reflection_data()), max_size=3)
    with pytest.raises(ValueError):
        enumerate_orbit(identity_data(), max_size=0)
    with pytest.raises(ValueError):
        enumerate_orbit(identity_data(), action="X")


def test_reflection_orbit_matches_sl2_orbit_size():
    assert len(enumerate_orbit(klein_reflection_data())) == 7


# ---------------------------------------------------- triple_from_traces


def test_triple_from_klein_branch0():
    d = traces_from_triple(klein_su2_triple())
    T = triple_from_traces(d)
    assert T.M1[0][1] == 0 and T.M1[1][0] == 0
    assert T.M1[0][0].imag >= 0
    assert data_close(traces_from_triple(T), d, mpf(2) ** -150)


def test_triple_from_random_roundtrip():
    for seed in range(5):
        d = random_trace_data(rng_for(100 + seed))
        assert data_close(traces_from_triple(triple_from_traces(d)), d, mpf(2) ** -150)


def test_triple_from_reducible_data():
    with pytest.raises(ReducibleDataError):
        triple_from_traces(identity_data())


# ---------------------------------------------------------- parameters


def test_theta_from_lambda_mu():
    lam = (Fraction(1, 2),) * 3
    mu = (Fraction(3, 14), Fraction(5, 14), Fraction(13, 14))
    assert theta_from_lambda_mu(lam, mu) == (Fraction(2, 7),) * 3 + (Fraction(4, 7),)
    assert theta_from_lambda_mu((0, 0, 0), (0, 0, 0)) == (0, 0, 0, 0)
    assert lambda_mu_defect(lam, mu) == Fraction(0)


def test_theta_dm_unipotent_case():
    # lambda = 1/2 and mu_1 = 1/2 put theta_1 = theta_2 = theta_3 = 0, hence m_i = 2
    mu_hat = Fraction(1, 5)
    theta = theta_from_lambda_mu((Fraction(1, 2),) * 3, (Fraction(1, 2), (1 + mu_hat) / 2, (1 - mu_hat) / 2))
    assert theta[:3] == (0, 0, 0)
    assert all(close(2 * cos(pi * th), 2) for th in theta[:3])


def test_pvi_params_from_theta():
    assert pvi_params_from_theta((Fraction(2, 7),) * 3 + (Fraction(4, 7),)) == tuple(
        Fraction(v, 98) for v in (9, -4, 4, 45)
    )
    assert pvi_params_from_theta((0, 0, 0, 1)) == (0, 0, 0, Fraction(1, 2))
    assert pvi_params_from_theta((1, 1, 1, 1)) == (0, Fraction(-1, 2), Fraction(1, 2), 0)
