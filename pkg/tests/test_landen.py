import random

import pytest
from gmpy2 import mpq

from expected_values import REF_ELL, REF_P2, REF_P3, REF_T_FIXED
from orbitcert import landen as L
from orbitcert.arith import ctx


fc = ctx(60)


def test_g_map_fixed_point():
    a, b = L.g_map((3, 3))
    assert abs(a - 3) < fc.eps * 100 and abs(b - 3) < fc.eps * 100


def test_g_map_forbidden_line():
    with pytest.raises(L.OnForbiddenLine):
        L.g_map((mpq(-1), mpq(-1)))
    with pytest.raises(L.OnForbiddenLine):
        L.g_map((mpq(5), mpq(-7)))


def test_landen5_step_at_3_3():
    c, d, e = fc.mpf("1.25"), fc.mpf("-0.5"), fc.mpf(2)
    a2, b2, c2, d2, e2 = L.landen5_step((3, 3, c, d, e))
    assert abs(a2 - 3) < fc.eps * 100 and abs(b2 - 3) < fc.eps * 100
    assert abs(c2 - (d + e + c) / 4) < fc.eps * 100
    assert abs(d2 - (6 * c + 6 * e + 2 * d) / 8) < fc.eps * 100
    assert abs(e2 - (c + e) / 2) < fc.eps * 100


def test_landen5_projects_to_g():
    rng = random.Random(3)
    for _ in range(5):
        s = tuple(3 + rng.uniform(-1, 1) for _ in range(2)) + tuple(
            rng.uniform(-2, 2) for _ in range(3)
        )
        full = L.landen5_step(s)
        g = L.g_map(s[:2])
        assert abs(full[0] - g[0]) < fc.eps * 100
        assert abs(full[1] - g[1]) < fc.eps * 100


def test_resolvent_values():
    assert L.resolvent(mpq(3), mpq(3)) == 0  # the cusp
    assert L.resolvent(mpq(0), mpq(0)) == 27


def test_resolvent_invariance_identity_sampled():
    rng = random.Random(11)
    for _ in range(20):
        a = fc.mpf(rng.uniform(-10, 10))
        b = fc.mpf(rng.uniform(-10, 10))
        if abs(a + b + 2) < 0.1:
            continue
        lhs = L.resolvent(*L.g_map((a, b)))
        rhs = (a - b) ** 2 / (a + b + 2) ** 4 * L.resolvent(a, b)
        scale = max(abs(lhs), abs(rhs), fc.mpf(1))
        assert abs(lhs - rhs) / scale < fc.mpf(10) ** -40


def test_fixed_points_match_reference():
    recs = L.fixed_points(60)
    assert [r.name for r in recs] == ["P1", "P2", "P3"]
    p1, p2, p3 = recs
    assert p1.classification == "super-attractor"
    assert abs(p1.point[0] - 3) < fc.eps * 100 and abs(p1.point[1] - 3) < fc.eps * 100
    assert max(abs(e) for e in p1.eigenvalues) < fc.mpf(10) ** -40
    assert p2.classification == "saddle"
    assert abs(p2.point[0] - fc.mpf(REF_P2[0])) < 1e-5
    assert abs(p2.point[1] - fc.mpf(REF_P2[1])) < 1e-5
    assert p3.classification == "unstable focus"
    assert abs(p3.point[0] - fc.mpf(REF_P3[0])) < 1e-5
    assert abs(p3.point[1] - fc.mpf(REF_P3[1])) < 1e-5


def test_fixed_param_poly_factorization():
    # the parameter polynomial factors as
    # -(m-2)(m^2-m+1)(m^2+m+2)(m^3+m^2-m-2)(m^3+m^2+m+2)
    from orbitcert.upoly import UPoly

    d4 = L.fixed_param_poly()
    prod = (
        UPoly((-2, 1))
        * UPoly((1, -1, 1))
        * UPoly((2, 1, 1))
        * UPoly((-2, -1, 1, 1))
        * UPoly((2, 1, 1, 1))
    )
    assert d4 == -1 * prod
    assert d4.eval(2) == 0
    # chain variation difference over R is 3 (three real roots)
    from orbitcert.upoly import count_roots_total, sturm_sequence

    chain = sturm_sequence(d4)
    assert chain[-1].degree() == 0
    assert count_roots_total(d4) == 3


def test_fixed_param_even_evaluation():
    # exact evaluation agrees with expanded-form summation
    d4 = L.fixed_param_poly()
    x = mpq(1)
    assert d4.eval(x) == sum(c * x**k for k, c in enumerate(d4.coeffs))


def test_param_to_ab():
    assert L.param_to_ab(2, 2) == (3, 3)
    assert L.param_to_ab(1, 1) == (-6, 5)
    with pytest.raises(L.ZeroInR):
        L.param_to_ab(1, 0)


def test_integral_closed_form_at_3_3():
    for (c, d, e) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 3)]:
        v = L.integral_I((3, 3, c, d, e), tol=fc.mpf("1e-12"))
        want = (3 * c + d + 3 * e) * fc.mp.pi / 16
        assert abs(v - want) < fc.mpf("1e-9")


def test_integral_divergence():
    with pytest.raises(L.DivergentIntegral):
        L.integral_I((-10, 1, 1, 1, 1))


def test_integral_invariance_sampled():
    rng = random.Random(20260808)
    tol = fc.mpf("1e-9")
    for _ in range(3):
        s = (
            3 + rng.uniform(-1, 1),
            3 + rng.uniform(-1, 1),
            rng.uniform(-2, 2),
            rng.uniform(-2, 2),
            rng.uniform(-2, 2),
        )
        i0 = L.integral_I(s, tol=tol)
        i1 = L.integral_I(L.landen5_step(s), tol=tol)
        assert abs(i0 - i1) < 10 * tol


def test_classify_stable_set():
    assert L.classify_stable_set((3.1, 2.9)).kind == "ConvergesToP1"
    res = L.classify_stable_set(L.param_P(mpq(-10)))
    assert res.kind == "ConvergesToP2"
    res2 = L.classify_stable_set((mpq(-1), mpq(-1)))
    assert res2.kind == "HitsForbiddenLine" and res2.steps == 0


def test_param_P_and_inverse_roundtrip():
    rng = random.Random(5)
    for _ in range(10):
        t = fc.mpf(-rng.uniform(0.1, 20))
        if abs(t + 2) < 0.05:
            continue
        p = L.param_P(t)
        assert abs(L.param_P_inverse(p) - t) < fc.mpf(10) ** -40
    assert L.resolvent(*L.param_P(mpq(-7))) == 0  # parametrizes the curve
    with pytest.raises(L.DomainExcluded):
        L.param_P(mpq(0))


def test_one_dim_conjugacy():
    rng = random.Random(7)
    checked = 0
    while checked < 20:
        t = fc.mpf(-rng.uniform(0.05, 30))
        if abs(t + 2) < 0.05:
            continue
        lhs = L.g_one_dim(t)
        rhs = L.param_P_inverse(L.g_map(L.param_P(t)))
        assert abs(lhs - rhs) < fc.mpf(10) ** -40
        checked += 1
    with pytest.raises(L.DomainExcluded):
        L.g_one_dim(-2)


def test_one_dim_fixed_point_and_critical_values():
    p = L.g_fixed_point_t()
    assert str(fc.mp.nstr(p, 5)) == REF_T_FIXED
    assert abs(L.g_one_dim(p) - p) < fc.mpf(10) ** -40
    s3 = fc.mp.sqrt(3)
    assert abs(L.g_one_dim(-4 - 2 * s3) + 4) < fc.mpf(10) ** -40
    assert abs(L.g_one_dim(-4 + 2 * s3) + 4) < fc.mpf(10) ** -40


def test_interval_dynamics_report():
    rep = L.verify_interval_dynamics()
    assert rep.g_at_max_points_is_minus4
    assert rep.ell1_is_minus4
    assert rep.invariant_interval_ok
    assert rep.monotone_decreasing_on_interval
    assert rep.sequences_converge_to_p
    assert rep.g_above_identity_left_of_p
    assert abs(fc.mpf(rep.ell) - fc.mpf(REF_ELL)) < 1e-4


def test_system_polynomials_reference_values():
    d10, d11, d12 = L.system_period3()
    assert d10.eval_rat([2, 2, 2]) == 0
    assert d10.eval_rat([2, 2, -1]) == 0
    assert d11.eval_rat([2, 2, -1]) == 2304
    assert d10.shift(30).num_terms() == 110  # exponent box caps this at 168


def test_d10_consistent_with_map_composition():
    # substituting the parametrized (a..f) into the step equation must
    # reproduce d10 up to the m^2 r^4 denominator clearing
    rng = random.Random(13)
    d10, _, _ = L.system_period3()
    for _ in range(10):
        m, n, r = (mpq(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(3))
        a = (m**3 * r**2 - r**3 - 2 * r**2 - 4) / r**2
        b = (r**3 + 4) / r**2
        c = (m**2 * n**3 - m**3 - 2 * m**2 - 4) / m**2
        residual = -c * m**4 + a * b + 5 * a + 5 * b + 9
        assert residual * r**4 == d10.eval_rat([m, n, r])
