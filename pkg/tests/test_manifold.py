import random

import pytest

from expected_values import (
    REF_HOMOCLINIC_P,
    REF_HOMOCLINIC_PT,
    REF_LAMBDA1,
    REF_LAMBDA2,
    REF_Q1,
    REF_QM1,
    REF_R_PARAMS,
    REF_W,
)
from orbitcert import landen as L
from orbitcert import manifold as M
from orbitcert.arith import ctx

fc = ctx(60)


def test_jacobian_at_p1_is_zero():
    J = M.jacobian_G((3, 3))
    assert max(abs(J[i][j]) for i in range(2) for j in range(2)) < fc.mpf(10) ** -50


def test_jacobian_matches_finite_differences():
    a, b = fc.mpf("1.7"), fc.mpf("0.4")
    J = M.jacobian_G((a, b))
    h = fc.mpf(10) ** -35
    for j, delta in enumerate(((h, 0), (0, h))):
        gp = L.g_map((a + delta[0], b + delta[1]))
        gm = L.g_map((a - delta[0], b - delta[1]))
        for i in range(2):
            fd = (gp[i] - gm[i]) / (2 * h)
            assert abs(fd - J[i][j]) < fc.mpf(10) ** -25


def test_jacobian_forbidden_line():
    with pytest.raises(L.OnForbiddenLine):
        M.jacobian_G((-1, -1))


def test_eigen2_guards_and_diagonal_case():
    with pytest.raises(M.NotHyperbolicSaddle):
        M.eigen2([[1, 0], [0, 1]])
    E = M.eigen2([[2, 0], [0, 0.5]])
    assert abs(E.l1 - 2) < fc.eps and abs(E.l2 - fc.mpf("0.5")) < fc.eps
    assert E.L == [[1, 0], [0, 1]] or (E.L[0][0] == 1 and E.L[1][1] == 1)


def test_saddle_eigenvalues(frame60):
    center, E, jet = frame60
    assert abs(E.l1 - fc.mpf(REF_LAMBDA1)) < 5e-5
    assert abs(E.l2 - fc.mpf(REF_LAMBDA2)) < 5e-5
    J = M.jacobian_G(center)
    tr = J[0][0] + J[1][1]
    det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    assert abs(E.l1 + E.l2 - tr) < fc.mpf(10) ** -40
    assert abs(E.l1 * E.l2 - det) < fc.mpf(10) ** -40
    # L^-1 DG(P2) L is diagonal to tolerance
    (ip, iq), (ir, it) = E.Linv(fc)
    offdiag = ip * (J[0][0] * E.L[0][1] + J[0][1] * E.L[1][1]) + iq * (
        J[1][0] * E.L[0][1] + J[1][1] * E.L[1][1]
    )
    assert abs(offdiag) < fc.mpf(10) ** -45


def test_conjugated_jet_linear_part(frame60):
    center, E, jet = frame60
    F1, F2 = M.conjugated_jet(center, E, 5, 60)
    assert abs(F1.coeff(1, 0) - E.l1) < fc.mpf(10) ** -45
    assert abs(F1.coeff(0, 1)) < fc.mpf(10) ** -45
    assert abs(F2.coeff(1, 0)) < fc.mpf(10) ** -45
    assert abs(F2.coeff(0, 1) - E.l2) < fc.mpf(10) ** -45


def test_conjugated_jet_of_linear_map_has_no_nonlinear_terms():
    E = M.Eigen2(fc.mpf(3), fc.mpf("0.25"), [[fc.mpf(1), fc.mpf(0)], [fc.mpf(0), fc.mpf(1)]])
    one = fc.mpf(1)
    T = M.Taylor2(4, fc, {(1, 0): 3 * one})
    S = M.Taylor2(4, fc, {(0, 1): one / 4})
    # compose_linear with identity frame: stays linear
    A1 = T.compose_linear(one, 0 * one, 0 * one, one)
    assert all(i + j <= 1 or abs(v) == 0 for (i, j), v in A1.c.items())


def test_w_coefficients_match_reference(frame60):
    center, E, jet = frame60
    for k, ref in REF_W.items():
        assert abs(jet.coeffs[k] - fc.mpf(ref)) < fc.mpf(10) ** -25
    assert jet.residual_bound < fc.mpf(10) ** -50


def test_jet_precision_stability():
    _, _, jet60 = M.saddle_frame(60, 5)
    _, _, jet80 = M.saddle_frame(80, 5)
    fc80 = ctx(80)
    for k in range(2, 6):
        assert abs(fc80.mpf(str(jet60.coeffs[k])) - jet80.coeffs[k]) < fc80.mpf(10) ** -50


def _synthetic_jet(rng, fcx, order=5):
    lam = fcx.mpf(rng.uniform(1.5, 6.0)) * (1 if rng.random() < 0.5 else -1)
    mu = fcx.mpf(rng.uniform(0.05, 0.8)) * (1 if rng.random() < 0.5 else -1)
    F1 = M.Taylor2(order, fcx, {(1, 0): lam})
    F2 = M.Taylor2(order, fcx, {(0, 1): mu})
    f = {}
    g = {}
    for i in range(order + 1):
        for j in range(order + 1 - i):
            if i + j >= 2:
                f[(i, j)] = fcx.mpf(rng.uniform(-1, 1))
                g[(i, j)] = fcx.mpf(rng.uniform(-1, 1))
                F1.c[(i, j)] = f[(i, j)]
                F2.c[(i, j)] = g[(i, j)]
    return lam, mu, f, g, F1, F2


def test_closed_forms_w2_w3_w4_on_synthetic_jets():
    fcx = ctx(60)
    rng = random.Random(2026)
    for _ in range(20):
        lam, mu, f, g, F1, F2 = _synthetic_jet(rng, fcx)
        jet = M.unstable_jet(F1, F2, 5, 60)
        w2, w3, w4 = M.closed_form_w234(f, g, lam, mu)
        assert abs(jet.coeffs[2] - w2) < fcx.mpf(10) ** -40
        assert abs(jet.coeffs[3] - w3) < fcx.mpf(10) ** -40
        assert abs(jet.coeffs[4] - w4) < fcx.mpf(10) ** -40


def test_w2_single_term_example():
    # only g20 nonzero, lambda = 2, mu = 1/2: w2 = 1/(4 - 1/2) = 2/7
    fcx = ctx(60)
    F1 = M.Taylor2(5, fcx, {(1, 0): 2})
    F2 = M.Taylor2(5, fcx, {(0, 1): fcx.mpf("0.5"), (2, 0): 1})
    jet = M.unstable_jet(F1, F2, 5, 60)
    assert abs(jet.coeffs[2] - fcx.mpf(2) / 7) < fcx.mpf(10) ** -50


def test_purely_linear_jet_gives_zero_w():
    fcx = ctx(60)
    F1 = M.Taylor2(5, fcx, {(1, 0): 3})
    F2 = M.Taylor2(5, fcx, {(0, 1): fcx.mpf("0.25")})
    jet = M.unstable_jet(F1, F2, 5, 60)
    assert all(abs(v) == 0 for v in jet.coeffs.values())


def test_w5_denominator_structure_finite_across_frames():
    # same nonlinear data at two different hyperbolic (lam, mu): the
    # order-by-order solution stays finite away from resonances
    fcx = ctx(60)
    rng = random.Random(7)
    _, _, f, g, F1, F2 = _synthetic_jet(rng, fcx)
    for lam, mu in ((fcx.mpf(3), fcx.mpf("0.2")), (fcx.mpf("-2.5"), fcx.mpf("0.6"))):
        F1.c[(1, 0)] = lam
        F2.c[(0, 1)] = mu
        jet = M.unstable_jet(F1, F2, 5, 60)
        assert all(fcx.mp.isfinite(v) for v in jet.coeffs.values())
        denom = (lam**2 - mu) ** 3 * (lam**3 - mu) * (lam**4 - mu) * (lam**5 - mu)
        assert fcx.mp.isfinite(jet.coeffs[5] * denom)


def test_resonant_denominator_raises():
    fcx = ctx(60)
    lam = fcx.mpf(2)
    F1 = M.Taylor2(5, fcx, {(1, 0): lam})
    F2 = M.Taylor2(5, fcx, {(0, 1): lam**3, (2, 0): 1})  # mu = lam^3: k=3 resonance
    # note |mu| > 1 is not a saddle; the recurrence itself must still refuse
    with pytest.raises(M.ResonantDenominator):
        M.unstable_jet(F1, F2, 5, 60)


def test_param_Wu_center_and_invariance(frame60):
    center, E, jet = frame60
    p0 = M.param_Wu(0, jet, E, center)
    assert abs(p0[0] - center[0]) < fc.eps and abs(p0[1] - center[1]) < fc.eps
    # G maps manifold points to manifold points, up to the truncation order:
    # the D1 residual of the image scales like r^6
    for r in (fc.mpf("0.01"), fc.mpf("0.02")):
        img = L.g_map(M.param_Wu(r, jet, E, center))
        resid = abs(M.eval_D1(img, jet, E, center))
        assert resid < 100 * r**6


def test_D1_residuals(frame60):
    center, E, jet = frame60
    assert abs(M.eval_D1(center, jet, E, center)) < fc.mpf(10) ** -50
    for r in (fc.mpf("-0.1"), fc.mpf("0.05")):
        pt = M.param_Wu(r, jet, E, center)
        assert abs(M.eval_D1(pt, jet, E, center)) < fc.mpf(10) ** -30


def test_D2_examples():
    from gmpy2 import mpq

    assert M.eval_D2((mpq(3), mpq(3))) == 0  # G(3,3) = (3,3) lies on the diagonal
    # a point whose image lands on the diagonal: G(P) for the frozen
    # homoclinic point P (G^2(P) is on the diagonal by construction), found
    # here by an independent 1-d bisection of G1 - G2 along the G-image of
    # the vertical line through P
    P = (fc.mpf(REF_HOMOCLINIC_P[0]), fc.mpf(REF_HOMOCLINIC_P[1]))

    def f(b):
        g = L.g_map(L.g_map((P[0], b)))
        return g[0] - g[1]

    lo, hi = P[1] - fc.mpf("0.01"), P[1] + fc.mpf("0.01")
    flo = f(lo)
    assert flo * f(hi) < 0
    for _ in range(220):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    pre = L.g_map((P[0], (lo + hi) / 2))
    assert abs(M.eval_D2(pre)) < fc.mpf(10) ** -40
    assert abs(M.eval_D2((fc.mpf("1.3"), fc.mpf("0.7")))) > fc.mpf("0.1")
    # D3 is by definition D2 after one step
    a, b = fc.mpf("1.3"), fc.mpf("0.7")
    assert abs(M.eval_D3((a, b)) - M.eval_D2(L.g_map((a, b)))) < fc.mpf(10) ** -40


def test_D4_vanishes_on_forbidden_preimage():
    # construct a preimage of the line numerically: along b = const, bisect
    # G1 + G2 + 2 through the known crossing near the forbidden-set point
    def target(p):
        g = L.g_map(p)
        return g[0] + g[1] + 2

    b = fc.mpf(REF_QM1[1])
    lo, hi = fc.mpf("-4.6"), fc.mpf("-4.3")
    flo = target((lo, b))
    assert flo * target((hi, b)) < 0
    for _ in range(200):
        mid = (lo + hi) / 2
        fm = target((mid, b))
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    a = (lo + hi) / 2
    assert abs(a - fc.mpf(REF_QM1[0])) < fc.mpf(10) ** -40  # it is the known point
    assert abs(M.eval_D4((a, b))) < fc.mpf(10) ** -40


def test_newton2_examples(frame60):
    center, E, jet = frame60
    P = M.newton2(
        (lambda p: M.eval_D1(p, jet, E, center), lambda p: M.eval_D3(p)),
        (fc.mpf("-5.7"), fc.mpf("4.1")),
    )
    assert abs(P[0] - fc.mpf(REF_HOMOCLINIC_P[0])) < fc.mpf(10) ** -40
    assert abs(P[1] - fc.mpf(REF_HOMOCLINIC_P[1])) < fc.mpf(10) ** -40


def test_newton2_no_convergence():
    with pytest.raises(M.NoConvergence):
        M.newton2(
            (lambda p: p[0] ** 2 + 1, lambda p: p[1]),
            (fc.mpf("0.5"), fc.mpf("0.5")),
            max_iter=25,
        )


def test_homoclinic_report():
    rep = M.homoclinic_report(60)
    tol = fc.mpf(10) ** -40
    assert abs(rep.P[0] - fc.mpf(REF_HOMOCLINIC_P[0])) < tol
    assert abs(rep.P[1] - fc.mpf(REF_HOMOCLINIC_P[1])) < tol
    assert abs(rep.P_tilde[0] - fc.mpf(REF_HOMOCLINIC_PT[0])) < tol
    assert abs(rep.P_tilde[1] - fc.mpf(REF_HOMOCLINIC_PT[1])) < tol
    assert abs(rep.Q[0] - fc.mpf(REF_Q1)) < tol
    assert abs(rep.Q[1] - (-2 - rep.Q[0])) == 0
    assert abs(rep.Q_minus1[0] - fc.mpf(REF_QM1[0])) < tol
    assert abs(rep.Q_minus1[1] - fc.mpf(REF_QM1[1])) < tol
    assert fc.mpf(rep.resolvent_at_G3P) < fc.mpf(10) ** -50
    assert rep.G_of_Qm1_on_line
    assert rep.interleaving_ok
    for name, ref in REF_R_PARAMS.items():
        assert abs(rep.r_params[name] - fc.mpf(ref)) < fc.mpf(10) ** -18


def test_report_is_precision_stable():
    rep60 = M.homoclinic_report(60)
    rep80 = M.homoclinic_report(80)
    fc80 = ctx(80)
    for a, b in zip(rep60.P, rep80.P):
        assert abs(fc80.mpf(str(a)) - b) < fc80.mpf(10) ** -55
