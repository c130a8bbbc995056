import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearfield_bounds import closed_form as cf
from nearfield_bounds.closed_form import Branch, BoundaryResult
from nearfield_bounds.errors import DomainError
from nearfield_bounds.geometry import Family

D1, D2, LAM = 0.1, 0.05, 1e-3
PI = math.pi


def test_l2l_on_examples():
    assert cf.rf_l2l_on(D1, D2, 0, LAM).distance == pytest.approx(45.0, rel=1e-12)
    assert cf.rf_l2l_on(D1, D2, PI / 2, LAM).distance == pytest.approx(5.0, rel=1e-12)
    assert cf.rf_l2l_on(D1, D2, PI / 3, LAM).distance == pytest.approx(20.0, rel=1e-12)


def test_l2l_off_examples():
    res = cf.rf_l2l_off_exact(D1, D2, PI / 3, PI / 3, LAM)
    a, b = res.branch_values
    assert res.branch is Branch.A and a > b
    assert a == pytest.approx(31.25 + 0.05 * math.sin(PI / 3) / 2, rel=1e-12)
    assert a == pytest.approx(31.27, abs=0.005)
    assert cf.rf_l2l_off_exact(D1, D2, 0, 0, LAM).distance == pytest.approx(45.0, rel=1e-12)
    assert cf.rf_l2l_off_exact(D1, D2, PI / 2, PI / 2, LAM).distance == pytest.approx(20.025, rel=1e-12)
    assert cf.rf_l2l_off_approx(D1, D2, PI / 3, PI / 3, LAM).distance == pytest.approx(31.25, rel=1e-12)


def test_theta_threshold_examples():
    th = cf.theta_threshold(D1, D2, LAM)
    assert th.kappa == pytest.approx(800.0, rel=1e-12)
    s = math.sin(th.theta_th)
    assert s == pytest.approx((-1 + math.sqrt(1 + 4 * 800**2)) / 1600, rel=1e-14)
    # kappa = 1: golden-ratio root
    th1 = cf.theta_threshold(LAM * (PI / 8) / PI, 0.0, LAM)
    assert th1.kappa == pytest.approx(1.0, rel=1e-14)
    assert math.sin(th1.theta_th) == pytest.approx((math.sqrt(5) - 1) / 2, rel=1e-14)
    assert th1.theta_th_deg == pytest.approx(38.17, abs=0.01)
    big = cf.theta_threshold(1e6, 1.0, LAM)
    assert big.theta_th_deg == pytest.approx(90.0, abs=1e-3)
    assert 0 < big.theta_th < PI / 2


def test_l2o_examples():
    assert cf.rf_l2o_off(D2, 0, LAM).distance == pytest.approx(5.0, rel=1e-12)
    assert cf.rf_l2o_off(D2, PI / 2, LAM).distance == pytest.approx(0.025, rel=1e-12)
    assert cf.rf_l2o_off(D2, PI / 2, LAM, approximate=True).distance == pytest.approx(0.0, abs=1e-15)
    assert cf.rf_l2o_off(D2, PI / 3, LAM).distance == pytest.approx(1.25 + 0.025 * math.sqrt(3) / 2, rel=1e-12)


def test_p2p_examples():
    assert cf.rf_p2p_on(D1, D2, 0, 0, LAM).distance == pytest.approx(90.0, rel=1e-12)
    assert cf.rf_p2p_on(D1, D2, PI / 2, 0, LAM).distance == pytest.approx(50.0, rel=1e-12)
    assert cf.rf_p2p_on(D1, D2, 0, PI / 2, LAM).distance == pytest.approx(50.0, rel=1e-12)
    assert cf.rf_p2p_off_single(D1, D2, 0, 0, LAM).distance == pytest.approx(90.0, rel=1e-12)
    assert cf.rf_p2p_off_single(D1, D2, PI / 2, PI / 2, LAM).distance == pytest.approx(65.0, rel=1e-12)
    assert cf.rf_p2p_off_single(D1, D2, PI / 3, 0, LAM).distance == pytest.approx(65.0, rel=1e-12)


def test_p2p_dual_example_picks_branch_b():
    t = cf.branch_terms(PI / 6, PI / 3, PI / 6)
    assert (t.eta_plus, t.eta_minus) == pytest.approx((0.933, 0.067), abs=1e-3)
    assert (t.xi_minus, t.xi_plus) == pytest.approx((0.442, 1.308), abs=1e-3)
    res = cf.rf_p2p_off_dual(D1, D2, PI / 6, PI / 3, PI / 6, LAM)
    a, b = res.branch_values
    assert a == pytest.approx(56.4, abs=0.05)
    assert b == pytest.approx(67.1, abs=0.05)
    assert res.branch is Branch.B and res.distance == b


def test_p2p_dual_reductions():
    grid = np.linspace(-PI / 2, PI / 2, 37)
    for al in grid:
        for tp in grid:
            th = al + tp
            single = cf.rf_p2p_off_single(D1, D2, th, al, LAM).distance
            assert cf.rf_p2p_off_dual(D1, D2, th, 0.0, al, LAM).distance == pytest.approx(single, rel=1e-12)
    for th in grid:
        for ph in grid:
            on = cf.rf_p2p_on(D1, D2, th, ph, LAM).distance
            assert cf.rf_p2p_off_dual(D1, D2, th, ph, 0.0, LAM).distance == pytest.approx(on, rel=1e-12)


def test_p2l_and_p2o_examples():
    assert cf.rf_p2l_on(D1, D2, 0, LAM).distance == pytest.approx(50.0, rel=1e-12)
    assert cf.rf_p2l_on(D1, D2, PI / 2, LAM).distance == pytest.approx(10.0, rel=1e-12)
    assert cf.rf_p2o_off(D2, 0, 0, LAM).distance == pytest.approx(10.0, rel=1e-12)
    assert cf.rf_p2o_off(D2, 0, PI / 2, LAM).distance == pytest.approx(5.0, rel=1e-12)
    assert cf.rf_p2o_off(D2, PI / 2, 0, LAM).distance == pytest.approx(5.0, rel=1e-12)


def test_diag_gap_examples():
    assert cf.diag_matched_gap(D1, D2, 0, 0, LAM) == 0
    g = cf.diag_matched_gap(D1, D2, 0, PI / 4, LAM)
    diff = cf.rf_p2p_off_single(D1 / math.sqrt(2), D2 / math.sqrt(2), 0, PI / 4, LAM).distance - cf.rf_l2l_off_approx(
        D1, D2, 0, PI / 4, LAM
    ).distance
    assert g > 0
    assert g == pytest.approx(diff, rel=1e-12)


def test_relative_deviation():
    assert cf.relative_deviation(45.0, 45.0) == 0
    assert cf.relative_deviation(45.0, 90.0) == 0.5
    rot = cf.rf_p2p_on(D1, D2, PI / 3, 0, LAM)
    base = cf.rf_p2p_on(D1, D2, 0, 0, LAM)
    assert cf.relative_deviation(rot, base) == pytest.approx(25 / 90, rel=1e-12)


aperture = st.floats(0.001, 0.5)
wavelength = st.floats(1e-4, 1e-1)
half = st.floats(-PI / 2, PI / 2)


@given(aperture, aperture, wavelength, st.floats(0, PI / 2))
def test_l2l_on_symmetric_and_monotone(d1, d2, lam, th):
    assert cf.rf_l2l_on(d1, d2, th, lam).distance == cf.rf_l2l_on(d1, d2, -th, lam).distance
    if th > 1e-6:
        assert cf.rf_l2l_on(d1, d2, th, lam).distance < cf.rf_l2l_on(d1, d2, th * 0.99, lam).distance


@given(aperture, aperture, wavelength, half, half, half, st.floats(0.05, PI), st.floats(0.05, PI))
def test_approximate_forms_scale_inversely_with_varphi(d1, d2, lam, a, b, c, p1, p2):
    for fam, setting, exact in cf.TABLE_ROWS:
        if exact and fam in (Family.L2L_OFF, Family.L2O):
            continue
        kw = {"theta": a, "phi_rot": b, "alpha": c, "beta": b}
        kw = {k: v for k, v in kw.items() if k in fam.angles}
        if fam.off_boresight and "theta" in kw:
            kw["theta"] = kw["alpha"] + a
        r1 = cf.evaluate(fam, d1, d2, lam, p1, exact=exact, **kw).distance
        r2 = cf.evaluate(fam, d1, d2, lam, p2, exact=exact, **kw).distance
        assert r1 * p1 == pytest.approx(r2 * p2, rel=1e-12, abs=1e-300)


@given(aperture, aperture, wavelength, half, half, st.floats(0.05, PI), st.floats(0.05, PI))
def test_exact_l2l_quadratic_part_scales(d1, d2, lam, tp, al, p1, p2):
    def quad(p):
        a, b = cf.l2l_off_branches(d1, d2, al + tp, al, lam, p)
        lin_a = abs(d1 * math.sin(tp) - d2 * math.sin(al)) / 2
        lin_b = abs(d1 * math.sin(tp) + d2 * math.sin(al)) / 2
        return a - lin_a, b - lin_b

    q1, q2 = quad(p1), quad(p2)
    assert q1[0] * p1 == pytest.approx(q2[0] * p2, rel=1e-9, abs=1e-12)
    assert q1[1] * p1 == pytest.approx(q2[1] * p2, rel=1e-9, abs=1e-12)


@settings(max_examples=200)
@given(aperture, aperture, wavelength, half, half)
def test_dominance_opposite_signs(d1, d2, lam, tp, al):
    if tp * al < 0:
        a, b = cf.l2l_off_branches(d1, d2, al + tp, al, lam)
        assert a >= b


@settings(max_examples=200)
@given(aperture, aperture, wavelength, st.floats(-1, 1), st.floats(-1, 1))
def test_dominance_inside_threshold_box(d1, d2, lam, u, v):
    th = cf.theta_threshold(d1, d2, lam).theta_th
    tp, al = u * th, v * th
    a, b = cf.l2l_off_branches(d1, d2, al + tp, al, lam)
    assert a >= b * (1 - 1e-12)


@given(aperture, aperture, wavelength, half, half)
def test_diag_gap_nonnegative(d1, d2, lam, tp, al):
    assert cf.diag_matched_gap(d1, d2, al + tp, al, lam) >= 0


@given(aperture, aperture, wavelength, st.floats(-PI / 2 + 1e-9, PI / 2 - 1e-9))
def test_ordering_l2l_p2l_p2p(d1, d2, lam, th):
    a = cf.rf_l2l_on(d1, d2, th, lam).distance
    b = cf.rf_p2l_on(d1, d2, th, lam).distance
    c = cf.rf_p2p_on(d1, d2, th, 0.0, lam).distance
    assert a < b < c


@given(aperture, aperture, wavelength)
def test_swap_symmetry_without_rotation(d1, d2, lam):
    for fam in (Family.L2L_ON, Family.L2L_OFF, Family.P2P_ON, Family.P2P_OFF_SINGLE, Family.P2P_OFF_DUAL):
        assert cf.evaluate(fam, d1, d2, lam).distance == pytest.approx(cf.evaluate(fam, d2, d1, lam).distance, rel=1e-14)


def test_swap_symmetry_breaks_under_rotation():
    assert cf.rf_l2l_on(0.1, 0.05, 0.5, LAM).distance != pytest.approx(cf.rf_l2l_on(0.05, 0.1, 0.5, LAM).distance)


@given(aperture, aperture, wavelength)
def test_classical_reductions(d1, d2, lam):
    assert cf.rf_l2l_on(d1, d2, 0, lam).distance == pytest.approx(2 * (d1 + d2) ** 2 / lam, rel=1e-12)
    assert cf.rf_p2p_on(d1, d2, 0, 0, lam).distance == pytest.approx(4 * (d1 + d2) ** 2 / lam, rel=1e-12)
    assert cf.rf_p2o_off(d2, 0, 0, lam).distance == pytest.approx(PI * d2**2 / (2 * lam * PI / 8), rel=1e-12)


def test_boundary_result_invariant():
    r = BoundaryResult.from_branches(2.0, 2.0)
    assert r.branch is Branch.A and r.distance == max(r.branch_values)


def test_zero_apertures_allowed():
    assert cf.rf_l2l_on(0.0, 0.05, 0.3, LAM).distance == pytest.approx(5.0)
    assert cf.rf_p2p_off_dual(0.0, 0.0, 0.1, 0.1, 0.1, LAM).distance == 0


@pytest.mark.parametrize(
    "call",
    [
        lambda: cf.rf_l2l_on(-0.1, 0.05, 0, LAM),
        lambda: cf.rf_l2l_on(0.1, 0.05, 0, 0.0),
        lambda: cf.rf_l2l_on(0.1, 0.05, 0, LAM, 4.0),
        lambda: cf.rf_l2l_off_exact(0.1, 0.05, -1.0, 0.8, LAM),
        lambda: cf.evaluate("l2l-on", 0.1, 0.05, LAM, alpha=0.2),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_summary_table_covers_every_family():
    rows = cf.summary_table(D1, D2, LAM, theta=0.2, phi_rot=0.1, alpha=0.3, beta=0.1)
    assert {f for f, _, _ in rows} == set(Family)
    for _, _, res in rows:
        assert res.distance > 0
