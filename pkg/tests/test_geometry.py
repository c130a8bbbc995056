import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearfield_bounds.errors import DomainError
from nearfield_bounds.geometry import (
    ArrayKind,
    ArraySpec,
    Family,
    LinkConfig,
    LinkGeometry,
    Orientation,
    check_angles,
    effective_distance,
    element_offsets,
    l2l_effective_distance,
    link_unit_vector,
    parse_family,
    planar_effective_distance,
    rotation,
    rotation_x,
    rotation_z,
)

angle = st.floats(-math.pi / 2, math.pi / 2)


def test_rotation_x_identity_and_right_hand():
    assert np.array_equal(rotation_x(0.0), np.eye(3))
    np.testing.assert_allclose(rotation_x(math.pi / 2) @ [0, 1, 0], [0, 0, 1], atol=1e-15)


def test_rotation_x_matches_trig():
    c, s = math.cos(math.pi / 6), math.sin(math.pi / 6)
    np.testing.assert_allclose(rotation_x(math.pi / 6), [[1, 0, 0], [0, c, -s], [0, s, c]], rtol=0, atol=1e-15)


def test_rotation_z_identity_and_right_hand():
    assert np.array_equal(rotation_z(0.0), np.eye(3))
    np.testing.assert_allclose(rotation_z(math.pi / 2) @ [1, 0, 0], [0, 1, 0], atol=1e-15)


def test_composite_rotation_is_product():
    th, ph = math.pi / 6, math.pi / 3
    np.testing.assert_allclose(rotation(th, ph), rotation_z(ph) @ rotation_x(th), atol=1e-15)


@given(angle, angle)
def test_rotations_orthonormal(th, ph):
    r = rotation(th, ph)
    np.testing.assert_allclose(r.T @ r, np.eye(3), atol=1e-12)


def test_element_offsets_linear_point_planar():
    s = 0.01
    lin = element_offsets(ArraySpec(ArrayKind.LINEAR, 3, s))
    np.testing.assert_allclose(lin[:, 2], [-s, 0, s])
    assert np.all(lin[:, :2] == 0)
    assert element_offsets(ArraySpec.point()).tolist() == [[0.0, 0.0, 0.0]]
    pl = element_offsets(ArraySpec(ArrayKind.PLANAR, 2, s))
    assert pl.shape == (4, 3)
    assert sorted(map(tuple, pl[:, [0, 2]].round(12))) == [(-s / 2, -s / 2), (-s / 2, s / 2), (s / 2, -s / 2), (s / 2, s / 2)]


@pytest.mark.parametrize("n", [1, 2, 5, 8, 21])
def test_offsets_are_symmetric(n):
    off = element_offsets(ArraySpec(ArrayKind.PLANAR, n, 0.003))
    np.testing.assert_allclose(off.sum(axis=0), 0, atol=1e-15)


def test_from_aperture_keeps_aperture_and_odd_count():
    spec = ArraySpec.from_aperture(ArrayKind.LINEAR, 0.1, 5e-4)
    assert spec.n % 2 == 1
    assert spec.aperture == pytest.approx(0.1, rel=1e-15)
    assert ArraySpec.from_aperture(ArrayKind.PLANAR, 0.0, 1e-3).n == 1


def test_link_unit_vector_examples():
    np.testing.assert_allclose(link_unit_vector(0, 0), [0, 1, 0])
    np.testing.assert_allclose(link_unit_vector(math.pi / 2, 0), [0, 0, 1], atol=1e-16)
    a, b = math.pi / 6, math.pi / 4
    np.testing.assert_allclose(
        link_unit_vector(a, b), [math.sin(b) * math.cos(a), math.cos(b) * math.cos(a), math.sin(a)]
    )


def _config(family, r=10.0, theta=0.0, phi_rot=0.0, alpha=0.0, beta=0.0, n=5, s=0.01):
    fam = parse_family(family)
    kinds = fam.kinds
    tx = ArraySpec(kinds[0], 1 if kinds[0] is ArrayKind.POINT else n, s)
    rx = ArraySpec(kinds[1], n, s)
    return LinkConfig(fam, tx, rx, LinkGeometry(r, 1e-3, alpha, beta), Orientation(theta, phi_rot))


def test_on_boresight_l2l_direct_formula():
    d = l2l_effective_distance(10.0, 0.05, -0.025, 0.0)
    assert d == pytest.approx(math.sqrt(100 + 0.075**2), rel=1e-15)


@pytest.mark.parametrize("family", [f.value for f in Family])
def test_center_pair_is_exactly_r(family):
    fam = parse_family(family)
    kw = {"theta": 0.3, "phi_rot": 0.2, "alpha": 0.4, "beta": -0.1}
    kw = {k: v for k, v in kw.items() if k in fam.angles}
    cfg = _config(fam, r=7.3, **kw)
    tx_c = cfg.tx.count // 2
    rx_c = cfg.rx.count // 2
    assert effective_distance(cfg, tx_c, rx_c) == pytest.approx(7.3, rel=1e-15)


@settings(max_examples=60)
@given(
    st.sampled_from(["l2l-off", "l2o", "p2o", "p2p-off-dual", "p2p-on", "p2l-on"]),
    angle,
    angle,
    angle,
    st.floats(0.5, 50.0),
)
def test_effective_distance_at_least_r(family, a, b, c, r):
    fam = parse_family(family)
    kw = {"alpha": a, "beta": b, "phi_rot": c}
    kw = {k: v for k, v in kw.items() if k in fam.angles}
    if "theta" in fam.angles:
        kw["theta"] = kw.get("alpha", 0.0) + b / 2
    cfg = _config(fam, r=r, **kw)
    vals = [effective_distance(cfg, i, j) for i in range(cfg.tx.count) for j in range(cfg.rx.count)]
    assert min(vals) >= r - 1e-12 * r


def test_planar_route_matches_explicit_vectors():
    th, ph, al, be = 0.4, -0.7, 0.3, 0.2
    cfg = _config("p2p-off-dual", r=3.0, theta=th, phi_rot=ph, alpha=al)
    tx = element_offsets(cfg.tx)
    rx = element_offsets(cfg.rx)
    u = link_unit_vector(al, be)
    rot = rotation(th, ph)
    for i in (0, 7, 24):
        for j in (3, 12):
            w = rx[j] - rot @ tx[i]
            direct = np.linalg.norm(w - 3.0 * u) + w @ u
            via = planar_effective_distance(3.0, rx[j], tx[i], th, ph, al, be)
            assert via == pytest.approx(direct, rel=1e-14)


def test_l2l_route_matches_planar_route():
    d_tx = np.linspace(-0.05, 0.05, 7)
    d_rx = np.linspace(-0.02, 0.02, 5)
    th, al = 0.9, 0.4
    for a in d_tx:
        for b in d_rx:
            p = planar_effective_distance(2.0, [0, 0, b], [0, 0, a], th, 0.0, al)
            assert l2l_effective_distance(2.0, a, b, th, al) == pytest.approx(p, rel=1e-13)


@settings(max_examples=40)
@given(st.floats(-1.4, 1.4), st.floats(-1.4, 1.4), st.floats(0.5, 20))
def test_l2l_mirror_symmetry(alpha, tp, r):
    # (alpha, theta) and (pi - alpha, -theta) with the Tx mirrored give the same multiset
    theta = alpha + tp
    d_tx = np.linspace(-0.05, 0.05, 9)
    d_rx = np.linspace(-0.03, 0.03, 7)
    a, b = np.meshgrid(d_tx, d_rx)
    orig = np.sort(l2l_effective_distance(r, a, b, theta, alpha).ravel())
    mirrored = np.sort(l2l_effective_distance(r, -a, b, -theta, math.pi - alpha).ravel())
    np.testing.assert_allclose(orig, mirrored, rtol=1e-12)


def test_effective_distance_rejects_bad_index_and_r():
    cfg = _config("l2l-on")
    with pytest.raises(DomainError):
        effective_distance(cfg, cfg.tx.count, 0)
    with pytest.raises(DomainError):
        effective_distance(cfg.with_r(1e-4), 0, 0)


def test_parse_family_and_angle_checks():
    assert parse_family("P2P_OFF_DUAL") is Family.P2P_OFF_DUAL
    with pytest.raises(DomainError):
        parse_family("l2x")
    with pytest.raises(DomainError):
        check_angles(Family.L2L_ON, phi_rot=0.1)
    with pytest.raises(DomainError):
        check_angles(Family.L2L_OFF, theta=-1.2, alpha=0.5)
    check_angles(Family.L2L_OFF, theta=1.9, alpha=0.5)
    with pytest.raises(DomainError):
        check_angles(Family.L2L_ON, theta=1.6)


def test_link_config_rejects_wrong_array_kind():
    with pytest.raises(DomainError):
        LinkConfig(Family.L2L_ON, ArraySpec(ArrayKind.PLANAR, 3, 0.01), ArraySpec(ArrayKind.LINEAR, 3, 0.01), LinkGeometry(5, 1e-3))
