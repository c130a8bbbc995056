"""Closed-form near-field boundary distances.

Every function takes apertures ``d1`` (Tx) and ``d2`` (Rx) in metres, the
wavelength in metres and the phase threshold ``varphi`` in radians, plus the
angles its geometry depends on.  All boundaries share the scale factor
``pi / (4 * wavelength * varphi)`` applied to a squared projected aperture.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .geometry import (
    Family,
    check_angles,
    check_aperture,
    check_phase_threshold,
    check_wavelength,
    parse_family,
)

DEFAULT_VARPHI = math.pi / 8


class Branch(enum.Enum):
    SINGLE = "single"
    A = "a"
    B = "b"


@dataclass(frozen=True)
class BoundaryResult:
    distance: float
    branch: Branch = Branch.SINGLE
    branch_values: Optional[tuple[float, float]] = None

    @classmethod
    def from_branches(cls, a: float, b: float) -> BoundaryResult:
        # ties resolve to branch (a)
        if a >= b:
            return cls(a, Branch.A, (a, b))
        return cls(b, Branch.B, (a, b))


@dataclass(frozen=True)
class BranchTerms:
    eta_plus: float
    eta_minus: float
    xi_plus: float
    xi_minus: float


@dataclass(frozen=True)
class ThresholdResult:
    kappa: float
    theta_th: float

    @property
    def theta_th_deg(self) -> float:
        return math.degrees(self.theta_th)


def _scale(wavelength, varphi):
    check_wavelength(wavelength)
    check_phase_threshold(varphi)
    return math.pi / (4 * wavelength * varphi)


def _apertures(d1, d2):
    check_aperture("d1", d1)
    check_aperture("d2", d2)


def branch_terms(theta: float, phi_rot: float, alpha: float = 0.0) -> BranchTerms:
    """Projection magnitudes for the dual-angle planar boundary."""
    s_phi, c_phi = math.sin(phi_rot), math.cos(phi_rot)
    s_th, c_th = math.sin(theta), math.cos(theta)
    s_al, c_al = math.sin(alpha), math.cos(alpha)
    common = c_th * c_al + c_phi * s_th * s_al
    return BranchTerms(
        eta_plus=abs(c_phi + s_phi * s_th),
        eta_minus=abs(c_phi - s_phi * s_th),
        xi_plus=abs(common + s_al * s_phi),
        xi_minus=abs(common - s_al * s_phi),
    )


def rf_l2l_on(d1, d2, theta, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    """ULA-to-ULA on boresight with Tx rotated by ``theta``."""
    _apertures(d1, d2)
    check_angles(Family.L2L_ON, theta=theta)
    k = _scale(wavelength, varphi)
    return BoundaryResult(k * (d1 * math.cos(theta) + d2) ** 2)


def l2l_off_branches(d1, d2, theta, alpha, wavelength, varphi=DEFAULT_VARPHI):
    """Branch (a) and (b) values of the off-boresight ULA-to-ULA boundary."""
    _apertures(d1, d2)
    check_angles(Family.L2L_OFF, theta=theta, alpha=alpha)
    k = _scale(wavelength, varphi)
    tp = theta - alpha
    tx_c, rx_c = d1 * math.cos(tp), d2 * math.cos(alpha)
    tx_s, rx_s = d1 * math.sin(tp), d2 * math.sin(alpha)
    a = k * (tx_c + rx_c) ** 2 + abs(tx_s - rx_s) / 2
    b = k * (tx_c - rx_c) ** 2 + abs(tx_s + rx_s) / 2
    return a, b


def rf_l2l_off_exact(d1, d2, theta, alpha, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    """Max of the two corner branches; drops only the ``lambda*varphi/(4 pi)`` constant."""
    return BoundaryResult.from_branches(*l2l_off_branches(d1, d2, theta, alpha, wavelength, varphi))


def rf_l2l_off_approx(d1, d2, theta, alpha, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    _apertures(d1, d2)
    check_angles(Family.L2L_OFF, theta=theta, alpha=alpha)
    k = _scale(wavelength, varphi)
    return BoundaryResult(k * (d1 * math.cos(theta - alpha) + d2 * math.cos(alpha)) ** 2)


def theta_threshold(d1, d2, wavelength, varphi=DEFAULT_VARPHI) -> ThresholdResult:
    """Angle below which branch (a) of the ULA-to-ULA boundary provably dominates.

    Root of ``kappa * s**2 + s - kappa = 0`` with ``kappa = pi*max(d1, d2)/(wavelength*varphi)``.
    """
    _apertures(d1, d2)
    check_wavelength(wavelength)
    check_phase_threshold(varphi)
    dmax = max(d1, d2)
    if dmax == 0:
        raise DomainError("threshold angle undefined when both apertures are zero")
    kappa = math.pi * dmax / (wavelength * varphi)
    # 2/(1 + sqrt(1 + 4k^2)) * k is the same root without cancellation at large kappa
    s = 2 * kappa / (1 + math.sqrt(1 + 4 * kappa * kappa))
    return ThresholdResult(kappa, math.asin(s))


def rf_l2o_off(d2, alpha, wavelength, varphi=DEFAULT_VARPHI, approximate=False) -> BoundaryResult:
    """Point Tx to ULA Rx at off-boresight ``alpha``."""
    check_aperture("d2", d2)
    check_angles(Family.L2O, alpha=alpha)
    k = _scale(wavelength, varphi)
    value = k * (d2 * math.cos(alpha)) ** 2
    if not approximate:
        value += d2 * abs(math.sin(alpha)) / 2
    return BoundaryResult(value)


def rf_p2p_on(d1, d2, theta, phi_rot, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    _apertures(d1, d2)
    check_angles(Family.P2P_ON, theta=theta, phi_rot=phi_rot)
    k = _scale(wavelength, varphi)
    vertical = d1 * math.cos(theta) + d2
    horizontal = d1 * (math.cos(phi_rot) + abs(math.sin(theta) * math.sin(phi_rot))) + d2
    return BoundaryResult(k * (vertical**2 + horizontal**2))


def rf_p2p_off_single(d1, d2, theta, alpha, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    _apertures(d1, d2)
    check_angles(Family.P2P_OFF_SINGLE, theta=theta, alpha=alpha)
    k = _scale(wavelength, varphi)
    projected = d1 * math.cos(theta - alpha) + d2 * math.cos(alpha)
    return BoundaryResult(k * ((d1 + d2) ** 2 + projected**2))


def p2p_off_dual_branches(d1, d2, theta, phi_rot, alpha, wavelength, varphi=DEFAULT_VARPHI):
    _apertures(d1, d2)
    check_angles(Family.P2P_OFF_DUAL, theta=theta, phi_rot=phi_rot, alpha=alpha)
    k = _scale(wavelength, varphi)
    t = branch_terms(theta, phi_rot, alpha)
    rx_c = d2 * math.cos(alpha)
    a = k * ((d2 + d1 * t.eta_plus) ** 2 + (rx_c + d1 * t.xi_minus) ** 2)
    b = k * ((d2 + d1 * t.eta_minus) ** 2 + (rx_c + d1 * t.xi_plus) ** 2)
    return a, b


def rf_p2p_off_dual(d1, d2, theta, phi_rot, alpha, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    """UPA-to-UPA off boresight with both Tx rotations; max of two sign branches."""
    return BoundaryResult.from_branches(
        *p2p_off_dual_branches(d1, d2, theta, phi_rot, alpha, wavelength, varphi)
    )


def rf_p2l_on(d1, d2, theta, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    """ULA Tx (aperture ``d1``) to UPA Rx (side ``d2``) on boresight; ``theta=0`` is the unrotated case."""
    _apertures(d1, d2)
    check_angles(Family.P2L_ON, theta=theta)
    k = _scale(wavelength, varphi)
    return BoundaryResult(k * (d2**2 + (d1 * math.cos(theta) + d2) ** 2))


def rf_p2o_off(d2, alpha, beta, wavelength, varphi=DEFAULT_VARPHI) -> BoundaryResult:
    check_aperture("d2", d2)
    check_angles(Family.P2O, alpha=alpha, beta=beta)
    k = _scale(wavelength, varphi)
    second = abs(math.sin(alpha) * math.sin(beta)) + math.cos(alpha)
    return BoundaryResult(k * d2**2 * (math.cos(beta) ** 2 + second**2))


def diag_matched_gap(d1, d2, theta, alpha, wavelength, varphi=DEFAULT_VARPHI) -> float:
    """Planar minus linear boundary when the UPA sides are the ULA apertures over sqrt(2)."""
    _apertures(d1, d2)
    check_angles(Family.L2L_OFF, theta=theta, alpha=alpha)
    k = _scale(wavelength, varphi)
    first = (d1 * math.sin(theta - alpha) + d2 * math.sin(alpha)) ** 2 / 2
    gamma = d1 * d2 * (1 - math.cos(2 * alpha - theta))
    return k * (first + gamma)


def relative_deviation(rotated: BoundaryResult | float, baseline: BoundaryResult | float) -> float:
    """``|rotated - baseline| / baseline``."""
    r = rotated.distance if isinstance(rotated, BoundaryResult) else float(rotated)
    b = baseline.distance if isinstance(baseline, BoundaryResult) else float(baseline)
    if not b > 0:
        raise DomainError(f"baseline distance must be > 0, got {b!r}")
    return abs(r - b) / b


# -- family dispatch --------------------------------------------------------

ANGLE_NAMES = ("theta", "phi_rot", "alpha", "beta")


def evaluate(
    family: Family | str,
    d1: float,
    d2: float,
    wavelength: float,
    varphi: float = DEFAULT_VARPHI,
    theta: float = 0.0,
    phi_rot: float = 0.0,
    alpha: float = 0.0,
    beta: float = 0.0,
    exact: bool = True,
) -> BoundaryResult:
    """Boundary for ``family`` at one parameter point.

    ``exact`` selects the forms that keep aperture-scale linear terms
    (ULA-to-ULA off boresight, ULA-to-point); other families have one form.
    Unused apertures and angles must be zero for point-Tx families, except
    ``d1`` which is ignored there.
    """
    fam = parse_family(family)
    check_angles(fam, theta=theta, phi_rot=phi_rot, alpha=alpha, beta=beta)
    if fam is Family.L2L_ON:
        return rf_l2l_on(d1, d2, theta, wavelength, varphi)
    if fam is Family.L2L_OFF:
        fn = rf_l2l_off_exact if exact else rf_l2l_off_approx
        return fn(d1, d2, theta, alpha, wavelength, varphi)
    if fam is Family.L2O:
        return rf_l2o_off(d2, alpha, wavelength, varphi, approximate=not exact)
    if fam is Family.P2P_ON:
        return rf_p2p_on(d1, d2, theta, phi_rot, wavelength, varphi)
    if fam is Family.P2P_OFF_SINGLE:
        return rf_p2p_off_single(d1, d2, theta, alpha, wavelength, varphi)
    if fam is Family.P2P_OFF_DUAL:
        return rf_p2p_off_dual(d1, d2, theta, phi_rot, alpha, wavelength, varphi)
    if fam is Family.P2L_ON:
        return rf_p2l_on(d1, d2, theta, wavelength, varphi)
    return rf_p2o_off(d2, alpha, beta, wavelength, varphi)


# (family, setting, exact flag) rows of the summary table
TABLE_ROWS = (
    (Family.L2L_ON, "on-boresight", True),
    (Family.L2L_OFF, "off-boresight exact", True),
    (Family.L2L_OFF, "off-boresight approx", False),
    (Family.L2O, "off-boresight exact", True),
    (Family.L2O, "off-boresight approx", False),
    (Family.P2P_ON, "on-boresight", True),
    (Family.P2P_OFF_SINGLE, "off-boresight single angle", True),
    (Family.P2P_OFF_DUAL, "off-boresight dual angle", True),
    (Family.P2L_ON, "on-boresight x-rotation", True),
    (Family.P2O, "off-boresight", True),
)


def summary_table(d1, d2, wavelength, varphi=DEFAULT_VARPHI, theta=0.0, phi_rot=0.0, alpha=0.0, beta=0.0):
    """Evaluate every closed form at one parameter point.

    Angles a family does not use are dropped for that row.  Returns a list of
    ``(family, setting, BoundaryResult)``.
    """
    given = {"theta": theta, "phi_rot": phi_rot, "alpha": alpha, "beta": beta}
    rows = []
    for fam, setting, exact in TABLE_ROWS:
        kw = {k: v for k, v in given.items() if k in fam.angles}
        if fam is Family.P2P_OFF_SINGLE:
            kw.pop("phi_rot", None)
        rows.append((fam, setting, evaluate(fam, d1, d2, wavelength, varphi, exact=exact, **kw)))
    return rows
