"""Array geometry, rotations and element-pair effective distances.

Coordinate conventions
----------------------
The receive array sits at the origin in the xz-plane with boresight along +y.
A linear array lies along the local z-axis, a planar array spans local x and z.
The transmit array centre is placed at ``r * u(alpha, beta)`` and its local
offsets are rotated by ``R_z(phi_rot) @ R_x(theta)``.

The effective distance of an element pair is the propagation distance plus the
transmit and receive pre-steering terms expressed as path length.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

SPEED_OF_LIGHT = 299_792_458.0
HALF_PI = math.pi / 2
# slack on closed angular intervals so that degree->radian round-off is accepted
ANGLE_TOL = 1e-12


class ArrayKind(enum.Enum):
    POINT = "point"
    LINEAR = "linear"
    PLANAR = "planar"


class Family(enum.Enum):
    L2L_ON = "l2l-on"
    L2L_OFF = "l2l-off"
    L2O = "l2o"
    P2P_ON = "p2p-on"
    P2P_OFF_SINGLE = "p2p-off-single"
    P2P_OFF_DUAL = "p2p-off-dual"
    P2L_ON = "p2l-on"
    P2O = "p2o"

    @property
    def kinds(self) -> tuple[ArrayKind, ArrayKind]:
        """(tx kind, rx kind)."""
        return _FAMILY_KINDS[self]

    @property
    def angles(self) -> tuple[str, ...]:
        """Angles the family's boundary depends on."""
        return _FAMILY_ANGLES[self]

    @property
    def off_boresight(self) -> bool:
        return "alpha" in self.angles


_FAMILY_KINDS = {
    Family.L2L_ON: (ArrayKind.LINEAR, ArrayKind.LINEAR),
    Family.L2L_OFF: (ArrayKind.LINEAR, ArrayKind.LINEAR),
    Family.L2O: (ArrayKind.POINT, ArrayKind.LINEAR),
    Family.P2P_ON: (ArrayKind.PLANAR, ArrayKind.PLANAR),
    Family.P2P_OFF_SINGLE: (ArrayKind.PLANAR, ArrayKind.PLANAR),
    Family.P2P_OFF_DUAL: (ArrayKind.PLANAR, ArrayKind.PLANAR),
    Family.P2L_ON: (ArrayKind.LINEAR, ArrayKind.PLANAR),
    Family.P2O: (ArrayKind.POINT, ArrayKind.PLANAR),
}

_FAMILY_ANGLES = {
    Family.L2L_ON: ("theta",),
    Family.L2L_OFF: ("theta", "alpha"),
    Family.L2O: ("alpha",),
    Family.P2P_ON: ("theta", "phi_rot"),
    Family.P2P_OFF_SINGLE: ("theta", "alpha"),
    Family.P2P_OFF_DUAL: ("theta", "phi_rot", "alpha"),
    Family.P2L_ON: ("theta",),
    Family.P2O: ("alpha", "beta"),
}


def parse_family(value: Family | str) -> Family:
    if isinstance(value, Family):
        return value
    key = str(value).strip().lower().replace("_", "-")
    try:
        return Family(key)
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise DomainError(f"unknown family {value!r}; expected one of: {names}") from None


@dataclass(frozen=True)
class ArraySpec:
    """Uniform array: ``n`` elements per dimension at pitch ``spacing`` metres."""

    kind: ArrayKind
    n: int = 1
    spacing: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"element count must be >= 1, got {self.n}")
        if self.kind is ArrayKind.POINT and self.n != 1:
            raise DomainError("a point array has exactly one element")
        if self.n > 1 and not self.spacing > 0:
            raise DomainError(f"spacing must be > 0, got {self.spacing}")

    @classmethod
    def point(cls) -> ArraySpec:
        return cls(ArrayKind.POINT)

    @classmethod
    def from_aperture(cls, kind: ArrayKind, aperture: float, spacing: float) -> ArraySpec:
        """Array of the given aperture with pitch close to ``spacing``.

        The element count is rounded up to the next odd number so a physical
        centre element exists, then the pitch is adjusted so that the aperture
        is reproduced exactly.
        """
        if kind is ArrayKind.POINT:
            return cls.point()
        if aperture < 0:
            raise DomainError(f"aperture must be >= 0, got {aperture}")
        if not spacing > 0:
            raise DomainError(f"spacing must be > 0, got {spacing}")
        if aperture == 0:
            return cls(kind, 1, spacing)
        # a nonzero aperture needs both end elements plus the centre
        n = max(3, int(round(aperture / spacing)) + 1)
        if n % 2 == 0:
            n += 1
        return cls(kind, n, aperture / (n - 1))

    @property
    def aperture(self) -> float:
        return (self.n - 1) * self.spacing if self.n > 1 else 0.0

    @property
    def count(self) -> int:
        """Total number of elements."""
        return self.n * self.n if self.kind is ArrayKind.PLANAR else self.n

    @property
    def radius(self) -> float:
        """Largest element distance from the array centre."""
        if self.kind is ArrayKind.PLANAR:
            return self.aperture / math.sqrt(2)
        return self.aperture / 2


@dataclass(frozen=True)
class Orientation:
    """Tx rotation: ``theta`` about x, then ``phi_rot`` about z (radians)."""

    theta: float = 0.0
    phi_rot: float = 0.0


@dataclass(frozen=True)
class LinkGeometry:
    r: float
    wavelength: float
    alpha: float = 0.0
    beta: float = 0.0
    phase_threshold: float = math.pi / 8

    def __post_init__(self):
        check_wavelength(self.wavelength)
        check_phase_threshold(self.phase_threshold)
        for name in ("alpha", "beta"):
            _check_interval(name, getattr(self, name), -HALF_PI, HALF_PI)

    @property
    def path_budget(self) -> float:
        """Allowed spread of effective distance, lambda * phi / (2 pi)."""
        return self.wavelength * self.phase_threshold / (2 * math.pi)


@dataclass(frozen=True)
class LinkConfig:
    """Full link description: family, both arrays, Tx orientation, placement."""

    family: Family
    tx: ArraySpec
    rx: ArraySpec
    link: LinkGeometry
    orientation: Orientation = field(default_factory=Orientation)

    def __post_init__(self):
        object.__setattr__(self, "family", parse_family(self.family))
        tx_kind, rx_kind = self.family.kinds
        if self.tx.kind is not tx_kind or self.rx.kind is not rx_kind:
            raise DomainError(
                f"family {self.family.value} needs tx={tx_kind.value}, rx={rx_kind.value}; "
                f"got tx={self.tx.kind.value}, rx={self.rx.kind.value}"
            )
        check_angles(
            self.family,
            theta=self.orientation.theta,
            phi_rot=self.orientation.phi_rot,
            alpha=self.link.alpha,
            beta=self.link.beta,
        )

    @property
    def min_separation(self) -> float:
        return min_separation(self.tx, self.rx)

    def with_r(self, r: float) -> LinkConfig:
        link = LinkGeometry(
            r=r,
            wavelength=self.link.wavelength,
            alpha=self.link.alpha,
            beta=self.link.beta,
            phase_threshold=self.link.phase_threshold,
        )
        return LinkConfig(self.family, self.tx, self.rx, link, self.orientation)


def _check_interval(name, value, lo, hi):
    if not math.isfinite(value) or value < lo - ANGLE_TOL or value > hi + ANGLE_TOL:
        raise DomainError(f"{name}={value!r} outside [{lo:.6g}, {hi:.6g}]")


def check_wavelength(wavelength):
    if not (math.isfinite(wavelength) and wavelength > 0):
        raise DomainError(f"wavelength must be > 0, got {wavelength!r}")


def check_phase_threshold(varphi):
    if not (math.isfinite(varphi) and 0 < varphi <= math.pi + ANGLE_TOL):
        raise DomainError(f"phase threshold must lie in (0, pi], got {varphi!r}")


def check_aperture(name, value):
    if not (math.isfinite(value) and value >= 0):
        raise DomainError(f"{name} must be >= 0, got {value!r}")


def check_angles(family: Family, theta=0.0, phi_rot=0.0, alpha=0.0, beta=0.0):
    """Reject angles outside the family's domain or set on unused axes."""
    used = family.angles
    given = {"theta": theta, "phi_rot": phi_rot, "alpha": alpha, "beta": beta}
    for name, value in given.items():
        if name not in used and value != 0:
            raise DomainError(f"family {family.value} does not use {name} (got {value!r})")
    _check_interval("alpha", alpha, -HALF_PI, HALF_PI)
    _check_interval("beta", beta, -HALF_PI, HALF_PI)
    _check_interval("phi_rot", phi_rot, -HALF_PI, HALF_PI)
    if family.off_boresight and "theta" in used:
        # theta is only meaningful relative to the link direction
        _check_interval("theta", theta, alpha - HALF_PI, alpha + HALF_PI)
    else:
        _check_interval("theta", theta, -HALF_PI, HALF_PI)


def min_separation(tx: ArraySpec, rx: ArraySpec) -> float:
    """Smallest admissible centre separation (sum of array radii)."""
    return tx.radius + rx.radius


def rotation_x(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotation_z(phi_rot: float) -> np.ndarray:
    c, s = math.cos(phi_rot), math.sin(phi_rot)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation(theta: float, phi_rot: float) -> np.ndarray:
    """Composite Tx rotation ``R_z(phi_rot) @ R_x(theta)``."""
    return rotation_z(phi_rot) @ rotation_x(theta)


def axis_offsets(n: int, spacing: float) -> np.ndarray:
    """Centred 1-D offsets ``(k - (n-1)/2) * spacing``."""
    return (np.arange(n) - (n - 1) / 2) * spacing


def element_offsets(spec: ArraySpec) -> np.ndarray:
    """Local element coordinates, shape ``(count, 3)``.

    Linear arrays lie on the local z-axis; planar arrays span x (first,
    slow index) and z (second, fast index).
    """
    ax = axis_offsets(spec.n, spec.spacing)
    out = np.zeros((spec.count, 3))
    if spec.kind is ArrayKind.LINEAR:
        out[:, 2] = ax
    elif spec.kind is ArrayKind.PLANAR:
        out[:, 0] = np.repeat(ax, spec.n)
        out[:, 2] = np.tile(ax, spec.n)
    return out


def link_unit_vector(alpha: float, beta: float = 0.0) -> np.ndarray:
    """Unit vector from the Rx centre toward the Tx centre."""
    ca = math.cos(alpha)
    return np.array([math.sin(beta) * ca, math.cos(beta) * ca, math.sin(alpha)])


def l2l_effective_distance(r, d_tx, d_rx, theta, alpha=0.0):
    """Coplanar ULA pair: exact distance plus Tx and Rx steering terms.

    No domain checks; broadcasts over array arguments.
    """
    tp = np.subtract(theta, alpha)
    along = d_tx * np.sin(tp) + d_rx * np.sin(alpha)
    across = d_tx * np.cos(tp) - d_rx * np.cos(alpha)
    return np.sqrt((r - along) ** 2 + across**2) + along


def l2o_effective_distance(r, d_rx, alpha):
    """Point Tx against a ULA Rx."""
    return np.sqrt((r - d_rx * np.sin(alpha)) ** 2 + (d_rx * np.cos(alpha)) ** 2) + d_rx * np.sin(alpha)


def planar_effective_distance(r, rx, tx, theta, phi_rot, alpha, beta=0.0):
    """Effective distance from the component expansion of ``u = d_rx - R d_tx``.

    ``rx`` and ``tx`` are local offsets ``(x, 0, z)``; Tx offsets are rotated
    here.  Works for planar, linear and point arrays alike.
    """
    rx = np.asarray(rx, dtype=float)
    tx = np.asarray(tx, dtype=float)
    ci, si = math.cos(phi_rot), math.sin(phi_rot)
    ct, st = math.cos(theta), math.sin(theta)
    di, dj = tx[..., 0], tx[..., 2]
    ux = rx[..., 0] - di * ci - dj * si * st
    uy = -di * si + dj * ci * st
    uz = rx[..., 2] - dj * ct
    e = link_unit_vector(alpha, beta)
    p = e[0] * ux + e[1] * uy + e[2] * uz
    return np.sqrt(r * r - 2 * r * p + ux * ux + uy * uy + uz * uz) + p


def effective_distance(config: LinkConfig, tx_index: int, rx_index: int) -> float:
    """Effective distance of one element pair, evaluated without expansion."""
    if not 0 <= tx_index < config.tx.count:
        raise DomainError(f"tx index {tx_index} out of range [0, {config.tx.count})")
    if not 0 <= rx_index < config.rx.count:
        raise DomainError(f"rx index {rx_index} out of range [0, {config.rx.count})")
    r = config.link.r
    if r < config.min_separation:
        raise DomainError(f"r={r!r} below minimum separation {config.min_separation:.6g}")

    tx = element_offsets(config.tx)[tx_index]
    rx = element_offsets(config.rx)[rx_index]
    theta, phi_rot = config.orientation.theta, config.orientation.phi_rot
    alpha, beta = config.link.alpha, config.link.beta
    fam = config.family
    if fam in (Family.L2L_ON, Family.L2L_OFF):
        return float(l2l_effective_distance(r, tx[2], rx[2], theta, alpha))
    if fam is Family.L2O:
        return float(l2o_effective_distance(r, rx[2], alpha))
    return float(planar_effective_distance(r, rx, tx, theta, phi_rot, alpha, beta))
