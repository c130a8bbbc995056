"""Brute-force boundary search straight from the phase-spread definition.

For a trial separation ``r`` every Tx/Rx element pair is placed explicitly in
3-D, its exact distance is computed and the Tx/Rx pre-steering path terms are
added.  The boundary is the smallest ``r`` beyond which the spread of these
effective distances never exceeds ``wavelength * varphi / (2 pi)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form
from .errors import BracketError, ConfigError, DomainError
from .geometry import (
    SPEED_OF_LIGHT,
    ArrayKind,
    ArraySpec,
    Family,
    LinkConfig,
    LinkGeometry,
    Orientation,
    element_offsets,
    link_unit_vector,
    parse_family,
    rotation,
)

# pairs evaluated per block; bounds memory in Full mode
_BLOCK_PAIRS = 1 << 20


class Mode(enum.Enum):
    FULL = "full"
    HULL = "hull"


@dataclass(frozen=True)
class SearchSettings:
    """``None`` for r_min / r_max selects the defaults documented on :func:`oracle_rf`."""

    r_min: float | None = None
    r_max: float | None = None
    coarse_steps: int = 64
    bisect_tol: float = 1e-4

    def __post_init__(self):
        if self.coarse_steps < 2:
            raise DomainError("coarse_steps must be >= 2")
        if not self.bisect_tol > 0:
            raise DomainError("bisect_tol must be > 0")


@dataclass(frozen=True)
class OracleConfig:
    link: LinkConfig
    search: SearchSettings = field(default_factory=SearchSettings)
    mode: Mode = Mode.HULL

    @property
    def family(self) -> Family:
        return self.link.family


@dataclass(frozen=True)
class OracleResult:
    rf: float
    r_min: float
    r_max: float
    evaluations: int
    clipped: bool = False
    degenerate: bool = False
    non_monotone: bool = False


@dataclass(frozen=True)
class ValidationRecord:
    family: Family
    params: dict
    oracle_rf: float
    closed_form_rf: float
    abs_error: float
    rel_error: float
    oracle: OracleResult | None = None


def make_config(
    family: Family | str,
    d1: float,
    d2: float,
    wavelength: float,
    varphi: float = closed_form.DEFAULT_VARPHI,
    theta: float = 0.0,
    phi_rot: float = 0.0,
    alpha: float = 0.0,
    beta: float = 0.0,
    spacing: float | None = None,
    mode: Mode | str = Mode.HULL,
    search: SearchSettings | None = None,
) -> OracleConfig:
    """Oracle configuration for a family at one parameter point.

    Arrays are built from the apertures with pitch near ``spacing``
    (default half a wavelength); point terminals ignore their aperture.
    """
    fam = parse_family(family)
    pitch = wavelength / 2 if spacing is None else spacing
    tx_kind, rx_kind = fam.kinds
    tx = ArraySpec.from_aperture(tx_kind, d1, pitch)
    rx = ArraySpec.from_aperture(rx_kind, d2, pitch)
    # r is a placeholder; the search overrides it
    link = LinkGeometry(
        r=max(tx.radius + rx.radius, 1.0), wavelength=wavelength, alpha=alpha, beta=beta, phase_threshold=varphi
    )
    cfg = LinkConfig(fam, tx, rx, link, Orientation(theta, phi_rot))
    return OracleConfig(cfg, search or SearchSettings(), Mode(mode))


def hull_mask(spec: ArraySpec) -> np.ndarray:
    """Boolean mask over :func:`element_offsets` selecting boundary elements plus the centre."""
    n = spec.n
    if spec.kind is ArrayKind.POINT or n == 1:
        return np.ones(spec.count, dtype=bool)
    if n % 2 == 0:
        raise DomainError(f"hull mode needs an odd element count (centre element), got n={n}")
    idx = np.arange(n)
    edge = (idx == 0) | (idx == n - 1)
    centre = n // 2
    if spec.kind is ArrayKind.LINEAR:
        mask = edge.copy()
        mask[centre] = True
        return mask
    i = np.repeat(idx, n)
    j = np.tile(idx, n)
    mask = edge[i] | edge[j]
    mask[centre * n + centre] = True
    return mask


def _elements(spec: ArraySpec, mode: Mode) -> np.ndarray:
    off = element_offsets(spec)
    if mode is Mode.HULL:
        off = off[hull_mask(spec)]
    return off


def _rotate(offsets: np.ndarray, rot: np.ndarray) -> np.ndarray:
    # explicit products keep per-element arithmetic independent of array shape
    x, y, z = offsets[:, 0], offsets[:, 1], offsets[:, 2]
    return np.stack(
        [
            rot[0, 0] * x + rot[0, 1] * y + rot[0, 2] * z,
            rot[1, 0] * x + rot[1, 1] * y + rot[1, 2] * z,
            rot[2, 0] * x + rot[2, 1] * y + rot[2, 2] * z,
        ],
        axis=1,
    )


class _PairSet:
    """Pre-rotated element sets for repeated spread evaluation."""

    def __init__(self, config: OracleConfig):
        lk = config.link
        self.u = link_unit_vector(lk.link.alpha, lk.link.beta)
        self.rx = _elements(lk.rx, config.mode)
        rot = rotation(lk.orientation.theta, lk.orientation.phi_rot)
        self.tx = _rotate(_elements(lk.tx, config.mode), rot)
        u = self.u
        self.rx_steer = self.rx[:, 0] * u[0] + self.rx[:, 1] * u[1] + self.rx[:, 2] * u[2]
        self.tx_steer = self.tx[:, 0] * u[0] + self.tx[:, 1] * u[1] + self.tx[:, 2] * u[2]

    def effective(self, r: float, tx_slice=slice(None)) -> np.ndarray:
        """Effective distances, shape ``(n_tx, n_rx)`` for the given Tx rows."""
        tx = self.tx[tx_slice]
        u = self.u
        dx = self.rx[None, :, 0] - (r * u[0] + tx[:, 0])[:, None]
        dy = self.rx[None, :, 1] - (r * u[1] + tx[:, 1])[:, None]
        dz = self.rx[None, :, 2] - (r * u[2] + tx[:, 2])[:, None]
        dist = np.sqrt(dx * dx + dy * dy + dz * dz)
        return dist + self.rx_steer[None, :] - self.tx_steer[tx_slice, None]

    def spread(self, r: float) -> float:
        rows = max(1, _BLOCK_PAIRS // max(1, len(self.rx)))
        hi, lo = -math.inf, math.inf
        for start in range(0, len(self.tx), rows):
            block = self.effective(r, slice(start, start + rows))
            hi = max(hi, float(block.max()))
            lo = min(lo, float(block.min()))
        return hi - lo


def _check_r(config: OracleConfig, r: float):
    floor = config.link.min_separation
    if not r >= floor:
        raise DomainError(f"r={r!r} below minimum separation {floor:.6g}")


def phase_spread(config: OracleConfig, r: float) -> float:
    """Max minus min effective distance over all enumerated element pairs."""
    _check_r(config, r)
    return _PairSet(config).spread(r)


def predicted_rf(config: OracleConfig, exact: bool = True) -> float:
    """Closed-form boundary matching the configuration's family."""
    lk = config.link
    return closed_form.evaluate(
        lk.family,
        lk.tx.aperture,
        lk.rx.aperture,
        lk.link.wavelength,
        lk.link.phase_threshold,
        theta=lk.orientation.theta,
        phi_rot=lk.orientation.phi_rot,
        alpha=lk.link.alpha,
        beta=lk.link.beta,
        exact=exact,
    ).distance


def search_bounds(config: OracleConfig) -> tuple[float, float]:
    """Resolved ``(r_min, r_max)``.

    Defaults: ``r_min`` is the minimum separation (or ``bisect_tol`` when both
    terminals are points); ``r_max`` is four times the closed-form prediction,
    never less than ``4 * r_min``.
    """
    s = config.search
    floor = config.link.min_separation
    r_min = s.r_min if s.r_min is not None else max(floor, s.bisect_tol)
    if r_min < floor:
        raise DomainError(f"r_min={r_min!r} below minimum separation {floor:.6g}")
    if s.r_max is not None:
        r_max = s.r_max
    else:
        r_max = max(4 * predicted_rf(config), 4 * r_min, r_min + 10 * s.bisect_tol)
    if not r_max > r_min:
        raise DomainError(f"r_max={r_max!r} must exceed r_min={r_min!r}")
    return r_min, r_max


def oracle_rf(config: OracleConfig) -> OracleResult:
    """Smallest ``r`` such that the spread stays within budget at every sampled ``r' >= r``.

    A log-spaced sweep descends from ``r_max`` to the first violation, the
    remaining samples are still evaluated to flag non-monotone spread, and the
    last crossing is refined by bisection to ``bisect_tol``.
    """
    lk = config.link
    budget = lk.link.path_budget
    r_min, r_max = search_bounds(config)
    if lk.tx.count == 1 and lk.rx.count == 1:
        return OracleResult(r_min, r_min, r_max, 0, clipped=True, degenerate=True)

    pairs = _PairSet(config)
    evals = 1
    if pairs.spread(r_max) > budget:
        raise BracketError(f"phase spread still above budget at r_max={r_max:.6g} m")

    grid = np.geomspace(r_max, r_min, config.search.coarse_steps)
    first_fail = None
    non_monotone = False
    for k in range(1, len(grid)):
        ok = pairs.spread(grid[k]) <= budget
        evals += 1
        if first_fail is None and not ok:
            first_fail = k
        elif first_fail is not None and ok:
            non_monotone = True
    if first_fail is None:
        return OracleResult(r_min, r_min, r_max, evals, clipped=True, non_monotone=non_monotone)

    lo, hi = float(grid[first_fail]), float(grid[first_fail - 1])
    while hi - lo > config.search.bisect_tol:
        mid = 0.5 * (lo + hi)
        evals += 1
        if pairs.spread(mid) <= budget:
            hi = mid
        else:
            lo = mid
    return OracleResult(hi, r_min, r_max, evals, non_monotone=non_monotone)


def config_params(config: OracleConfig) -> dict:
    lk = config.link
    return {
        "family": lk.family.value,
        "d1": lk.tx.aperture,
        "d2": lk.rx.aperture,
        "n_tx": lk.tx.n,
        "n_rx": lk.rx.n,
        "wavelength": lk.link.wavelength,
        "varphi": lk.link.phase_threshold,
        "theta": lk.orientation.theta,
        "phi_rot": lk.orientation.phi_rot,
        "alpha": lk.link.alpha,
        "beta": lk.link.beta,
        "mode": config.mode.value,
    }


def validate(config: OracleConfig, selector: Family | str | None = None, exact: bool = True) -> ValidationRecord:
    """Run the oracle and compare with the closed form named by ``selector``."""
    fam = config.family if selector is None else parse_family(selector)
    if fam is not config.family:
        raise ConfigError(f"closed form {fam.value} does not describe a {config.family.value} configuration")
    res = oracle_rf(config)
    cf = predicted_rf(config, exact=exact)
    err = abs(res.rf - cf)
    rel = err / cf if cf > 0 else (0.0 if err == 0 else math.inf)
    return ValidationRecord(fam, config_params(config), res.rf, cf, err, rel, res)


# -- canned suites -----------------------------------------------------------

FIG3_D1, FIG3_D2 = 0.1, 0.05
FIG3_PHI = math.radians(60)


def fig3_configs(family: Family | str, points: int = 37, frequency: float = 300e9, **kw) -> list[OracleConfig]:
    """Off-boresight sweep with the Tx facing the link (theta = alpha).

    ``family`` is ``p2p-off-dual`` (phi_rot = 60 deg) or ``l2l-off``.
    """
    fam = parse_family(family)
    if fam not in (Family.P2P_OFF_DUAL, Family.L2L_OFF):
        raise ConfigError(f"fig3 suite covers p2p-off-dual and l2l-off, not {fam.value}")
    lam = SPEED_OF_LIGHT / frequency
    phi = FIG3_PHI if fam is Family.P2P_OFF_DUAL else 0.0
    out = []
    for alpha in np.linspace(-math.pi / 2, math.pi / 2, points):
        a = float(alpha)
        out.append(make_config(fam, FIG3_D1, FIG3_D2, lam, theta=a, phi_rot=phi, alpha=a, **kw))
    return out
