"""Branch-dominance maps and boundary landscapes over 2-D parameter grids."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import closed_form
from .closed_form import ThresholdResult
from .errors import ConfigError, DomainError
from .geometry import Family, parse_family

TIE_RTOL = 1e-12
ANGLE_AXES = ("theta", "theta_prime", "phi_rot", "alpha", "beta", "varphi")
LENGTH_AXES = ("d1", "d2")


class Label(enum.IntEnum):
    A = 0
    B = 1
    TIE = 2


def label(a: float, b: float) -> Label:
    if abs(a - b) <= TIE_RTOL * max(abs(a), abs(b)):
        return Label.TIE
    return Label.A if a > b else Label.B


@dataclass(frozen=True)
class Grid:
    axis1: str
    samples1: np.ndarray
    axis2: str
    samples2: np.ndarray

    def __post_init__(self):
        for name in (self.axis1, self.axis2):
            if name not in ANGLE_AXES + LENGTH_AXES:
                raise ConfigError(f"unknown grid axis {name!r}")
        if self.axis1 == self.axis2:
            raise ConfigError("grid axes must differ")
        for attr in ("samples1", "samples2"):
            s = np.atleast_1d(np.asarray(getattr(self, attr), dtype=float))
            if s.ndim != 1 or s.size == 0 or np.any(np.diff(s) <= 0):
                raise DomainError(f"{attr} must be a non-empty strictly increasing sequence")
            object.__setattr__(self, attr, s)

    @property
    def shape(self):
        return self.samples1.size, self.samples2.size

    def points(self):
        for i, x in enumerate(self.samples1):
            for j, y in enumerate(self.samples2):
                yield i, j, float(x), float(y)


def angle_grid(axis1="theta_prime", axis2="alpha", steps=181, lo=-math.pi / 2, hi=math.pi / 2) -> Grid:
    """Square grid over two angles; 181 steps gives 1-degree spacing."""
    s = np.linspace(lo, hi, steps)
    return Grid(axis1, s, axis2, s.copy())


@dataclass(frozen=True)
class RegionMap:
    grid: Grid
    labels: np.ndarray | None = None
    values: np.ndarray | None = None
    branch_a: np.ndarray | None = None
    branch_b: np.ndarray | None = None
    threshold: ThresholdResult | None = None

    def count(self, which: Label) -> int:
        return int(np.sum(self.labels == int(which))) if self.labels is not None else 0


def _fill(grid: Grid, fn):
    a = np.empty(grid.shape)
    b = np.empty(grid.shape)
    for i, j, x, y in grid.points():
        a[i, j], b[i, j] = fn(x, y)
    labels = np.vectorize(lambda p, q: int(label(p, q)), otypes=[np.int8])(a, b)
    return a, b, labels


def dominance_map_l2l(d1, d2, wavelength, varphi=closed_form.DEFAULT_VARPHI, grid: Grid | None = None) -> RegionMap:
    """Which ULA-to-ULA branch wins over a (theta_prime, alpha) grid, plus the provable box."""
    grid = grid or angle_grid("theta_prime", "alpha")
    if {grid.axis1, grid.axis2} != {"theta_prime", "alpha"}:
        raise ConfigError("ULA dominance map needs axes theta_prime and alpha")
    first_is_tp = grid.axis1 == "theta_prime"

    def branches(x, y):
        tp, al = (x, y) if first_is_tp else (y, x)
        return closed_form.l2l_off_branches(d1, d2, al + tp, al, wavelength, varphi)

    a, b, labels = _fill(grid, branches)
    th = closed_form.theta_threshold(d1, d2, wavelength, varphi)
    return RegionMap(grid, labels, np.maximum(a, b), a, b, th)


def dominance_map_p2p(
    d1, d2, wavelength, varphi=closed_form.DEFAULT_VARPHI, alpha=0.0, grid: Grid | None = None
) -> RegionMap:
    """Which dual-angle UPA branch wins over a (theta_prime, phi_rot) grid at fixed alpha."""
    grid = grid or angle_grid("theta_prime", "phi_rot")
    if {grid.axis1, grid.axis2} != {"theta_prime", "phi_rot"}:
        raise ConfigError("UPA dominance map needs axes theta_prime and phi_rot")
    first_is_tp = grid.axis1 == "theta_prime"

    def branches(x, y):
        tp, phi = (x, y) if first_is_tp else (y, x)
        return closed_form.p2p_off_dual_branches(d1, d2, alpha + tp, phi, alpha, wavelength, varphi)

    a, b, labels = _fill(grid, branches)
    return RegionMap(grid, labels, np.maximum(a, b), a, b)


_TWO_BRANCH = {
    Family.L2L_OFF: lambda p: closed_form.l2l_off_branches(
        p["d1"], p["d2"], p["theta"], p["alpha"], p["wavelength"], p["varphi"]
    ),
    Family.P2P_OFF_DUAL: lambda p: closed_form.p2p_off_dual_branches(
        p["d1"], p["d2"], p["theta"], p["phi_rot"], p["alpha"], p["wavelength"], p["varphi"]
    ),
}


def boundary_landscape(family: Family | str, fixed: dict, grid: Grid, exact: bool = True) -> RegionMap:
    """Closed-form boundary at every grid point.

    ``fixed`` supplies the parameters not spanned by the grid (``d1``, ``d2``,
    ``wavelength``, optional ``varphi`` and angles).  A ``theta_prime`` axis
    or entry is converted to ``theta = alpha + theta_prime``.  Labels are
    filled for the two-branch families when ``exact`` is set.
    """
    fam = parse_family(family)
    for axis in (grid.axis1, grid.axis2):
        _check_axis(fam, axis)
    base = {"varphi": closed_form.DEFAULT_VARPHI, "theta": 0.0, "phi_rot": 0.0, "alpha": 0.0, "beta": 0.0}
    base.update(fixed)
    for key in ("d1", "d2", "wavelength"):
        if key not in base and key not in (grid.axis1, grid.axis2):
            raise ConfigError(f"missing fixed parameter {key}")
    branchy = exact and fam in _TWO_BRANCH
    values = np.empty(grid.shape)
    a = np.empty(grid.shape) if branchy else None
    b = np.empty(grid.shape) if branchy else None
    for i, j, x, y in grid.points():
        p = dict(base)
        p[grid.axis1] = x
        p[grid.axis2] = y
        if "theta_prime" in p:
            p["theta"] = p.pop("theta_prime") + p["alpha"]
        if branchy:
            a[i, j], b[i, j] = _TWO_BRANCH[fam](p)
            values[i, j] = max(a[i, j], b[i, j])
        else:
            kw = {k: p[k] for k in fam.angles}
            values[i, j] = closed_form.evaluate(fam, p["d1"], p["d2"], p["wavelength"], p["varphi"], exact=exact, **kw).distance
    labels = None
    if branchy:
        labels = np.vectorize(lambda p, q: int(label(p, q)), otypes=[np.int8])(a, b)
    return RegionMap(grid, labels, values, a, b)


def _check_axis(fam: Family, axis: str):
    used = set(fam.angles) | {"d1", "d2", "varphi"}
    if "theta" in fam.angles and fam.off_boresight:
        used.add("theta_prime")
    if axis not in used:
        raise ConfigError(f"family {fam.value} does not depend on {axis}")


def boundary_sweep(family: Family | str, fixed: dict, axis: str, samples, exact: bool = True):
    """Closed-form results along one parameter axis, as a list of ``BoundaryResult``."""
    fam = parse_family(family)
    _check_axis(fam, axis)
    base = {"varphi": closed_form.DEFAULT_VARPHI, "theta": 0.0, "phi_rot": 0.0, "alpha": 0.0, "beta": 0.0}
    base.update(fixed)
    out = []
    for x in np.asarray(samples, dtype=float):
        p = dict(base)
        p[axis] = float(x)
        if "theta_prime" in p:
            p["theta"] = p.pop("theta_prime") + p["alpha"]
        kw = {k: p[k] for k in fam.angles}
        out.append(closed_form.evaluate(fam, p["d1"], p["d2"], p["wavelength"], p["varphi"], exact=exact, **kw))
    return out
