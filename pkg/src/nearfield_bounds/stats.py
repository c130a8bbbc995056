"""Monte Carlo boundary statistics under random angular misalignment."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from . import closed_form
from .errors import ConfigError, DomainError
from .geometry import Family, parse_family

CHUNK = 1 << 16
# fixed stream index per angle so adding an angle never reshuffles the others
_ANGLE_STREAM = {"theta": 0, "theta_prime": 1, "phi_rot": 2, "alpha": 3, "beta": 4}


def worker_count() -> int:
    """Worker cap from ``NEARFIELD_THREADS`` (0 or unset = one per CPU)."""
    raw = os.environ.get("NEARFIELD_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"NEARFIELD_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError("NEARFIELD_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


@dataclass(frozen=True)
class AngularDistribution:
    """Von Mises density ``exp(kappa_c cos(x - mu))`` restricted to ``[lo, hi]``.

    ``lo == hi`` is accepted as a point mass at ``mu``.
    """

    mu: float = 0.0
    kappa_c: float = 10.0
    lo: float = -math.pi / 2
    hi: float = math.pi / 2

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo > self.hi:
            raise DomainError(f"invalid truncation interval [{self.lo!r}, {self.hi!r}]")
        if self.hi - self.lo > 2 * math.pi:
            raise DomainError("truncation interval longer than 2*pi")
        if not self.lo <= self.mu <= self.hi:
            raise DomainError(f"mu={self.mu!r} outside [{self.lo!r}, {self.hi!r}]")
        if not (math.isfinite(self.kappa_c) and self.kappa_c >= 0):
            raise DomainError(f"kappa_c must be >= 0, got {self.kappa_c!r}")

    def acceptance(self) -> tuple[float, float]:
        """Exact acceptance rates of the (von Mises, uniform) rejection proposals."""
        k, mu, lo, hi = self.kappa_c, self.mu, self.lo, self.hi

        def envelope(x):
            return math.exp(k * (math.cos(x - mu) - 1))

        mass, _ = integrate.quad(envelope, lo, hi, points=[mu], limit=200)
        # von Mises pdf is exp(k(cos-1)) / (2 pi i0e(k))
        vm = mass / (2 * math.pi * special.i0e(k))
        unif = mass / (hi - lo)
        return float(vm), float(unif)


def _sample_chunk(dist: AngularDistribution, size: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    if dist.lo == dist.hi:
        return np.full(size, dist.mu)
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    if dist.kappa_c == 0:
        return rng.uniform(dist.lo, dist.hi, size)
    acc_vm, acc_unif = dist.acceptance()
    use_vm = acc_vm >= acc_unif
    acc = max(acc_vm, acc_unif)
    out = np.empty(size)
    filled = 0
    while filled < size:
        need = size - filled
        m = int(math.ceil(need / acc * 1.1)) + 16
        if use_vm:
            x = rng.vonmises(dist.mu, dist.kappa_c, m)
            x = dist.lo + np.mod(x - dist.lo, 2 * math.pi)
            x = x[x <= dist.hi]
        else:
            x = rng.uniform(dist.lo, dist.hi, m)
            keep = rng.random(m) < np.exp(dist.kappa_c * (np.cos(x - dist.mu) - 1))
            x = x[keep]
        take = min(len(x), need)
        out[filled : filled + take] = x[:take]
        filled += take
    return out


def sample_tvm(dist: AngularDistribution, n: int, seed: int | np.random.SeedSequence) -> np.ndarray:
    """``n`` draws from a truncated von Mises distribution.

    Draws come in fixed-size chunks, each from its own spawned stream, so the
    result is identical for any worker count and ``sample_tvm(d, n, s)`` is a
    prefix of ``sample_tvm(d, m, s)`` for ``m > n``.
    """
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n}")
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    n_chunks = -(-n // CHUNK)
    children = [np.random.SeedSequence(root.entropy, spawn_key=root.spawn_key + (i,)) for i in range(n_chunks)]
    workers = min(worker_count(), n_chunks)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda ss: _sample_chunk(dist, CHUNK, ss), children))
    else:
        parts = [_sample_chunk(dist, CHUNK, ss) for ss in children]
    return np.concatenate(parts)[:n]


@dataclass(frozen=True)
class EmpiricalDistribution:
    samples: np.ndarray

    def __post_init__(self):
        s = np.sort(np.asarray(self.samples, dtype=float))
        if s.size == 0:
            raise DomainError("empirical distribution needs at least one sample")
        object.__setattr__(self, "samples", s)

    @property
    def n(self) -> int:
        return self.samples.size


def empirical_cdf(dist: EmpiricalDistribution, x):
    """Fraction of samples ``<= x`` (right-continuous step function)."""
    return np.searchsorted(dist.samples, x, side="right") / dist.n


def empirical_pdf(dist: EmpiricalDistribution, bins="fd"):
    """Density histogram ``(edges, density)``; Freedman-Diaconis binning by default."""
    density, edges = np.histogram(dist.samples, bins=bins, density=True)
    return edges, density


def required_angles(family: Family) -> tuple[str, ...]:
    return family.angles


def monte_carlo_rf(
    family: Family | str,
    fixed: dict,
    angles: dict,
    n: int,
    seed: int,
    exact: bool = True,
) -> EmpiricalDistribution:
    """Boundary samples with the family's angles drawn independently.

    ``fixed`` holds ``d1, d2, wavelength`` and optionally ``varphi``.
    ``angles`` maps each angle the family uses to a float or an
    :class:`AngularDistribution`; off-boresight families may give
    ``theta_prime`` (rotation relative to the link) instead of ``theta``.
    """
    fam = parse_family(family)
    angles = dict(angles)
    unknown = set(angles) - set(_ANGLE_STREAM)
    if unknown:
        raise ConfigError(f"unknown angle(s): {', '.join(sorted(unknown))}")
    needed = list(fam.angles)
    if "theta_prime" in angles:
        if not (fam.off_boresight and "theta" in needed):
            raise ConfigError(f"theta_prime only applies to off-boresight rotated families, not {fam.value}")
        if "theta" in angles:
            raise ConfigError("give theta or theta_prime, not both")
        needed[needed.index("theta")] = "theta_prime"
    missing = [a for a in needed if a not in angles]
    if missing:
        raise ConfigError(f"family {fam.value} needs angle(s): {', '.join(missing)}")
    extra = set(angles) - set(needed)
    if extra:
        raise ConfigError(f"family {fam.value} does not use: {', '.join(sorted(extra))}")
    for key in ("d1", "d2", "wavelength"):
        if key not in fixed:
            raise ConfigError(f"missing fixed parameter {key}")

    root = np.random.SeedSequence(seed)
    draws = {}
    for name in needed:
        spec = angles[name]
        if isinstance(spec, AngularDistribution):
            ss = np.random.SeedSequence(root.entropy, spawn_key=(_ANGLE_STREAM[name],))
            draws[name] = sample_tvm(spec, n, ss)
        else:
            draws[name] = np.full(n, float(spec))
    if "theta_prime" in draws:
        draws["theta"] = draws.pop("theta_prime") + draws["alpha"]

    d1, d2, lam = fixed["d1"], fixed["d2"], fixed["wavelength"]
    varphi = fixed.get("varphi", closed_form.DEFAULT_VARPHI)
    out = np.empty(n)
    cols = {k: v.tolist() for k, v in draws.items()}
    for i in range(n):
        kw = {k: v[i] for k, v in cols.items()}
        out[i] = closed_form.evaluate(fam, d1, d2, lam, varphi, exact=exact, **kw).distance
    return EmpiricalDistribution(out)


def cdf_table(dist: EmpiricalDistribution, points: int = 1000):
    """``(values, cdf)`` on an even grid from the smallest to the largest sample."""
    lo, hi = dist.samples[0], dist.samples[-1]
    xs = np.linspace(lo, hi, points) if hi > lo else np.array([lo])
    return xs, empirical_cdf(dist, xs)
