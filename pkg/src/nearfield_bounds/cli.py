"""Command-line frontend: ``nearfield-bounds <command> [options]``.

Angles are given in degrees here and converted to radians before anything
else sees them.  Exit status: 0 ok, 1 validation tolerance exceeded,
2 configuration or domain error, 3 computation error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import closed_form, io, oracle, regions, stats
from .errors import ConfigError, DomainError, NearFieldError
from .geometry import (
    SPEED_OF_LIGHT,
    ArrayKind,
    Family,
    check_aperture,
    check_phase_threshold,
    check_wavelength,
    parse_family,
)

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2, 3
COMMANDS = ("compute", "sweep", "validate", "dominance", "landscape", "stats", "table")
DEFAULT_FREQ_GHZ = 300.0

# CLI angle flag stem -> internal angle name
ANGLE_FLAGS = {"theta": "theta", "theta_prime": "theta_prime", "phi": "phi_rot", "alpha": "alpha", "beta": "beta"}
# sweep / landscape axis name -> (internal name, unit suffix)
AXES = {
    "theta": ("theta", "deg"),
    "theta-prime": ("theta_prime", "deg"),
    "phi": ("phi_rot", "deg"),
    "alpha": ("alpha", "deg"),
    "beta": ("beta", "deg"),
    "varphi": ("varphi", "rad"),
    "d1": ("d1", "m"),
    "d2": ("d2", "m"),
}

DEFAULTS = {
    "format": "csv",
    "output": "-",
    "approx": False,
    "steps": 181,
    "start": -90.0,
    "stop": 90.0,
    "mode": "hull",
    "tolerance": 0.02,
    "points": 37,
    "coarse_steps": 64,
    "bisect_tol": 1e-4,
    "from1": -90.0,
    "to1": 90.0,
    "steps1": 181,
    "from2": -90.0,
    "to2": 90.0,
    "steps2": 181,
    "n": 100_000,
    "bins": "fd",
    "cdf_points": 1000,
}
# config-file keys that differ from their argparse dest
CONFIG_ALIASES = {"from": "start", "to": "stop"}


@dataclass
class RunConfig:
    command: str
    family: Family | None
    d1: float | None
    d2: float | None
    wavelength: float
    varphi: float
    angles: dict = field(default_factory=dict)  # radians, only the ones given
    exact: bool = True
    output: str = "-"
    fmt: str = "csv"
    seed: int | None = None
    options: dict = field(default_factory=dict)


@dataclass
class Table:
    columns: list
    rows: list
    comments: list = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            meta = dict(c.split("=", 1) for c in self.comments if "=" in c)
            return io.render_json(
                {"columns": self.columns, "rows": [dict(zip(self.columns, r)) for r in self.rows], "meta": meta}
            )
        return io.render_csv(self.columns, self.rows, self.comments)


# -- argument parsing ---------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("link parameters")
    g.add_argument("--family", help="configuration family, e.g. l2l-on, p2p-off-dual")
    g.add_argument("--d1", type=float, help="Tx aperture [m]")
    g.add_argument("--d2", type=float, help="Rx aperture [m]")
    g.add_argument("--wavelength", type=float, help="wavelength [m]")
    g.add_argument("--freq-ghz", type=float, help=f"carrier frequency [GHz] (default {DEFAULT_FREQ_GHZ:g})")
    g.add_argument("--varphi-rad", type=float, help="phase threshold [rad] (default pi/8)")
    for stem in ANGLE_FLAGS:
        g.add_argument(f"--{stem.replace('_', '-')}-deg", type=float, dest=f"{stem}_deg", help=f"{stem} [deg]")
    g.add_argument("--approx", action="store_true", default=None, help="use the approximate closed forms")
    o = p.add_argument_group("input/output")
    o.add_argument("--config", help="JSON file whose keys mirror the flags; flags win")
    o.add_argument("--output", help="output path ('-' = stdout)")
    o.add_argument("--format", choices=("csv", "json"))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="nearfield-bounds", description="Near-field boundary distances for array links.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("compute", parents=[common], help="closed-form boundary at one point")

    sp = sub.add_parser("sweep", parents=[common], help="closed form along one axis")
    sp.add_argument("--axis", choices=sorted(AXES), required=True)
    sp.add_argument("--from", dest="start", type=float, help="first sample (deg, rad for varphi, m for d1/d2)")
    sp.add_argument("--to", dest="stop", type=float, help="last sample")
    sp.add_argument("--steps", type=int)

    sp = sub.add_parser("validate", parents=[common], help="oracle vs closed form")
    sp.add_argument("--suite", choices=("fig3",), help="canned off-boresight alpha sweep")
    sp.add_argument("--points", type=int, help="suite sample count (default 37)")
    sp.add_argument("--mode", choices=("hull", "full"))
    sp.add_argument("--tolerance", type=float, help="max relative error (default 0.02)")
    sp.add_argument("--spacing", type=float, help="element pitch [m] (default wavelength/2)")
    sp.add_argument("--r-min", type=float)
    sp.add_argument("--r-max", type=float)
    sp.add_argument("--coarse-steps", type=int)
    sp.add_argument("--bisect-tol", type=float)

    sp = sub.add_parser("dominance", parents=[common], help="branch dominance map over (theta', alpha|phi)")
    sp.add_argument("--steps", type=int, help="grid steps per axis over [-90, 90] deg (default 181)")

    sp = sub.add_parser("landscape", parents=[common], help="closed form over a 2-D grid")
    for k in ("1", "2"):
        sp.add_argument(f"--axis{k}", choices=sorted(AXES), required=True)
        sp.add_argument(f"--from{k}", type=float)
        sp.add_argument(f"--to{k}", type=float)
        sp.add_argument(f"--steps{k}", type=int)

    sp = sub.add_parser("stats", parents=[common], help="Monte Carlo boundary distribution")
    for stem in ANGLE_FLAGS:
        sp.add_argument(f"--{stem.replace('_', '-')}", dest=stem, help="tvm:mu,kappa[,lo,hi] (deg) or a fixed angle in deg")
    sp.add_argument("--n", type=int, help="sample count (default 100000)")
    sp.add_argument("--seed", type=int, help="RNG seed (required)")
    sp.add_argument("--bins", help="histogram bins: integer or numpy rule (default fd)")
    sp.add_argument("--cdf-points", type=int)
    sp.add_argument("--pdf-output", help="PDF table path (default: <output stem>_pdf<suffix>)")
    sp.add_argument("--samples-output", help="optional raw sample dump")

    sub.add_parser("table", parents=[common], help="every closed form at one point")
    return parser


def _merge_config_file(ns: argparse.Namespace) -> set:
    """Fill unset flags from ``--config``; returns the dests set on the command line."""
    from_cli = {k for k, v in vars(ns).items() if v is not None}
    if ns.config is None:
        return from_cli
    try:
        with open(ns.config, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {ns.config}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    for key, value in doc.items():
        dest = key.lstrip("-").replace("-", "_")
        dest = CONFIG_ALIASES.get(dest, dest)
        if dest in ("command", "config") or dest not in vars(ns):
            raise ConfigError(f"unknown config key {key!r} for command {ns.command}")
        if dest in from_cli:
            continue
        setattr(ns, dest, value)
    # a flag for one of wavelength / frequency overrides both file entries
    if ("wavelength" in from_cli) != ("freq_ghz" in from_cli):
        drop = "freq_ghz" if "wavelength" in from_cli else "wavelength"
        setattr(ns, drop, None)
    return from_cli


def _float(name, value):
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return x


def parse_tvm(text: str, name: str):
    """``tvm:mu,kappa[,lo,hi]`` in degrees -> AngularDistribution; a bare number -> fixed radians."""
    text = str(text).strip()
    if not text.lower().startswith("tvm:"):
        return math.radians(_float(f"--{name}", text))
    parts = text[4:].split(",")
    if len(parts) not in (2, 4):
        raise ConfigError(f"--{name}: expected tvm:mu,kappa[,lo,hi], got {text!r}")
    mu, kappa = _float(f"--{name} mu", parts[0]), _float(f"--{name} kappa", parts[1])
    lo, hi = (-90.0, 90.0) if len(parts) == 2 else (_float(f"--{name} lo", parts[2]), _float(f"--{name} hi", parts[3]))
    return stats.AngularDistribution(math.radians(mu), kappa, math.radians(lo), math.radians(hi))


def parse_config(argv=None) -> RunConfig:
    """Parse flags (and an optional JSON config) into a validated ``RunConfig``."""
    ns = build_parser().parse_args(argv)
    _merge_config_file(ns)
    for k, v in DEFAULTS.items():
        if hasattr(ns, k) and getattr(ns, k) is None:
            setattr(ns, k, v)
    if ns.format not in ("csv", "json"):
        raise ConfigError(f"--format must be csv or json, got {ns.format!r}")

    if ns.wavelength is not None and ns.freq_ghz is not None:
        raise ConfigError("give --wavelength or --freq-ghz, not both")
    if ns.wavelength is not None:
        lam = _float("--wavelength", ns.wavelength)
    else:
        f = _float("--freq-ghz", DEFAULT_FREQ_GHZ if ns.freq_ghz is None else ns.freq_ghz)
        if not f > 0:
            raise DomainError(f"--freq-ghz must be > 0, got {f}")
        lam = SPEED_OF_LIGHT / (f * 1e9)
    check_wavelength(lam)
    varphi = closed_form.DEFAULT_VARPHI if ns.varphi_rad is None else _float("--varphi-rad", ns.varphi_rad)
    check_phase_threshold(varphi)

    family = None
    if ns.family is not None:
        family = parse_family(ns.family)
    elif ns.command != "table":
        raise ConfigError("--family is required")

    angles = {}
    for stem, name in ANGLE_FLAGS.items():
        v = getattr(ns, f"{stem}_deg")
        if v is not None:
            angles[name] = math.radians(_float(f"--{stem.replace('_', '-')}-deg", v))
    if "theta" in angles and "theta_prime" in angles:
        raise ConfigError("give --theta-deg or --theta-prime-deg, not both")

    d1 = None if ns.d1 is None else _float("--d1", ns.d1)
    d2 = None if ns.d2 is None else _float("--d2", ns.d2)
    suite = getattr(ns, "suite", None)
    if suite:
        if d1 is not None or d2 is not None or angles:
            raise ConfigError("the fig3 suite fixes apertures and angles; drop --d1/--d2 and angle flags")
    else:
        needs_d1 = family is None or family.kinds[0] is not ArrayKind.POINT
        sweeps = {getattr(ns, a, None) for a in ("axis", "axis1", "axis2")}
        if d1 is None and needs_d1 and "d1" not in sweeps:
            raise ConfigError("--d1 is required" + (f" for family {family.value}" if family else ""))
        if d2 is None and "d2" not in sweeps:
            raise ConfigError("--d2 is required")
    for name, v in (("--d1", d1), ("--d2", d2)):
        if v is not None:
            check_aperture(name, v)

    seed = getattr(ns, "seed", None)
    if ns.command == "stats" and seed is None:
        raise ConfigError("--seed is required for stats")

    skip = {"command", "family", "d1", "d2", "wavelength", "freq_ghz", "varphi_rad", "approx", "config", "output", "format", "seed"}
    skip |= {f"{s}_deg" for s in ANGLE_FLAGS}
    options = {k: v for k, v in vars(ns).items() if k not in skip}
    return RunConfig(
        ns.command, family, d1, d2, lam, varphi, angles, not ns.approx, str(ns.output), ns.format, seed, options
    )


# -- commands -----------------------------------------------------------------


def _used_angles(family: Family) -> set:
    used = set(family.angles)
    if family.off_boresight and "theta" in used:
        used.add("theta_prime")
    return used


def _check_family_angles(family: Family, names):
    extra = sorted(set(names) - _used_angles(family))
    if extra:
        raise DomainError(f"family {family.value} does not use: {', '.join(extra)}")


def _point_angles(cfg: RunConfig, family: Family) -> dict:
    """Keyword angles for ``closed_form.evaluate``; theta_prime becomes theta."""
    a = dict(cfg.angles)
    nonzero = [k for k, v in a.items() if v != 0]
    _check_family_angles(family, nonzero)
    if "theta_prime" in a:
        if "theta_prime" not in _used_angles(family):
            raise ConfigError(f"--theta-prime-deg needs an off-boresight rotated family, not {family.value}")
        a["theta"] = a.pop("theta_prime") + a.get("alpha", 0.0)
    return {k: v for k, v in a.items() if k in family.angles}


def _fixed(cfg: RunConfig) -> dict:
    out = {"d1": cfg.d1 if cfg.d1 is not None else 0.0, "wavelength": cfg.wavelength, "varphi": cfg.varphi}
    if cfg.d2 is not None:
        out["d2"] = cfg.d2
    out.update(cfg.angles)
    return out


def _result_cells(res: closed_form.BoundaryResult):
    a, b = res.branch_values if res.branch_values else (None, None)
    return [res.distance, res.branch.value, a, b]


RESULT_COLUMNS = ["distance_m", "branch", "branch_a_m", "branch_b_m"]


def _axis_samples(axis: str, start: float, stop: float, steps: int):
    name, unit = AXES[axis]
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    shown = np.linspace(start, stop, steps) if steps > 1 else np.array([start], dtype=float)
    internal = np.radians(shown) if unit == "deg" else shown
    return name, unit, shown, internal


def _grid_fixed(cfg: RunConfig, axes) -> dict:
    fixed = _fixed(cfg)
    _check_family_angles(cfg.family, [k for k in cfg.angles if cfg.angles[k] != 0])
    for name in axes:
        clash = {"theta": "theta_prime", "theta_prime": "theta"}.get(name)
        if name in cfg.angles or (clash and clash in cfg.angles):
            raise ConfigError(f"{name} is swept; drop its fixed flag")
    return fixed


def cmd_compute(cfg: RunConfig) -> tuple[Table, int]:
    fam = cfg.family
    res = closed_form.evaluate(fam, cfg.d1 or 0.0, cfg.d2, cfg.wavelength, cfg.varphi, exact=cfg.exact, **_point_angles(cfg, fam))
    return Table(["family"] + RESULT_COLUMNS, [[fam.value] + _result_cells(res)], [f"wavelength_m={cfg.wavelength:.9g}"]), EXIT_OK


def cmd_sweep(cfg: RunConfig) -> tuple[Table, int]:
    o = cfg.options
    name, unit, shown, internal = _axis_samples(o["axis"], o["start"], o["stop"], o["steps"])
    fixed = _grid_fixed(cfg, [name])
    results = regions.boundary_sweep(cfg.family, fixed, name, internal, exact=cfg.exact)
    col = f"{o['axis'].replace('-', '_')}_{unit}"
    rows = [[float(x)] + _result_cells(r) for x, r in zip(shown, results)]
    return Table([col] + RESULT_COLUMNS, rows, [f"family={cfg.family.value}"]), EXIT_OK


def cmd_validate(cfg: RunConfig) -> tuple[Table, int]:
    o = cfg.options
    search = oracle.SearchSettings(o["r_min"], o["r_max"], int(o["coarse_steps"]), float(o["bisect_tol"]))
    kw = {"mode": o["mode"], "search": search, "spacing": o["spacing"]}
    if o["suite"] == "fig3":
        configs = oracle.fig3_configs(cfg.family, int(o["points"]), SPEED_OF_LIGHT / cfg.wavelength, varphi=cfg.varphi, **kw)
    else:
        ang = _point_angles(cfg, cfg.family)
        configs = [oracle.make_config(cfg.family, cfg.d1 or 0.0, cfg.d2, cfg.wavelength, cfg.varphi, **ang, **kw)]

    def one(c):
        return oracle.validate(c, exact=cfg.exact)

    workers = min(stats.worker_count(), len(configs))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            records = list(pool.map(one, configs))
    else:
        records = [one(c) for c in configs]

    tol = float(o["tolerance"])
    cols = ["alpha_deg", "theta_deg", "phi_deg", "beta_deg", "oracle_rf_m", "closed_form_rf_m", "abs_error_m", "rel_error", "clipped", "exceeded"]
    rows, failed = [], 0
    for rec in records:
        p = rec.params
        bad = not rec.rel_error <= tol
        failed += bad
        rows.append(
            [math.degrees(p["alpha"]), math.degrees(p["theta"]), math.degrees(p["phi_rot"]), math.degrees(p["beta"]),
             rec.oracle_rf, rec.closed_form_rf, rec.abs_error, rec.rel_error, rec.oracle.clipped, bad]
        )
    comments = [f"family={cfg.family.value}", f"mode={o['mode']}", f"tolerance={tol:.9g}", f"failed={failed}"]
    return Table(cols, rows, comments), EXIT_TOLERANCE if failed else EXIT_OK


def _map_rows(rmap: regions.RegionMap, shown1, shown2):
    rows = []
    for i, j, _, _ in rmap.grid.points():
        lab = None if rmap.labels is None else int(rmap.labels[i, j])
        rows.append([float(shown1[i]), float(shown2[j]), lab, float(rmap.values[i, j])])
    return rows


def cmd_dominance(cfg: RunConfig) -> tuple[Table, int]:
    fam, steps = cfg.family, int(cfg.options["steps"])
    if cfg.d1 is None:
        raise ConfigError("--d1 is required")
    shown = np.linspace(-90.0, 90.0, steps)
    if fam is Family.L2L_OFF:
        if cfg.angles:
            raise ConfigError("the ULA dominance map spans theta' and alpha; drop angle flags")
        grid = regions.Grid("theta_prime", np.radians(shown), "alpha", np.radians(shown))
        rmap = regions.dominance_map_l2l(cfg.d1, cfg.d2, cfg.wavelength, cfg.varphi, grid)
        th = rmap.threshold
        comments = ["axis1=theta_prime", "axis2=alpha", f"kappa={th.kappa:.9g}", f"theta_th_deg={th.theta_th_deg:.9g}"]
    elif fam is Family.P2P_OFF_DUAL:
        if set(cfg.angles) - {"alpha"}:
            raise ConfigError("the UPA dominance map spans theta' and phi; only --alpha-deg may be fixed")
        alpha = cfg.angles.get("alpha", 0.0)
        grid = regions.Grid("theta_prime", np.radians(shown), "phi_rot", np.radians(shown))
        rmap = regions.dominance_map_p2p(cfg.d1, cfg.d2, cfg.wavelength, cfg.varphi, alpha, grid)
        comments = ["axis1=theta_prime", "axis2=phi_rot", f"alpha_deg={math.degrees(alpha):.9g}"]
    else:
        raise ConfigError(f"dominance maps exist for l2l-off and p2p-off-dual, not {fam.value}")
    cols = ["axis1_deg", "axis2_deg", "label", "value_m"]
    return Table(cols, _map_rows(rmap, shown, shown), comments), EXIT_OK


def cmd_landscape(cfg: RunConfig) -> tuple[Table, int]:
    o = cfg.options
    n1, u1, s1, i1 = _axis_samples(o["axis1"], o["from1"], o["to1"], o["steps1"])
    n2, u2, s2, i2 = _axis_samples(o["axis2"], o["from2"], o["to2"], o["steps2"])
    fixed = _grid_fixed(cfg, [n1, n2])
    grid = regions.Grid(n1, i1, n2, i2)
    rmap = regions.boundary_landscape(cfg.family, fixed, grid, exact=cfg.exact)
    cols = [f"axis1_{u1}", f"axis2_{u2}", "label", "value_m"]
    comments = [f"family={cfg.family.value}", f"axis1={n1}", f"axis2={n2}"]
    return Table(cols, _map_rows(rmap, s1, s2), comments), EXIT_OK


def _stats_angles(cfg: RunConfig) -> dict:
    fam, o = cfg.family, cfg.options
    out = {}
    for stem, name in ANGLE_FLAGS.items():
        spec = o.get(stem)
        if spec is not None:
            if name in cfg.angles:
                raise ConfigError(f"--{stem.replace('_', '-')} and --{stem.replace('_', '-')}-deg both given")
            out[name] = parse_tvm(spec, stem.replace("_", "-"))
    for name, v in cfg.angles.items():
        out[name] = v
    _check_family_angles(fam, [k for k, v in out.items() if not (isinstance(v, float) and v == 0)])
    if "theta_prime" in out and "theta" in out:
        raise ConfigError("give theta or theta_prime, not both")
    needed = [a for a in fam.angles if not (a == "theta" and "theta_prime" in out)]
    for a in needed:
        out.setdefault(a, 0.0)
    return {k: v for k, v in out.items() if k in needed or k == "theta_prime"}


def cmd_stats(cfg: RunConfig) -> tuple[list[tuple[str | None, Table]], int]:
    o = cfg.options
    angles = _stats_angles(cfg)
    fixed = {"d1": cfg.d1 or 0.0, "d2": cfg.d2, "wavelength": cfg.wavelength, "varphi": cfg.varphi}
    emp = stats.monte_carlo_rf(cfg.family, fixed, angles, int(o["n"]), int(cfg.seed), exact=cfg.exact)
    xs, cdf = stats.cdf_table(emp, int(o["cdf_points"]))
    bins = o["bins"]
    if isinstance(bins, str) and bins.isdigit():
        bins = int(bins)
    edges, dens = stats.empirical_pdf(emp, bins)
    centers = 0.5 * (edges[:-1] + edges[1:])
    meta = [
        f"family={cfg.family.value}",
        f"n={emp.n}",
        f"seed={cfg.seed}",
        f"mean_m={float(np.mean(emp.samples)):.9g}",
        f"std_m={float(np.std(emp.samples)):.9g}",
    ]
    cdf_t = Table(["value_m", "cdf"], [[float(x), float(c)] for x, c in zip(xs, cdf)], meta)
    pdf_t = Table(["bin_center_m", "density"], [[float(x), float(d)] for x, d in zip(centers, dens)], meta)
    pdf_path = o.get("pdf_output")
    if pdf_path is None and cfg.output != "-":
        p = Path(cfg.output)
        pdf_path = str(p.with_name(f"{p.stem}_pdf{p.suffix}"))
    outputs = [(cfg.output, cdf_t), (pdf_path, pdf_t)]
    if o.get("samples_output"):
        outputs.append((o["samples_output"], Table(["value_m"], [[float(v)] for v in emp.samples], meta)))
    return outputs, EXIT_OK


def cmd_table(cfg: RunConfig) -> tuple[Table, int]:
    a = dict(cfg.angles)
    if "theta_prime" in a:
        a["theta"] = a.pop("theta_prime") + a.get("alpha", 0.0)
    rows = []
    for fam, setting, res in closed_form.summary_table(cfg.d1, cfg.d2, cfg.wavelength, cfg.varphi, **a):
        rows.append([fam.value, setting] + _result_cells(res))
    return Table(["family", "setting"] + RESULT_COLUMNS, rows, [f"wavelength_m={cfg.wavelength:.9g}"]), EXIT_OK


HANDLERS = {
    "compute": cmd_compute,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "dominance": cmd_dominance,
    "landscape": cmd_landscape,
    "stats": cmd_stats,
    "table": cmd_table,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    result, status = HANDLERS[cfg.command](cfg)
    outputs = result if isinstance(result, list) else [(cfg.output, result)]
    if cfg.command == "stats" and cfg.fmt == "json":
        # one document holding every table
        doc = {}
        for key, (_, t) in zip(("cdf", "pdf", "samples"), outputs):
            doc[key] = {"columns": t.columns, "rows": [dict(zip(t.columns, r)) for r in t.rows]}
        doc["meta"] = dict(c.split("=", 1) for c in outputs[0][1].comments)
        io.write_text(cfg.output, io.render_json(doc), stdout)
        return status
    for path, table in outputs:
        if path is None:
            continue
        io.write_text(path, table.render(cfg.fmt), stdout)
    return status


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except (ConfigError, DomainError) as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NearFieldError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
