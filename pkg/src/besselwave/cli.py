"""Command-line front end: CSV tables of dispersion, velocities and transients.

Every table starts with one ``#`` line echoing the parameters that produced
it, then a header row. Output is fully determined by the arguments.

Exit codes: 0 success, 2 bad configuration, 3 numerical failure, 4 I/O error.
"""

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .diagnostics import format_table, run_validation
from .dispersion import (
    MediumParams,
    dispersion_AB,
    dispersion_residual,
    group_velocity,
    _branch,
)
from .errors import BesselWaveError, ComputeError, ConfigError
from .laplace import CATALOGUE, TalbotConfig, catalogue_pair, invert_grid
from .special_functions import DEFAULT_POLICY
from .transient import DEFAULT_LOCATIONS, StepResponseProblem, _shifted_transform, profile

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_IO = 0, 2, 3, 4

SUBCOMMANDS = ("dispersion", "velocities", "step-response", "invert", "validate")
CONTOURS = {"parabolic": "parabolic", "talbot": "classic_talbot"}

# default grids per subcommand
_DEFAULT_GRID = {
    "dispersion": "1e-3:1e3:200",
    "velocities": "1e-2:1e3:200",
    "step-response": "0:10:400",
    "invert": "1e-2:1e2:41",
}


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int
    log: bool = True
    allow_zero: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ConfigError("grid bounds must be finite", lo=self.lo, hi=self.hi)
        if not self.hi > self.lo:
            raise ConfigError("grid bounds must satisfy lo < hi", lo=self.lo, hi=self.hi)
        if self.count < 2:
            raise ConfigError("grid count must be >= 2", count=self.count)
        if self.log and self.lo <= 0:
            raise ConfigError("log grid needs lo > 0", lo=self.lo)
        if not self.allow_zero and self.lo <= 0:
            raise ConfigError("grid bounds must be strictly positive", lo=self.lo)

    def values(self):
        if self.log:
            return np.logspace(math.log10(self.lo), math.log10(self.hi), self.count)
        return np.linspace(self.lo, self.hi, self.count)

    def __str__(self):
        return f"{self.lo!r}:{self.hi!r}:{self.count}:{'log' if self.log else 'linear'}"


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    medium: MediumParams = MediumParams()
    grid: GridSpec | None = None
    talbot: TalbotConfig = TalbotConfig()
    output_path: str | None = None
    format: str = "csv"
    x_over_ctau: tuple = DEFAULT_LOCATIONS
    transform: str | None = None
    audit: bool = False
    dimensional: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError("unknown subcommand", subcommand=self.subcommand)
        if self.format not in ("csv", "tsv"):
            raise ConfigError("format must be csv or tsv", format=self.format)
        if self.subcommand != "validate" and self.grid is None:
            raise ConfigError("grid is required", subcommand=self.subcommand)

    def echo(self):
        contour = {v: k for k, v in CONTOURS.items()}[self.talbot.contour_kind]
        parts = [
            f"besselwave {__version__}",
            self.subcommand,
            f"c={self.medium.c!r}",
            f"tau={self.medium.tau!r}",
            f"nodes={self.talbot.node_count}",
            f"contour={contour}",
            f"grid={self.grid}",
        ]
        if self.subcommand == "step-response" or (self.subcommand == "invert" and not self.transform):
            parts.append("x_over_ctau=" + ",".join(repr(x) for x in self.x_over_ctau))
        if self.transform:
            parts.append(f"transform={self.transform}")
        parts.append(f"dimensional={self.dimensional}")
        return "# " + " ".join(parts)


class AuditFailure(ComputeError):
    pass


# ---------------------------------------------------------------- tables

def _dispersion_table(cfg):
    m = cfg.medium
    L = m.length
    cols = ("omega", "kappa", "delta_att", "residual") if cfg.dimensional else (
        "omega_tau", "kappa_ctau", "delta_att_ctau", "residual")
    rows = []
    for wt in cfg.grid.values():
        omega = wt / m.tau
        kappa, delta = _branch(*dispersion_AB(omega, m))
        res = dispersion_residual(omega, complex(kappa, -delta), m)
        if cfg.dimensional:
            rows.append((omega, kappa, delta, res))
        else:
            rows.append((wt, kappa * L, delta * L, res))
    return cols, rows


def _velocities_table(cfg):
    m = cfg.medium
    cols = ("omega", "v_phase", "v_group") if cfg.dimensional else (
        "omega_tau", "v_phase_over_c", "v_group_over_c")
    rows = []
    for wt in cfg.grid.values():
        omega = wt / m.tau
        kappa, _ = _branch(*dispersion_AB(omega, m))
        vp, vg = omega / kappa, group_velocity(omega, m)
        rows.append((omega, vp, vg) if cfg.dimensional else (wt, vp / m.c, vg / m.c))
    return cols, rows


def _step_table(cfg):
    m = cfg.medium
    L = m.length
    xs = [x * L for x in cfg.x_over_ctau]
    samples = profile(xs, cfg.grid.values(), m, cfg.talbot)
    cols = ("x", "xi", "t", "y", "flag_near_front") if cfg.dimensional else (
        "x_over_ctau", "xi", "t", "y", "flag_near_front")
    rows = []
    for s in samples:
        t = s.t if cfg.dimensional else s.t / m.tau
        rows.append((s.x if cfg.dimensional else s.chi, s.xi, t, s.y, int(s.near_front)))
    return cols, rows


def _invert_table(cfg):
    t = cfg.grid.values()
    if cfg.transform:
        F = catalogue_pair(cfg.transform).transform
        re, im = invert_grid(F, t, cfg.talbot, with_residue=True)
    else:
        if len(cfg.x_over_ctau) != 1:
            raise ConfigError("invert needs exactly one --x-over-ctau value", x=cfg.x_over_ctau)
        m = cfg.medium
        problem = StepResponseProblem(m, cfg.x_over_ctau[0] * m.length)
        elapsed = t - problem.x / m.c
        re, im = np.zeros_like(t), np.zeros_like(t)
        live = elapsed > 0
        if live.any():
            re[live], im[live] = invert_grid(
                _shifted_transform(problem, DEFAULT_POLICY), elapsed[live], cfg.talbot, with_residue=True)
    return ("t", "value", "imag_residue"), list(zip(t, re, im))


_TABLES = {
    "dispersion": _dispersion_table,
    "velocities": _velocities_table,
    "step-response": _step_table,
    "invert": _invert_table,
}


# ---------------------------------------------------------------- audit

def _audit(cfg, cols, rows):
    """Check every row against the producing module's invariants."""
    sub = cfg.subcommand
    bad = []
    for i, row in enumerate(rows):
        if not all(math.isfinite(v) for v in row):
            bad.append((i, "non-finite value"))
            continue
        if sub == "dispersion":
            _, kappa, delta, res = row
            if not (kappa > 0 and delta > 0 and res <= 1e-8):
                bad.append((i, "kappa, delta_att > 0 and residual <= 1e-8"))
        elif sub == "velocities":
            _, vp, vg = row
            top = cfg.medium.c if cfg.dimensional else 1.0
            tol = 1e-6 * top
            if not (0 < vp <= vg + tol <= top + tol):
                bad.append((i, "0 < v_p <= v_g <= c"))
        elif sub == "step-response":
            y, xi = row[3], row[1]
            if not (-1e-2 <= y <= 1 + 1e-2) or (xi < -1e-2 and abs(y) > 1e-4):
                bad.append((i, "0 <= y <= 1 and causality"))
    if sub in ("dispersion", "velocities"):
        x = [r[1] for r in rows]
        if any(b <= a for a, b in zip(x, x[1:])):
            bad.append((-1, f"{cols[1]} not increasing"))
    if bad:
        i, what = bad[0]
        raise AuditFailure(f"audit failed: {what}", subcommand=sub, row=i, failures=len(bad))


# ---------------------------------------------------------------- output

def _fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return repr(float(v))


def render(cfg, cols, rows):
    """Text of the table, parameter line first."""
    buf = io.StringIO()
    buf.write(cfg.echo() + "\n")
    w = csv.writer(buf, delimiter="," if cfg.format == "csv" else "\t", lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def run(cfg, stdout=None, stderr=None):
    """Execute one configured run and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        if cfg.subcommand == "validate":
            checks = run_validation(cfg.talbot)
            stdout.write(format_table(checks) + "\n")
            ok = all(c.passed for c in checks)
            stdout.write(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed\n")
            return EXIT_OK if ok else EXIT_COMPUTE
        cols, rows = _TABLES[cfg.subcommand](cfg)
        if cfg.audit:
            _audit(cfg, cols, rows)
        text = render(cfg, cols, rows)
    except ConfigError as exc:
        stderr.write(f"besselwave: configuration error: {exc}\n")
        return EXIT_CONFIG
    except (BesselWaveError, ArithmeticError) as exc:
        stderr.write(f"besselwave: {cfg.subcommand} failed: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE
    if cfg.output_path is None:
        stdout.write(text)
        return EXIT_OK
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        stderr.write(f"besselwave: cannot write {cfg.output_path}: {exc.strerror or exc}\n")
        return EXIT_IO
    return EXIT_OK


# ---------------------------------------------------------------- parsing

def _parse_range(text, flag):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{flag} expects lo:hi:n", value=text)
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"{flag} expects lo:hi:n", value=text) from None
    return lo, hi, n


def _parse_list(text, flag):
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{flag} expects a comma-separated list of numbers", value=text) from None
    if not values or any(not (math.isfinite(v) and v >= 0) for v in values):
        raise ConfigError(f"{flag} values must be finite and >= 0", value=text)
    return values


def build_parser():
    p = argparse.ArgumentParser(
        prog="besselwave",
        description="Dispersion, velocities and step responses for the Bessel memory-kernel wave equation.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, grid_flag=None):
        sp.add_argument("--c", type=float, default=1.0, help="wave-front velocity (default 1)")
        sp.add_argument("--tau", type=float, default=1.0, help="relaxation time (default 1)")
        sp.add_argument("--nodes", type=int, default=TalbotConfig().node_count, help="Talbot nodes N")
        sp.add_argument("--contour", choices=sorted(CONTOURS), default="parabolic")
        if grid_flag:
            sp.add_argument("--out", help="output file (default stdout)")
            sp.add_argument("--format", choices=("csv", "tsv"), default="csv")
            sp.add_argument("--audit", action="store_true", help="check every row before writing")
            sp.add_argument("--dimensional", action="store_true", help="physical units instead of c, tau scaled")
        return sp

    for name, helptext in (("dispersion", "kappa and delta_att against omega tau"),
                           ("velocities", "phase and group velocity against omega tau")):
        sp = common(sub.add_parser(name, help=helptext), "--omega-tau")
        sp.add_argument("--omega-tau", default=_DEFAULT_GRID[name], metavar="LO:HI:N")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--log", dest="log", action="store_true", default=True)
        g.add_argument("--linear", dest="log", action="store_false")

    sp = common(sub.add_parser("step-response", help="Y against xi at several distances"), "--xi")
    sp.add_argument("--xi", default=_DEFAULT_GRID["step-response"], metavar="LO:HI:N")
    sp.add_argument("--x-over-ctau", default=",".join(map(str, DEFAULT_LOCATIONS)), metavar="LIST")

    sp = common(sub.add_parser("invert", help="numerical inverse Laplace transform"), "--t")
    sp.add_argument("--t", default=_DEFAULT_GRID["invert"], metavar="LO:HI:N", help="time grid (log)")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--transform", choices=[p.name for p in CATALOGUE])
    src.add_argument("--x-over-ctau", metavar="X", help="invert the step response at this distance")

    common(sub.add_parser("validate", help="run the built-in self checks"))
    return p


def config_from_args(ns):
    """Turn parsed arguments into a validated :class:`RunConfig`."""
    try:
        medium = MediumParams(ns.c, ns.tau)
        talbot = TalbotConfig(node_count=ns.nodes, contour_kind=CONTOURS[ns.contour])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    kw = dict(subcommand=ns.subcommand, medium=medium, talbot=talbot)
    if ns.subcommand == "validate":
        return RunConfig(**kw)
    kw.update(output_path=ns.out, format=ns.format, audit=ns.audit, dimensional=ns.dimensional)
    if ns.subcommand in ("dispersion", "velocities"):
        kw["grid"] = GridSpec(*_parse_range(ns.omega_tau, "--omega-tau"), log=ns.log)
    elif ns.subcommand == "step-response":
        kw["grid"] = GridSpec(*_parse_range(ns.xi, "--xi"), log=False, allow_zero=True)
        kw["x_over_ctau"] = _parse_list(ns.x_over_ctau, "--x-over-ctau")
    else:
        kw["grid"] = GridSpec(*_parse_range(ns.t, "--t"), log=True)
        if ns.transform:
            kw["transform"] = ns.transform
        else:
            kw["x_over_ctau"] = _parse_list(ns.x_over_ctau, "--x-over-ctau")
    return RunConfig(**kw)


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ConfigError as exc:
        sys.stderr.write(f"besselwave: configuration error: {exc}\n")
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
