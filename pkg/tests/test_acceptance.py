"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for
just the summary lines.
"""

import cmath
import csv
import io
import math
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from besselwave import (  # noqa: E402
    CATALOGUE,
    MediumParams,
    StepResponseProblem,
    bessel_i,
    bessel_recurrence_check,
    convergence_study,
    dispersion_AB,
    dispersion_residual,
    group_velocity,
    invert_grid,
    k_squared,
    kelvin_bei,
    kelvin_ber,
    omega_tau_grid,
    phase_velocity,
    profile,
    solve_branch,
    step_response,
    step_response_grid,
    xi_grid,
)
from besselwave import cli  # noqa: E402
from besselwave.transient import DEFAULT_LOCATIONS  # noqa: E402
from oracles import bessel_i_series, kelvin_series  # noqa: E402

UNIT = MediumParams()


class Outcome:
    def __init__(self, number, title, runtime_limit):
        self.number, self.title, self.limit = number, title, runtime_limit
        self.checks = []
        self.start = time.perf_counter()

    def check(self, label, ok, detail=""):
        self.checks.append((label, bool(ok), detail))

    def finish(self):
        elapsed = time.perf_counter() - self.start
        self.check("runtime", elapsed < self.limit, f"{elapsed:.2f}s < {self.limit}s")
        self.passed = all(ok for _, ok, _ in self.checks)
        parts = "; ".join(f"{lbl} {'ok' if ok else 'FAILED'} ({d})" if d else f"{lbl} {'ok' if ok else 'FAILED'}"
                          for lbl, ok, d in self.checks)
        self.line = f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} -- {parts}"
        return self


def special_function_oracles():
    out = Outcome(1, "special functions vs extended-precision series", 1.0)
    points = [(nu, cmath.rect(r, a)) for nu in (0, 1, 2)
              for r in (0.05, 2.0, 12.0, 30.0) for a in (0.0, math.pi / 4, math.pi / 2)]
    worst_i = max(abs(bessel_i(nu, z) - ref) / abs(ref)
                  for nu, z in points for ref in [bessel_i_series(nu, z)])
    kpoints = [(a, x) for a in (0, 2) for x in (0.1, 1.0, 4.0, 10.0, 20.0, 40.0)]
    worst_k = 0.0
    for a, x in kpoints:
        ref = kelvin_series(a, x)
        worst_k = max(worst_k,
                      abs(kelvin_ber(a, x) - ref.real) / abs(ref.real),
                      abs(kelvin_bei(a, x) - ref.imag) / abs(ref.imag))
    n = len(points) + len(kpoints)
    out.check("oracle points", n >= 30, f"{n}")
    out.check("I_nu rel err", worst_i <= 1e-10, f"{worst_i:.1e}")
    out.check("ber/bei rel err", worst_k <= 1e-10, f"{worst_k:.1e}")
    ident = max(
        abs(complex(kelvin_ber(a, x), kelvin_bei(a, x))
            - cmath.exp(1j * a * math.pi / 2) * bessel_i(a, cmath.rect(x, math.pi / 4)))
        / (1 + abs(bessel_i(a, cmath.rect(x, math.pi / 4))))
        for a in (0, 2) for x in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
    )
    out.check("Kelvin identity", ident <= 1e-8, f"{ident:.1e}")
    rec = max(bessel_recurrence_check(1.0, cmath.rect(r, a))
              for r in np.logspace(-1, 2, 13) for a in (0.0, math.pi / 4, math.pi / 2))
    out.check("recurrence residual", rec <= 1e-10, f"{rec:.1e}")
    return out.finish()


def dispersion_cross_oracle():
    out = Outcome(2, "dispersion cross-oracle and closure", 1.0)
    cross = closure = resid = 0.0
    for wt in omega_tau_grid(1e-3, 1e3, 200):
        k2 = k_squared(wt, UNIT)
        A, B = dispersion_AB(wt, UNIT)
        cross = max(cross, abs(A - k2.real) / abs(k2.real), abs(B - k2.imag) / abs(k2.imag))
        w = solve_branch(wt, UNIT)
        closure = max(closure, abs(w.kappa**2 - w.delta_att**2 - A) / abs(A),
                      abs(-2 * w.kappa * w.delta_att - B) / abs(B))
        resid = max(resid, dispersion_residual(wt, w.k, UNIT))
    out.check("Kelvin vs Bessel", cross <= 1e-8, f"{cross:.1e}")
    out.check("closure", closure <= 1e-9, f"{closure:.1e}")
    out.check("residual", resid <= 1e-8, f"{resid:.1e}")
    return out.finish()


def limit_laws():
    out = Outcome(3, "low- and high-frequency limits", 1.0)
    wt = 1e-4
    w = solve_branch(wt, UNIT)
    target = 2 * math.sqrt(wt)
    ek, ed = abs(w.kappa / target - 1), abs(w.delta_att / target - 1)
    out.check("kappa ~ 2 sqrt(omega/tau)/c", ek <= 1e-2, f"{ek:.1e}")
    out.check("delta_att ~ 2 sqrt(omega/tau)/c", ed <= 1e-2, f"{ed:.1e}")
    vp, vg = phase_velocity(1e4, UNIT), group_velocity(1e4, UNIT)
    out.check("v_p -> c", abs(vp - 1) <= 2e-2, f"{vp:.4f}")
    out.check("v_g -> c", abs(vg - 1) <= 2e-2, f"{vg:.4f}")
    return out.finish()


def velocity_ordering():
    out = Outcome(4, "v_p <= v_g <= c", 5.0)
    bad = 0
    for wt in omega_tau_grid(1e-1, 1e3, 200):
        vp, vg = phase_velocity(wt, UNIT), group_velocity(wt, UNIT)
        bad += not (vp <= vg + 1e-6 <= 1 + 1e-6)
    out.check("ordering violations", bad == 0, f"{bad}/200")
    return out.finish()


def talbot_catalogue():
    out = Outcome(5, "Talbot inversion of the analytic catalogue", 2.0)
    times = np.logspace(-2, 2, 41)
    for pair in CATALOGUE:
        lo, hi = pair.t_range
        t = times[(times >= lo) & (times <= hi)]
        if pair.discontinuity is not None:
            t = t[t >= 2 * pair.discontinuity]
        err = float(np.max(np.abs(invert_grid(pair.transform, t) - pair.original(t))))
        out.check(pair.name, err <= 1e-8, f"{err:.1e}")
    errs = convergence_study("erfc", 1.0, [8, 16, 32, 64, 128])
    floor = 1e-10
    ok = all(b <= a / 10 for a, b in zip(errs, errs[1:]) if a > floor) and errs[-1] <= floor
    out.check("erfc N-doubling", ok, " ".join(f"{e:.0e}" for e in errs))
    return out.finish()


def step_response_oracles():
    out = Outcome(6, "step-response oracles", 30.0)
    y0 = step_response_grid(np.logspace(-2, 2, 30), StepResponseProblem(UNIT, 0.0))
    e0 = float(np.max(np.abs(y0 - 1)))
    out.check("boundary", e0 <= 1e-6, f"{e0:.1e}")
    worst_pre = 0.0
    for x in DEFAULT_LOCATIONS:
        worst_pre = max(worst_pre, float(np.max(step_response_grid(
            np.linspace(1e-3, 0.99 * x, 50), StepResponseProblem(UNIT, x)))))
    out.check("causality", worst_pre <= 1e-4, f"max Y {worst_pre:.1e}")
    worst_long = 0.0
    for x in DEFAULT_LOCATIONS:
        t = 1e3 * x
        law = math.erfc(math.sqrt(2) * x / math.sqrt(t))
        worst_long = max(worst_long, abs(step_response(t, StepResponseProblem(UNIT, x)) - law))
    out.check("long-time law", worst_long <= 1e-3, f"{worst_long:.1e}")
    tic = time.perf_counter()
    samples = profile(DEFAULT_LOCATIONS, xi_grid(0, 10, 400), UNIT)
    grid_time = time.perf_counter() - tic
    out.check("3 x 400 profile grid", len(samples) == 1200 and grid_time < 30, f"{grid_time:.2f}s")
    sat = [step_response(100 + x, StepResponseProblem(UNIT, x)) for x in DEFAULT_LOCATIONS]
    gap = max(abs(1 - y) for y in sat)
    out.check("saturation at xi=100", gap <= 1e-3,
              "Y = " + ", ".join(f"{y:.3f}" for y in sat) + f"; |1-Y| up to {gap:.2f}")
    return out.finish()


def _cli_table(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    lines = buf.getvalue().splitlines()
    data = np.array(list(csv.reader(io.StringIO("\n".join(lines[2:])))), dtype=float)
    return code, data


def figure_regeneration():
    out = Outcome(7, "figure data from the CLI", 60.0)
    code, d = _cli_table(["dispersion", "--omega-tau", "1e-3:1e3:200", "--log", "--audit"])
    slope = np.diff(np.log(d[:, 2])) / np.diff(np.log(d[:, 0]))
    out.check("dispersion exit", code == 0)
    out.check("kappa c tau increasing", np.all(np.diff(d[:, 1]) > 0))
    out.check("delta_att c tau increasing then flattening",
              np.all(np.diff(d[:, 2]) > 0) and slope.max() <= 0.5 + 1e-6 and slope.min() < 0.3,
              f"log-log slope {slope.min():.2f}..{slope.max():.2f}")
    code, v = _cli_table(["velocities", "--omega-tau", "1e-2:1e3:200", "--log", "--audit"])
    out.check("velocities exit", code == 0)
    out.check("v_p increasing", np.all(np.diff(v[:, 1]) > 0))
    drops = np.flatnonzero(np.diff(v[:, 2]) <= 0)
    out.check("v_g increasing", drops.size == 0,
              f"decreases on omega tau {v[drops[0], 0]:.2f}..{v[drops[-1] + 1, 0]:.2f}" if drops.size else "")
    out.check("both toward 1", v[-1, 1] > 0.95 and v[-1, 2] > 0.95 and np.all(v[:, 1:] <= 1 + 1e-6),
              f"end {v[-1, 1]:.3f}, {v[-1, 2]:.3f}")
    code, y = _cli_table(["step-response", "--xi", "0:10:400", "--audit"])
    out.check("step-response exit", code == 0)
    curves = [y[y[:, 0] == x][:, 3] for x in DEFAULT_LOCATIONS]
    sigmoid = all(
        c[0] == 0 and np.all(np.diff(c) >= -1e-12) and 0 < c[-1] < 1
        and np.all(np.diff(c[40:], 2) <= 1e-12)  # concave tail for xi >= 1
        for c in curves
    )
    ordered = all(np.all(a[1:] > b[1:]) for a, b in zip(curves, curves[1:]))
    out.check("S-shaped profiles", sigmoid)
    out.check("profiles ordered by x", ordered)
    return out.finish()


CRITERIA = [
    special_function_oracles,
    dispersion_cross_oracle,
    limit_laws,
    velocity_ordering,
    talbot_catalogue,
    step_response_oracles,
    figure_regeneration,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line)
    assert result.passed, result.line


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    for r in results:
        print(r.line)
    sys.exit(0 if all(r.passed for r in results) else 1)
