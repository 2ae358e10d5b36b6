"""Self-checks behind ``besselwave validate``.

Each check recomputes an identity or an analytic pair the library should
satisfy and compares the worst deviation with a fixed limit.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import dispersion, laplace
from .special_functions import (
    DEFAULT_POLICY,
    _bessel_i_asymptotic_scaled,
    _bessel_i_series,
    bessel_i,
    bessel_ratio,
    bessel_recurrence_check,
    kelvin_bei,
    kelvin_ber,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.value <= self.limit)


def kelvin_identity_error(zs=(0.5, 1, 2, 5, 10, 20), orders=(0, 2)):
    worst = 0.0
    for a in orders:
        for x in zs:
            lhs = complex(kelvin_ber(a, x), kelvin_bei(a, x))
            rot = bessel_i(a, cmath.rect(x, math.pi / 4))
            rhs = cmath.exp(1j * a * math.pi / 2) * rot
            worst = max(worst, abs(lhs - rhs) / (1 + abs(rot)))
    return worst


def recurrence_error(beta=1.0, radii=np.logspace(-1, 2, 13), angles=(0, math.pi / 4, math.pi / 2)):
    return max(bessel_recurrence_check(beta, cmath.rect(r, a)) for r in radii for a in angles)


def regime_consistency_error(policy=DEFAULT_POLICY, orders=(0, 1, 2)):
    """Largest relative gap between series and asymptotic values near the cutoff."""
    cut = policy.series_cutoff_radius
    worst = 0.0
    for nu in orders:
        for x in np.linspace(0.8 * cut, 1.2 * cut, 11):
            z = complex(x)
            series = _bessel_i_series(nu, z, policy) * math.exp(-x)
            asym = _bessel_i_asymptotic_scaled(nu, z, policy)
            worst = max(worst, abs(series - asym) / abs(asym))
    return worst


def conjugate_symmetry_error():
    worst = 0.0
    for nu in (0, 0.5, 1, 2):
        for z in (0.3 + 0.7j, 3 - 2j, 12 + 9j, 40 + 30j):
            a = bessel_i(nu, z.conjugate())
            b = bessel_i(nu, z).conjugate()
            worst = max(worst, abs(a - b) / abs(b))
    return worst


def ratio_shape_violation(xs=np.logspace(-3, 3, 400)):
    """0 if I_1/I_0 is in (0, 1) and increasing on ``xs``, else 1."""
    r = np.real(bessel_ratio(0, xs.astype(complex)))
    ok = np.all((r > 0) & (r < 1)) and np.all(np.diff(r) > 0)
    return 0.0 if ok else 1.0


def dispersion_sweep(grid=None, medium=dispersion.MediumParams()):
    """Worst cross-oracle, closure and residual errors over an ``omega tau`` grid."""
    grid = dispersion.omega_tau_grid() if grid is None else grid
    cross = closure = resid = 0.0
    for wt in grid:
        omega = wt / medium.tau
        k2 = dispersion.k_squared(omega, medium)
        A, B = dispersion.dispersion_AB(omega, medium)
        cross = max(cross, abs(A - k2.real) / abs(k2.real), abs(B - k2.imag) / abs(k2.imag))
        w = dispersion.solve_branch(omega, medium)
        closure = max(
            closure,
            abs(w.kappa**2 - w.delta_att**2 - A) / abs(A),
            abs(-2 * w.kappa * w.delta_att - B) / abs(B),
        )
        resid = max(resid, dispersion.dispersion_residual(omega, w.k, medium))
    return cross, closure, resid


def run_validation(config=laplace.TalbotConfig()):
    checks = [
        Check("kelvin <-> complex Bessel identity", kelvin_identity_error(), 1e-8),
        Check("Bessel recurrence residual", recurrence_error(), 1e-10),
        Check("series / asymptotic agreement at cutoff", regime_consistency_error(),
              10 * DEFAULT_POLICY.target_rel_tol),
        Check("conjugate symmetry of I_nu", conjugate_symmetry_error(), 1e-14),
        Check("I_1/I_0 in (0,1) and increasing", ratio_shape_violation(), 0.0),
    ]
    report = laplace.self_test(config)
    for pair in report.pairs:
        checks.append(Check(f"Talbot pair: {pair.name}", pair.max_abs_error, report.tolerance))
    cross, closure, resid = dispersion_sweep()
    checks += [
        Check("dispersion Kelvin vs complex Bessel", cross, 1e-8),
        Check("dispersion system closure", closure, 1e-9),
        Check("dispersion relation residual", resid, 1e-8),
    ]
    return checks


def format_table(checks):
    width = max(len(c.name) for c in checks)
    lines = [f"{'check':<{width}}  {'value':>11}  {'limit':>9}  status"]
    for c in checks:
        lines.append(f"{c.name:<{width}}  {c.value:>11.3e}  {c.limit:>9.1e}  {'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines)
