r"""Dispersion law, attenuation and velocities of harmonic waves.

For the Bessel memory kernel of order zero the squared wavenumber of a wave
``exp(i (omega t - k x))`` with real ``omega`` is

.. math::
    k^2(\omega) = \frac{\omega^2}{c^2}
        \frac{I_0(\sqrt{i\omega\tau})}{I_2(\sqrt{i\omega\tau})}
        = A(\omega) + i B(\omega),

and ``k = kappa - i delta_att`` on the positive branch. ``A`` and ``B`` are
computed two ways: from complex Bessel values (:func:`k_squared`) and from
Kelvin functions of order 0 and 2 at ``sqrt(omega tau)``
(:func:`dispersion_AB`). Rotating the argument of ``I_2`` by ``pi/4`` costs a
factor ``exp(i pi) = -1``, which is where the leading minus sign of the
Kelvin forms comes from.

All quantities are defined at ``omega = 0`` by their continuous limit (zero),
except the velocities, which need ``omega > 0``.
"""

import cmath
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import BranchDegenerate, DenominatorUnderflow, StepTooLarge
from .special_functions import (
    DEFAULT_POLICY,
    bessel_i_scaled,
    bessel_ratio,
    kelvin_pair_scaled,
)

__all__ = [
    "MediumParams",
    "ComplexWaveNumber",
    "DispersionSample",
    "k_squared",
    "dispersion_AB",
    "solve_branch",
    "phase_velocity",
    "group_velocity",
    "group_velocity_semianalytic",
    "default_fd_step",
    "dispersion_residual",
    "dispersion_sample",
    "omega_tau_grid",
]

# Richardson error estimate above this (relative) means the step is too coarse.
_FD_REL_LIMIT = 1e-4


@dataclass(frozen=True)
class MediumParams:
    """Wave-front velocity ``c`` and relaxation time ``tau`` of the medium."""

    c: float = 1.0
    tau: float = 1.0

    def __post_init__(self):
        for name in ("c", "tau"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    @property
    def length(self):
        """Characteristic length ``c * tau``."""
        return self.c * self.tau


@dataclass(frozen=True)
class ComplexWaveNumber:
    """``k = kappa - i delta_att`` at angular frequency ``omega``."""

    omega: float
    kappa: float
    delta_att: float

    @property
    def k(self):
        return complex(self.kappa, -self.delta_att)


@dataclass(frozen=True)
class DispersionSample:
    omega: float
    A: float
    B: float
    kappa: float
    delta_att: float
    v_phase: float
    v_group: float


def _check_omega(omega, strict=False):
    omega = float(omega)
    if not math.isfinite(omega) or omega < 0 or (strict and omega == 0):
        bound = "> 0" if strict else ">= 0"
        raise ValueError(f"omega must be finite and {bound}, got {omega!r}")
    return omega


def k_squared(omega, medium, policy=DEFAULT_POLICY):
    """Squared complex wavenumber from complex Bessel values.

    Uses exponentially scaled ``I_0`` and ``I_2`` so the quotient stays finite
    at any frequency. Returns ``0j`` at ``omega = 0``.
    """
    omega = _check_omega(omega)
    if omega == 0:
        return 0j
    z = cmath.rect(math.sqrt(omega * medium.tau), math.pi / 4)
    ratio = bessel_i_scaled(0, z, policy) / bessel_i_scaled(2, z, policy)
    return (omega / medium.c) ** 2 * ratio


def dispersion_AB(omega, medium, policy=DEFAULT_POLICY):
    """Real and imaginary parts ``(A, B)`` of ``k**2`` from Kelvin functions.

    Raises
    ------
    DenominatorUnderflow
        If ``ber_2**2 + bei_2**2`` underflows (``omega tau`` below ~1e-150).
    """
    omega = _check_omega(omega)
    if omega == 0:
        return 0.0, 0.0
    x = math.sqrt(omega * medium.tau)
    p0 = kelvin_pair_scaled(0, x, policy)
    p2 = kelvin_pair_scaled(2, x, policy)
    ber0, bei0 = p0.real, p0.imag
    ber2, bei2 = p2.real, p2.imag
    den = ber2 * ber2 + bei2 * bei2
    if den < sys.float_info.min:
        raise DenominatorUnderflow("ber_2^2 + bei_2^2 underflows", omega=omega, tau=medium.tau)
    pref = -((omega / medium.c) ** 2) / den
    A = pref * (ber0 * ber2 + bei0 * bei2)
    B = pref * (bei0 * ber2 - ber0 * bei2)
    return A, B


def _branch(A, B):
    r = math.hypot(A, B)
    # A + r without cancellation when A < 0
    s = A + r if A >= 0 else B * B / (r - A)
    if s == 0:
        if B != 0:
            raise BranchDegenerate("A + sqrt(A^2 + B^2) vanishes with B != 0", A=A, B=B)
        return 0.0, 0.0
    kappa = math.sqrt(s / 2)
    delta = -B / (math.sqrt(2) * math.sqrt(s))
    return kappa, delta


def solve_branch(omega, medium, policy=DEFAULT_POLICY):
    """Positive-branch solution ``(kappa, delta_att)`` of ``k**2 = A + iB``."""
    omega = _check_omega(omega)
    A, B = dispersion_AB(omega, medium, policy)
    kappa, delta = _branch(A, B)
    return ComplexWaveNumber(omega, kappa, delta)


def _kappa(omega, medium, policy):
    return solve_branch(omega, medium, policy).kappa


def phase_velocity(omega, medium, policy=DEFAULT_POLICY):
    """Phase velocity ``omega / kappa``; needs ``omega > 0``."""
    omega = _check_omega(omega, strict=True)
    return omega / _kappa(omega, medium, policy)


def default_fd_step(omega, medium):
    """Step used by :func:`group_velocity` unless one is given."""
    return max(1e-4 * omega, 1e-6 / medium.tau)


def _richardson_derivative(f, x, h):
    """Central difference with one Richardson level: ``(value, error estimate)``."""
    coarse = (f(x + h) - f(x - h)) / (2 * h)
    fine = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * fine - coarse) / 3, abs(fine - coarse) / 3


def _checked_derivative(f, omega, h, what):
    value, err = _richardson_derivative(f, omega, h)
    if err > _FD_REL_LIMIT * abs(value):
        raise StepTooLarge(
            f"Richardson estimate for {what} exceeds {_FD_REL_LIMIT:g} relative",
            omega=omega, fd_step=h, rel_error=err / abs(value) if value else math.inf,
        )
    return value


def _check_step(omega, medium, fd_step):
    omega = _check_omega(omega, strict=True)
    h = default_fd_step(omega, medium) if fd_step is None else float(fd_step)
    if not (h > 0 and omega > h):
        raise ValueError(f"need 0 < fd_step < omega, got fd_step={h!r}, omega={omega!r}")
    return omega, h


def group_velocity(omega, medium, fd_step=None, policy=DEFAULT_POLICY):
    """Group velocity ``1 / (d kappa / d omega)`` by finite differences.

    The derivative is a central difference of ``kappa`` with step ``fd_step``
    refined by one Richardson level; the difference between the two levels is
    the error estimate.

    Raises
    ------
    StepTooLarge
        If the error estimate exceeds 1e-4 relative.
    """
    omega, h = _check_step(omega, medium, fd_step)
    slope = _checked_derivative(lambda w: _kappa(w, medium, policy), omega, h, "dkappa/domega")
    return 1.0 / slope


def group_velocity_semianalytic(omega, medium, fd_step=None, policy=DEFAULT_POLICY):
    """Group velocity from ``dkappa/domega = (A' + (A A' + B B') / |k^2|) / (4 kappa)``.

    ``A'`` and ``B'`` are differenced numerically the same way
    :func:`group_velocity` differences ``kappa``; the two routes are
    independent enough to cross-check each other.
    """
    omega, h = _check_step(omega, medium, fd_step)
    A, B = dispersion_AB(omega, medium, policy)
    dA = _checked_derivative(lambda w: dispersion_AB(w, medium, policy)[0], omega, h, "dA/domega")
    dB = _checked_derivative(lambda w: dispersion_AB(w, medium, policy)[1], omega, h, "dB/domega")
    kappa, _ = _branch(A, B)
    slope = (dA + (A * dA + B * dB) / math.hypot(A, B)) / (4 * kappa)
    return 1.0 / slope


def dispersion_residual(omega, k, medium, policy=DEFAULT_POLICY):
    r"""Normalised residual of :math:`(i\omega)^2 + k^2 c^2 (1 - \hat\Phi(\omega))`.

    Divided by ``omega**2 + |k|**2 c**2``; zero when both vanish. The kernel
    is evaluated from its own definition, ``2 I_1 / (z I_0)`` with
    ``z = sqrt(i omega tau)``, not from the ``k**2`` formula it checks.
    """
    omega = float(omega)
    k = complex(k)
    kc2 = k * k * medium.c**2
    norm = omega * omega + abs(kc2)
    if norm == 0:
        return 0.0
    if omega == 0:
        kernel = 1.0
    else:
        z = cmath.sqrt(1j * omega * medium.tau)
        kernel = 2 * bessel_ratio(0, z, policy) / z
    return abs(-(omega * omega) + kc2 * (1 - kernel)) / norm


def dispersion_sample(omega, medium, fd_step=None, policy=DEFAULT_POLICY):
    """Every dispersion quantity at one frequency ``omega > 0``."""
    omega = _check_omega(omega, strict=True)
    A, B = dispersion_AB(omega, medium, policy)
    kappa, delta = _branch(A, B)
    return DispersionSample(
        omega=omega,
        A=A,
        B=B,
        kappa=kappa,
        delta_att=delta,
        v_phase=omega / kappa,
        v_group=group_velocity(omega, medium, fd_step, policy),
    )


def omega_tau_grid(lo=1e-3, hi=1e3, n=200, log=True):
    """Grid of non-dimensional frequencies ``omega * tau``."""
    if not (0 < lo < hi) or n < 2:
        raise ValueError("need 0 < lo < hi and n >= 2")
    if log:
        return np.logspace(math.log10(lo), math.log10(hi), n)
    return np.linspace(lo, hi, n)
