r"""Modified Bessel functions of the first kind, contiguous-order ratios and
Kelvin functions.

:math:`I_\nu(z)` is evaluated in one of three regimes:

* the ascending power series, for :math:`|z|` below
  ``EvalPolicy.series_cutoff_radius`` when its terms do not cancel;
* the same series started at a high order, followed by backward recurrence,
  when they do (arguments near the imaginary axis, where :math:`I_\nu` behaves
  like an oscillating :math:`J_\nu`);
* the Hankel expansion carrying both exponentials (DLMF 10.40.5) above the
  cutoff, computed in exponentially scaled form.

The ratio :math:`I_{\nu+1}/I_\nu` never divides two unscaled Bessel values:
below the cutoff it is a Gauss continued fraction, above it the ratio of the
scaled Hankel sums. Both paths accept numpy arrays so contour quadratures can
evaluate all nodes at once.

Kelvin functions use their ascending series, or the rotation identity

.. math::
    \operatorname{ber}_\alpha x + i \operatorname{bei}_\alpha x
    = e^{i\alpha\pi/2} I_\alpha(x e^{i\pi/4})

once the series loses too many digits.
"""

import cmath
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import (
    BesselOverflow,
    InvalidOrder,
    NearPole,
    NonConvergent,
    PrecisionLoss,
)

__all__ = [
    "EvalPolicy",
    "DEFAULT_POLICY",
    "NEAR_POLE_RATIO",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_ratio",
    "kelvin_ber",
    "kelvin_bei",
    "kelvin_pair_scaled",
    "bessel_recurrence_check",
]

_EPS = sys.float_info.epsilon
_LOG_MAX = math.log(sys.float_info.max)

# |I_{nu+1}/I_nu| above this is treated as sitting on a zero of I_nu.
NEAR_POLE_RATIO = 1e12

# Accept the direct series when sum|terms| <= _MAX_LOSS * |sum|.
_MAX_LOSS = 10.0


@dataclass(frozen=True)
class EvalPolicy:
    """Accuracy controls shared by the Bessel and Kelvin routines.

    Parameters
    ----------
    series_cutoff_radius : float
        Argument modulus at or below which the power series (or the
        continued fraction, for ratios) is used.
    target_rel_tol : float
        Requested relative accuracy. Must be at least ``100 * eps``.
    max_terms : int
        Upper bound on series / expansion lengths before giving up.
    """

    series_cutoff_radius: float = 25.0
    target_rel_tol: float = 1e-13
    max_terms: int = 500

    def __post_init__(self):
        if not (math.isfinite(self.series_cutoff_radius) and self.series_cutoff_radius > 0):
            raise ValueError("series_cutoff_radius must be a positive finite number")
        if not (100 * _EPS <= self.target_rel_tol < 1):
            raise ValueError(f"target_rel_tol must lie in [{100 * _EPS:.3g}, 1)")
        if int(self.max_terms) != self.max_terms or self.max_terms < 20:
            raise ValueError("max_terms must be an integer >= 20")


DEFAULT_POLICY = EvalPolicy()


def _check_order(nu, lower, inclusive=False):
    if not (isinstance(nu, (int, float, np.integer, np.floating)) and math.isfinite(nu)):
        raise InvalidOrder("order must be a finite real number", nu=nu)
    if nu < lower or (nu == lower and not inclusive):
        raise InvalidOrder(f"order must be {'>=' if inclusive else '>'} {lower}", nu=nu)


def _as_complex(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"argument must be finite, got {z!r}")
    return z


def _unit_phase(q):
    """exp(i*pi*q), exact whenever 2q is an integer."""
    twice = 2 * q
    if float(twice).is_integer():
        return (1 + 0j, 1j, -1 + 0j, -1j)[int(twice) % 4]
    return cmath.exp(1j * math.pi * q)


# ---------------------------------------------------------------------------
# I_nu(z), scalar paths


def _leading_term(nu, z):
    """(z/2)**nu / Gamma(nu + 1) on the principal branch."""
    half = z / 2
    if float(nu).is_integer() and nu <= 30:
        n = int(nu)
        return half**n / math.factorial(n)
    return cmath.exp(nu * cmath.log(half) - math.lgamma(nu + 1))


def _ascending_series(nu, z, max_terms):
    """Sum the power series of I_nu(z). Returns (value, sum of |terms|)."""
    term = _leading_term(nu, z)
    w = z * z / 4
    aw = abs(w)
    total = term
    magnitude = abs(term)
    for k in range(1, max_terms):
        term *= w / (k * (nu + k))
        total += term
        at = abs(term)
        magnitude += at
        if k * (nu + k) > aw and at <= 0.5 * _EPS * magnitude:
            return total, magnitude
    raise NonConvergent("power series did not converge", nu=nu, z=z, max_terms=max_terms)


def _bessel_i_backward(nu, z, policy):
    # Start where the series no longer cancels; I_n is the minimal solution of
    # the three-term recurrence as n grows, so recurring downwards is stable.
    n = int(abs(z) ** 2 / 4) + 2
    upper, _ = _ascending_series(nu + n + 1, z, policy.max_terms)
    current, _ = _ascending_series(nu + n, z, policy.max_terms)
    if current == 0:
        raise NonConvergent("backward recurrence start value underflowed", nu=nu, z=z)
    for m in range(n, 0, -1):
        upper, current = current, (2 * (nu + m) / z) * current + upper
    return current


def _bessel_i_series(nu, z, policy):
    if z == 0:
        if nu == 0:
            return 1 + 0j
        if nu > 0:
            return 0j
        raise BesselOverflow("I_nu(0) diverges for -1 < nu < 0", nu=nu)
    total, magnitude = _ascending_series(nu, z, policy.max_terms)
    if magnitude <= _MAX_LOSS * abs(total):
        return total
    return _bessel_i_backward(nu, z, policy)


def _hankel_sums(nu, z, policy):
    """Return (sum (-1)^k a_k(nu)/z^k, sum a_k(nu)/z^k)."""
    mu4 = 4.0 * nu * nu
    term = 1 + 0j
    alt = plain = 1 + 0j
    prev = math.inf
    for k in range(1, policy.max_terms):
        term *= (mu4 - (2 * k - 1) ** 2) / (8 * k * z)
        at = abs(term)
        if at > prev and k > abs(nu) + 1:
            # past the smallest term: the expansion is diverging from here on
            if prev <= policy.target_rel_tol * min(abs(alt), abs(plain)):
                return alt, plain
            raise NonConvergent("asymptotic expansion cannot reach tolerance", nu=nu, z=z)
        alt += -term if k % 2 else term
        plain += term
        if at <= 0.5 * _EPS * min(abs(alt), abs(plain)):
            return alt, plain
        prev = at
    raise NonConvergent("asymptotic expansion did not converge", nu=nu, z=z)


def _bessel_i_asymptotic_scaled(nu, z, policy):
    """I_nu(z) * exp(-|Re z|) from the two-exponential Hankel expansion."""
    flip = z.imag < 0
    if flip:
        z = z.conjugate()
    alt, plain = _hankel_sums(nu, z, policy)
    shift = abs(z.real)
    value = (
        cmath.exp(z - shift) * alt + 1j * _unit_phase(nu) * cmath.exp(-z - shift) * plain
    ) / cmath.sqrt(2 * math.pi * z)
    return value.conjugate() if flip else value


def bessel_i_scaled(nu, z, policy=DEFAULT_POLICY):
    """Exponentially scaled Bessel function ``I_nu(z) * exp(-|Re z|)``.

    Never overflows; use it whenever only ratios of Bessel values matter.
    """
    _check_order(nu, -1.0)
    z = _as_complex(z)
    if abs(z) <= policy.series_cutoff_radius:
        return _bessel_i_series(nu, z, policy) * math.exp(-abs(z.real))
    return _bessel_i_asymptotic_scaled(nu, z, policy)


def bessel_i(nu, z, policy=DEFAULT_POLICY):
    r"""Modified Bessel function of the first kind :math:`I_\nu(z)`.

    Parameters
    ----------
    nu : float
        Order, ``nu > -1``.
    z : complex
        Argument, principal branch (cut along the negative real axis).
    policy : EvalPolicy, optional

    Returns
    -------
    complex

    Raises
    ------
    InvalidOrder
        If ``nu <= -1``.
    NonConvergent
        If neither regime reaches the tolerance within ``policy.max_terms``.
    BesselOverflow
        If the result is not representable in double precision.
    """
    _check_order(nu, -1.0)
    z = _as_complex(z)
    if abs(z) <= policy.series_cutoff_radius:
        return _bessel_i_series(nu, z, policy)
    scaled = _bessel_i_asymptotic_scaled(nu, z, policy)
    shift = abs(z.real)
    if scaled != 0 and shift + math.log(abs(scaled)) >= _LOG_MAX:
        raise BesselOverflow("I_nu(z) overflows double precision", nu=nu, z=z)
    head = min(shift, 700.0)
    return scaled * math.exp(head) * math.exp(shift - head)


# ---------------------------------------------------------------------------
# I_{nu+1}/I_nu, vectorised


def _ratio_continued_fraction(nu, z):
    # r_{nu+n-1} = z / (2 (nu + n) + z r_{nu+n}); the tail error is damped by
    # roughly (|z| / 2n)^2 per level once n > |z|, hence the +40.
    depth = int(np.abs(z).max(initial=0.0)) + 40
    r = z / (2 * (nu + depth + 1))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for n in range(depth, 0, -1):
            r = z / (2 * (nu + n) + z * r)
    return r


def _hankel_sums_array(nu, z, policy):
    mu4 = 4.0 * nu * nu
    term = np.ones_like(z)
    alt = term.copy()
    plain = term.copy()
    active = np.ones(z.shape, dtype=bool)
    prev = np.full(z.shape, np.inf)
    for k in range(1, policy.max_terms):
        term = term * ((mu4 - (2 * k - 1) ** 2) / (8 * k * z))
        at = np.abs(term)
        if k > abs(nu) + 1:
            growing = active & (at > prev)
            if growing.any():
                floor = policy.target_rel_tol * np.minimum(np.abs(alt), np.abs(plain))
                if np.any(prev[growing] > floor[growing]):
                    bad = z[growing][0]
                    raise NonConvergent("asymptotic expansion cannot reach tolerance", nu=nu, z=complex(bad))
                active &= ~growing
        sign = -1.0 if k % 2 else 1.0
        alt = np.where(active, alt + sign * term, alt)
        plain = np.where(active, plain + term, plain)
        active &= ~(at <= 0.5 * _EPS * np.minimum(np.abs(alt), np.abs(plain)))
        prev = at
        if not active.any():
            return alt, plain
    raise NonConvergent("asymptotic expansion did not converge", nu=nu)


def _ratio_hankel(nu, z, policy):
    flip = z.imag < 0
    zf = np.where(flip, np.conj(z), z)
    shift = np.abs(zf.real)
    grow = np.exp(zf - shift)
    decay = np.exp(-zf - shift)
    alt0, plain0 = _hankel_sums_array(nu, zf, policy)
    alt1, plain1 = _hankel_sums_array(nu + 1, zf, policy)
    num = grow * alt1 + 1j * _unit_phase(nu + 1) * decay * plain1
    den = grow * alt0 + 1j * _unit_phase(nu) * decay * plain0
    with np.errstate(divide="ignore", invalid="ignore"):
        r = num / den
    return np.where(flip, np.conj(r), r)


def bessel_ratio(nu, z, policy=DEFAULT_POLICY):
    r"""Ratio :math:`I_{\nu+1}(z) / I_\nu(z)` of contiguous orders.

    Accepts a scalar or an array of arguments and returns the same shape.
    Near the origin the result behaves as ``z / (2 (nu + 1))`` with no
    cancellation; for large real ``z`` it tends to 1.

    Raises
    ------
    InvalidOrder
        If ``nu < -1/2``.
    NearPole
        If ``|I_nu(z)|`` is smaller than ``|I_{nu+1}(z)|`` by more than
        ``NEAR_POLE_RATIO`` (``z`` sits on a zero of ``I_nu``).
    """
    _check_order(nu, -0.5, inclusive=True)
    scalar = np.ndim(z) == 0
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(zs)):
        raise ValueError("arguments must be finite")
    out = np.empty_like(zs)
    small = np.abs(zs) <= policy.series_cutoff_radius
    if small.any():
        out[small] = _ratio_continued_fraction(nu, zs[small])
    if not small.all():
        out[~small] = _ratio_hankel(nu, zs[~small], policy)
    bad = ~np.isfinite(out) | (np.abs(out) > NEAR_POLE_RATIO)
    if bad.any():
        raise NearPole("argument is at a zero of I_nu", nu=nu, z=complex(zs[bad][0]))
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


# ---------------------------------------------------------------------------
# Kelvin functions


def _kelvin_series(alpha, x, max_terms):
    """ber_alpha(x) + i bei_alpha(x) by the ascending series.

    Also returns ``sum |Re term|`` and ``sum |Im term|``, the cancellation
    scale of each component separately.
    """
    term = _unit_phase(0.75 * alpha) * math.exp(alpha * math.log(x / 2) - math.lgamma(alpha + 1))
    w = 1j * (x * x / 4)
    aw = abs(w)
    total = term
    mag_re, mag_im = abs(term.real), abs(term.imag)
    for k in range(1, max_terms):
        term *= w / (k * (alpha + k))
        total += term
        mag_re += abs(term.real)
        mag_im += abs(term.imag)
        if k * (alpha + k) > aw and abs(term) <= 0.5 * _EPS * (mag_re + mag_im):
            return total, (mag_re, mag_im)
    raise NonConvergent("Kelvin series did not converge", alpha=alpha, x=x)


def _kelvin_identity(alpha, x, policy):
    return _unit_phase(alpha / 2) * bessel_i(alpha, cmath.rect(x, math.pi / 4), policy)


def _kelvin_component(alpha, x, policy, imag):
    if not (math.isfinite(alpha) and alpha >= 0):
        raise InvalidOrder("Kelvin order must be >= 0", alpha=alpha)
    if not (math.isfinite(x) and x >= 0):
        raise ValueError(f"Kelvin argument must be finite and >= 0, got {x!r}")
    if x == 0:
        return 1.0 if (alpha == 0 and not imag) else 0.0
    tol = policy.target_rel_tol
    if x <= policy.series_cutoff_radius:
        value, (mag_re, mag_im) = _kelvin_series(alpha, x, policy.max_terms)
        part, magnitude = (value.imag, mag_im) if imag else (value.real, mag_re)
        if 4 * _EPS * magnitude <= tol * abs(part):
            return part
    value = _kelvin_identity(alpha, x, policy)
    part = value.imag if imag else value.real
    error = 8 * _EPS * abs(value)
    if error > 10 * tol * abs(part):
        raise PrecisionLoss(
            "cancellation too large (argument close to a zero)",
            alpha=alpha, x=x, estimated_rel_error=error / abs(part) if part else math.inf,
        )
    return part


def kelvin_ber(alpha, z, policy=DEFAULT_POLICY):
    r"""Kelvin function :math:`\operatorname{ber}_\alpha(z)` for real ``z >= 0``.

    Raises :class:`PrecisionLoss` when ``z`` is so close to a zero of the
    function that no evaluation route reaches ``10 * target_rel_tol``.
    """
    return _kelvin_component(float(alpha), float(z), policy, imag=False)


def kelvin_bei(alpha, z, policy=DEFAULT_POLICY):
    r"""Kelvin function :math:`\operatorname{bei}_\alpha(z)`; see :func:`kelvin_ber`."""
    return _kelvin_component(float(alpha), float(z), policy, imag=True)


def kelvin_pair_scaled(alpha, x, policy=DEFAULT_POLICY):
    """Return ``(ber_alpha(x) + i bei_alpha(x)) * exp(-x / sqrt(2))``.

    Accurate relative to the modulus of the pair rather than to each
    component, which is what quotients of Kelvin combinations need. The
    scaling keeps the value finite for arbitrarily large ``x``.
    """
    if x == 0:
        return 1 + 0j if alpha == 0 else 0j
    if x <= policy.series_cutoff_radius:
        value, _ = _kelvin_series(alpha, x, policy.max_terms)
        return value * math.exp(-x / math.sqrt(2))
    z = cmath.rect(x, math.pi / 4)
    return _unit_phase(alpha / 2) * bessel_i_scaled(alpha, z, policy)


def bessel_recurrence_check(beta, z, policy=DEFAULT_POLICY):
    r"""Relative residual of :math:`I_{\beta-1} - (2\beta/z) I_\beta = I_{\beta+1}`.

    Returns ``|I_{b-1} - (2b/z) I_b - I_{b+1}| / max(|I_{b-1}|, |I_{b+1}|)``,
    a self-diagnostic for the evaluation routines.
    """
    z = _as_complex(z)
    if z == 0:
        raise ValueError("recurrence check needs z != 0")
    lo = bessel_i_scaled(beta - 1, z, policy)
    mid = bessel_i_scaled(beta, z, policy)
    hi = bessel_i_scaled(beta + 1, z, policy)
    return abs(lo - (2 * beta / z) * mid - hi) / max(abs(lo), abs(hi))
