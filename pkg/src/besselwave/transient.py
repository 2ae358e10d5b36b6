r"""Step response of the semi-infinite medium with a Bessel memory kernel.

With the boundary driven by a Heaviside step, the Laplace transform of the
field is

.. math::
    \tilde Y(s, x) = \frac{1}{s} e^{-\mu(s) x}, \qquad
    \mu^2(s) = \frac{s^2}{c^2} \frac{I_0(\sqrt{s\tau})}{I_2(\sqrt{s\tau})}.

``I_2/I_0`` is formed as the product of two contiguous ratios, which stays
finite on contour nodes of any size and has no cancellation near ``s = 0``.

Inversion is done on the front-shifted transform
``exp(s x / c) * Y~(s, x)``, whose original is ``Y(t' + x/c, x)``. It has the
same integrand as ``Y~`` at time ``t``, but the contour is sized for the time
elapsed since the wave front passed, ``t' = t - x/c``. Without the shift the
factor ``exp(-s x / c)`` makes the integrand grow along the contour for
every ``t`` close to the front. Before the front the field is exactly zero.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dispersion import MediumParams
from .errors import BranchAmbiguity
from .laplace import TalbotConfig, TransformFn, invert_grid
from .special_functions import DEFAULT_POLICY, bessel_ratio

__all__ = [
    "StepResponseProblem",
    "FieldSample",
    "NEAR_FRONT_XI",
    "DEFAULT_LOCATIONS",
    "mu",
    "y_tilde",
    "step_response",
    "step_response_grid",
    "profile",
    "xi_grid",
]

# 0 < xi < NEAR_FRONT_XI is reported with a near-front flag.
NEAR_FRONT_XI = 1e-3
# x / (c tau) for the three default profiles.
DEFAULT_LOCATIONS = (0.25, 0.5, 1.0)
OVERSHOOT = 1e-2


@dataclass(frozen=True)
class StepResponseProblem:
    medium: MediumParams
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and self.x >= 0):
            raise ValueError(f"x must be finite and >= 0, got {self.x!r}")


@dataclass(frozen=True)
class FieldSample:
    """One point of a transient profile.

    ``xi = (c t - x) / (c tau)`` and ``chi = x / (c tau)``. ``near_front``
    marks points just behind the front, where the quadrature is least
    reliable.
    """

    t: float
    x: float
    y: float
    xi: float
    chi: float
    near_front: bool = False


def _split_kernel(s, medium, policy):
    """Return ``(s, q, 1 - q)`` with ``q = I_2/I_0`` at ``sqrt(s tau)``."""
    s = np.asarray(s, dtype=complex)
    on_cut = (s.imag == 0) & (s.real <= 0)
    if np.any(on_cut):
        raise BranchAmbiguity(
            "mu(s) is undefined on the non-positive real axis",
            s=complex(s[on_cut].flat[0]) if s.ndim else complex(s),
        )
    z = np.sqrt(s * medium.tau)
    r0 = bessel_ratio(0, z, policy)
    r1 = bessel_ratio(1, z, policy)
    return s, z, r0, r0 * r1


def mu(s, medium, policy=DEFAULT_POLICY):
    r"""Spatial decay rate :math:`\mu(s)` of the Laplace-domain solution.

    The branch is the one continuous from positive real ``s``; for
    ``Re(s) > 0`` it has ``Re(mu) >= 0`` and ``mu(conj(s)) = conj(mu(s))``.
    Accepts scalars or arrays.

    Raises
    ------
    BranchAmbiguity
        For ``s`` on the non-positive real axis.
    """
    s_arr, _, _, q = _split_kernel(s, medium, policy)
    out = s_arr / (medium.c * np.sqrt(q))
    return complex(out) if np.ndim(out) == 0 else out


def _front_excess(s, medium, policy):
    # mu(s) - s/c = (s/c) (1 - q) / (sqrt(q) (1 + sqrt(q))), with 1 - q = 2 r0 / z
    s_arr, z, r0, q = _split_kernel(s, medium, policy)
    root = np.sqrt(q)
    return (s_arr / medium.c) * (2 * r0 / z) / (root * (1 + root))


def y_tilde(s, problem, policy=DEFAULT_POLICY):
    """Laplace-domain step response ``exp(-mu(s) x) / s``."""
    s_arr = np.asarray(s, dtype=complex)
    if problem.x == 0:
        out = 1 / s_arr
    else:
        out = np.exp(-mu(s_arr, problem.medium, policy) * problem.x) / s_arr
    return complex(out) if np.ndim(out) == 0 else out


def _shifted_transform(problem, policy):
    medium, x = problem.medium, problem.x
    if x == 0:
        return TransformFn(lambda s: 1 / s, name="step")
    return TransformFn(
        lambda s: np.exp(-_front_excess(s, medium, policy) * x) / s,
        name=f"front-shifted step response at x={x!r}",
    )


def step_response_grid(times, problem, config=TalbotConfig(), policy=DEFAULT_POLICY):
    """``Y(t, x)`` for every ``t`` in ``times`` (ascending).

    Times at or before the wave front arrival ``x / c`` give exactly 0.
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or not np.all(np.isfinite(t)):
        raise ValueError("times must be a 1-d array of finite values")
    if np.any(np.diff(t) < 0):
        raise ValueError("times must be sorted ascending")
    elapsed = t - problem.x / problem.medium.c
    y = np.zeros_like(t)
    live = elapsed > 0
    if live.any():
        y[live] = invert_grid(_shifted_transform(problem, policy), elapsed[live], config)
    return y


def step_response(t, problem, config=TalbotConfig(), policy=DEFAULT_POLICY):
    """Field ``Y(t, x)`` of the step-response problem at one time ``t > 0``."""
    if not (math.isfinite(t) and t > 0):
        raise ValueError(f"t must be finite and > 0, got {t!r}")
    return float(step_response_grid([t], problem, config, policy)[0])


def xi_grid(lo=0.0, hi=10.0, n=400):
    """Evenly spaced non-dimensional times ``(c t - x) / (c tau)``."""
    if not hi > lo or n < 2:
        raise ValueError("need hi > lo and n >= 2")
    return np.linspace(lo, hi, n)


def profile(x_list, xi_values, medium, config=TalbotConfig(), policy=DEFAULT_POLICY):
    """Transient profiles ``Y`` against ``xi`` at several distances ``x``.

    Returns :class:`FieldSample` records ordered by ``(x, xi)``. Points with
    ``t <= x / c`` are quiescent and get ``y = 0`` without inversion.
    """
    xs = sorted(float(x) for x in x_list)
    xis = np.sort(np.asarray(xi_values, dtype=float))
    length = medium.c * medium.tau
    samples = []
    for x in xs:
        if not (math.isfinite(x) and x >= 0):
            raise ValueError(f"x must be finite and >= 0, got {x!r}")
        t = (xis * length + x) / medium.c
        problem = StepResponseProblem(medium, x)
        try:
            y = step_response_grid(np.where(t > 0, t, 0.0), problem, config, policy)
        except Exception as exc:
            if hasattr(exc, "with_context"):
                raise exc.with_context(x=x) from exc
            raise
        for ti, yi in zip(t, y):
            xi = (medium.c * ti - x) / length
            samples.append(FieldSample(
                t=float(ti), x=x, y=float(yi), xi=float(xi), chi=x / length,
                near_front=bool(0 < xi < NEAR_FRONT_XI),
            ))
    return samples
