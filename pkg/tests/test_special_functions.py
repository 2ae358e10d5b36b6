import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselwave import (
    BesselOverflow,
    EvalPolicy,
    InvalidOrder,
    NearPole,
    bessel_i,
    bessel_i_scaled,
    bessel_ratio,
    bessel_recurrence_check,
    kelvin_bei,
    kelvin_ber,
)
from besselwave.special_functions import (
    _bessel_i_asymptotic_scaled,
    _bessel_i_series,
    kelvin_pair_scaled,
)

from oracles import bessel_i_series, kelvin_series

ORDERS = [0, 1, 2, 0.5, 0.3, -0.4, 3.7]
RADII = [1e-3, 0.1, 1.0, 5.0, 18.0, 24.0, 26.0, 40.0, 120.0]
ANGLES = [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, -math.pi / 3]


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("nu", ORDERS)
@pytest.mark.parametrize("r", RADII)
def test_bessel_i_matches_mpmath(nu, r):
    for ang in ANGLES:
        z = cmath.rect(r, ang)
        ref = complex(mp.besseli(nu, z))
        if abs(ref) > 1e300:
            continue
        assert rel(bessel_i(nu, z), ref) < 1e-12


@pytest.mark.parametrize("nu,z", [(0, 0.7 + 0.2j), (2, 3j), (1, 30 + 5j), (0.5, 10 - 4j)])
def test_bessel_i_matches_own_series_oracle(nu, z):
    assert rel(bessel_i(nu, z), bessel_i_series(nu, z)) < 1e-12


def test_half_order_closed_form():
    for x in (0.2, 3.0, 40.0):
        exact = math.sqrt(2 / (math.pi * x)) * math.sinh(x)
        assert rel(bessel_i(0.5, x), exact) < 1e-13


def test_values_at_origin():
    assert bessel_i(0, 0) == 1
    assert bessel_i(2, 0) == 0
    assert bessel_i(0.5, 0) == 0
    with pytest.raises(BesselOverflow):
        bessel_i(-0.5, 0)


def test_scaled_agrees_with_unscaled():
    for z in (3 + 4j, 30 - 2j, 200j):
        nu = 1
        assert rel(bessel_i_scaled(nu, z), bessel_i(nu, z) * math.exp(-abs(z.real))) < 1e-13


def test_scaled_survives_where_unscaled_overflows():
    with pytest.raises(BesselOverflow):
        bessel_i(0, 800.0)
    ref = complex(mp.besseli(0, 800) * mp.exp(-800))
    assert rel(bessel_i_scaled(0, 800.0), ref) < 1e-13


@pytest.mark.parametrize("nu", [0, 1, 2, 0.5])
def test_series_and_asymptotic_agree_across_cutoff(nu):
    policy = EvalPolicy()
    for x in np.linspace(20, 30, 11):
        for ang in (0.0, math.pi / 4, math.pi / 2):
            z = cmath.rect(x, ang)
            series = _bessel_i_series(nu, z, policy) * math.exp(-abs(z.real))
            asym = _bessel_i_asymptotic_scaled(nu, z, policy)
            assert rel(series, asym) < 10 * policy.target_rel_tol


@pytest.mark.parametrize("beta", [0.5, 1, 2, 3.2])
def test_recurrence_residual(beta):
    for r in np.logspace(-2, 2, 9):
        for ang in ANGLES:
            assert bessel_recurrence_check(beta, cmath.rect(r, ang)) <= 1e-10


def test_recurrence_check_rejects_origin():
    with pytest.raises(ValueError):
        bessel_recurrence_check(1, 0)


@pytest.mark.parametrize("nu", [-1, -1.5, float("nan")])
def test_invalid_order(nu):
    with pytest.raises(InvalidOrder):
        bessel_i(nu, 1.0)


def test_invalid_order_carries_context():
    with pytest.raises(InvalidOrder) as info:
        bessel_i(-2, 1.0)
    assert info.value.context["nu"] == -2


def test_policy_validation():
    with pytest.raises(ValueError):
        EvalPolicy(target_rel_tol=1e-17)
    with pytest.raises(ValueError):
        EvalPolicy(max_terms=5)
    with pytest.raises(ValueError):
        EvalPolicy(series_cutoff_radius=-1)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from([0, 1, 2, 0.5, 2.5]),
    st.floats(1e-3, 60),
    st.floats(-math.pi + 1e-3, math.pi - 1e-3),
)
def test_conjugate_symmetry(nu, r, ang):
    z = cmath.rect(r, ang)
    a = bessel_i(nu, z.conjugate())
    b = bessel_i(nu, z).conjugate()
    assert abs(a - b) <= 1e-14 * abs(b)


# ratios

@pytest.mark.parametrize("nu", [0, 1, 0.5, -0.5, 2.3])
def test_ratio_matches_mpmath(nu):
    for r in [1e-3, 0.5, 3.0, 20.0, 25.0, 26.0, 80.0, 1e4]:
        for ang in ANGLES:
            z = cmath.rect(r, ang)
            ref = complex(mp.besseli(nu + 1, z) / mp.besseli(nu, z))
            assert rel(bessel_ratio(nu, z), ref) < 1e-12


def test_ratio_array_shape():
    z = np.array([[0.1, 1 + 1j], [30j, 50.0]])
    out = bessel_ratio(0, z)
    assert out.shape == z.shape
    for idx in np.ndindex(z.shape):
        assert out[idx] == pytest.approx(bessel_ratio(0, z[idx]), rel=1e-15)


def test_ratio_small_argument_limit():
    z = 1e-8 + 1e-8j
    assert rel(bessel_ratio(1, z), z / 4) < 1e-12


def test_ratio_monotone_on_positive_axis():
    x = np.logspace(-3, 3, 500)
    r = bessel_ratio(0, x.astype(complex)).real
    assert np.all((r > 0) & (r < 1))
    assert np.all(np.diff(r) > 0)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-2, 1e3), st.floats(1e-3, 10))
def test_ratio_monotone_property(x, dx):
    assert bessel_ratio(0, x + dx).real > bessel_ratio(0, x).real


def test_ratio_near_pole():
    # first zero of I_0 on the imaginary axis: I_0(i j) = J_0(j)
    j0 = float(mp.besseljzero(0, 1))
    with pytest.raises(NearPole):
        bessel_ratio(0, 1j * j0)


def test_ratio_rejects_low_order():
    with pytest.raises(InvalidOrder):
        bessel_ratio(-0.6, 1.0)


# Kelvin functions

@pytest.mark.parametrize("alpha", [0, 1, 2, 0.5])
@pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 3.0, 8.0, 15.0, 30.0, 60.0])
def test_kelvin_against_series_oracle(alpha, x):
    ref = kelvin_series(alpha, x)
    ber, bei = kelvin_ber(alpha, x), kelvin_bei(alpha, x)
    scale = abs(ref)
    assert abs(ber - ref.real) <= 1e-12 * scale
    assert abs(bei - ref.imag) <= 1e-12 * scale


def test_kelvin_against_mpmath():
    for x in (0.3, 2.0, 7.5, 20.0):
        assert rel(kelvin_ber(0, x), float(mp.ber(0, x))) < 1e-12
        assert rel(kelvin_bei(2, x), float(mp.bei(2, x))) < 1e-12


@pytest.mark.parametrize("alpha", [0, 2])
def test_kelvin_identity(alpha):
    for x in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0):
        lhs = complex(kelvin_ber(alpha, x), kelvin_bei(alpha, x))
        rot = bessel_i(alpha, cmath.rect(x, math.pi / 4))
        rhs = cmath.exp(1j * alpha * math.pi / 2) * rot
        assert abs(lhs - rhs) <= 1e-8 * (1 + abs(rot))


def test_kelvin_at_origin():
    assert kelvin_ber(0, 0) == 1.0
    assert kelvin_bei(0, 0) == 0.0
    assert kelvin_ber(2, 0) == 0.0


def test_kelvin_pair_scaled_large_argument():
    x = 2000.0
    pair = kelvin_pair_scaled(0, x)
    ref = mp.besseli(0, mp.mpc(x, 0) * mp.expjpi(0.25)) * mp.exp(-x / mp.sqrt(2))
    assert rel(pair, complex(ref)) < 1e-12


def test_kelvin_rejects_negative():
    with pytest.raises(ValueError):
        kelvin_ber(0, -1.0)
    with pytest.raises(InvalidOrder):
        kelvin_bei(-1, 1.0)
