"""Extended-precision reference values computed independently of the package."""

import mpmath as mp

mp.mp.dps = 60


def bessel_i_series(nu, z):
    """I_nu(z) from its power series in 60-digit arithmetic."""
    z = mp.mpc(z)
    half = z / 2
    term = half**nu / mp.gamma(nu + 1)
    total = term
    k = 0
    while True:
        k += 1
        term *= half * half / (k * (k + nu))
        total += term
        if abs(term) < mp.mpf(10) ** (-55) * abs(total) and k > 5:
            return complex(total)


def kelvin_series(alpha, x):
    """ber_alpha(x) + i bei_alpha(x) from the defining series, 60 digits."""
    x = mp.mpf(x)
    total = mp.mpc(0)
    k = 0
    while True:
        term = (mp.expjpi(mp.mpf(3 * alpha) / 4 + mp.mpf(k) / 2)
                * (x / 2) ** (2 * k + alpha) / (mp.factorial(k) * mp.gamma(k + alpha + 1)))
        total += term
        if k > 5 and abs(term) < mp.mpf(10) ** (-55) * max(abs(total), 1e-300):
            return complex(total)
        k += 1


def k_squared_mp(omega_tau):
    """(omega tau)^2 k^2 in units c = tau = 1, via mpmath Bessel I."""
    z = mp.sqrt(mp.mpc(0, omega_tau))
    w = mp.mpf(omega_tau)
    return complex(w * w * mp.besseli(0, z) / mp.besseli(2, z))
