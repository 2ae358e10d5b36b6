"""
Dispersion and attenuation of harmonic waves
============================================

A harmonic wave ``exp(i (omega t - k x))`` in the memory medium has a complex
wavenumber ``k = kappa - i delta_att``. This walk-through evaluates both parts
over six decades of ``omega tau`` and looks at the two limits.
"""

import numpy as np

from besselwave import MediumParams, dispersion_AB, k_squared, omega_tau_grid, solve_branch

medium = MediumParams(c=1.0, tau=1.0)

# %%
# The squared wavenumber can be formed from complex Bessel values or from
# Kelvin functions of a real argument. Both routes should agree closely.
for wt in (1e-3, 1.0, 1e3):
    A, B = dispersion_AB(wt, medium)
    print(f"omega tau = {wt:g}: A + iB = {A:.6e} {B:+.6e}i   via I_nu: {k_squared(wt, medium):.6e}")

# %%
# Sweep the frequency. With c = tau = 1 the values are already the
# non-dimensional kappa c tau and delta_att c tau.
grid = omega_tau_grid(1e-3, 1e3, 13)
print(f"\n{'omega tau':>10} {'kappa':>12} {'delta_att':>12}")
for wt in grid:
    w = solve_branch(wt, medium)
    print(f"{wt:10.3g} {w.kappa:12.6g} {w.delta_att:12.6g}")

# %%
# At low frequency the medium is diffusive: kappa and delta_att both follow
# 2 sqrt(omega tau). At high frequency kappa -> omega / c while the
# attenuation grows only like sqrt(omega tau / 2).
w = solve_branch(1e-4, medium)
print(f"\nlow frequency:  kappa / 2sqrt(wt) = {w.kappa / 0.02:.5f}, delta / 2sqrt(wt) = {w.delta_att / 0.02:.5f}")
w = solve_branch(1e4, medium)
print(f"high frequency: kappa / wt = {w.kappa / 1e4:.5f}, delta / sqrt(wt/2) = {w.delta_att / np.sqrt(5e3):.5f}")
