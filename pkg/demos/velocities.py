"""
Phase and group velocity
========================

Phase velocity ``omega / kappa`` and group velocity ``1 / (d kappa / d omega)``
stay below the wave-front velocity ``c`` at every frequency, with the group
velocity ahead of the phase velocity.
"""

from besselwave import MediumParams, group_velocity, group_velocity_semianalytic, omega_tau_grid, phase_velocity

medium = MediumParams()

# %%
# The group velocity is a Richardson-refined central difference of kappa.
# A second route differentiates Re k^2 and Im k^2 instead; the two agree
# to many digits.
for wt in (0.1, 3.5, 11.0, 1e3):
    print(f"omega tau = {wt:6g}: v_g = {group_velocity(wt, medium):.10f}  "
          f"(from A', B': {group_velocity_semianalytic(wt, medium):.10f})")

# %%
# Across the spectrum v_p < v_g < c. The group velocity is not monotone: it
# peaks near omega tau = 3.5, dips until about omega tau = 11 and then climbs
# towards c.
print(f"\n{'omega tau':>10} {'v_p/c':>9} {'v_g/c':>9}")
for wt in omega_tau_grid(1e-2, 1e3, 16):
    print(f"{wt:10.3g} {phase_velocity(wt, medium):9.5f} {group_velocity(wt, medium):9.5f}")
