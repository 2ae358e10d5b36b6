"""
Step response of the semi-infinite medium
=========================================

The boundary is switched to 1 at t = 0. The disturbance travels with a sharp
front at speed c, and behind it the field creeps towards 1.
"""

import math

import numpy as np

from besselwave import MediumParams, StepResponseProblem, profile, step_response, xi_grid

medium = MediumParams()
locations = (0.25, 0.5, 1.0)

# %%
# Profiles against xi = (c t - x) / (c tau), the time since the front passed.
xis = xi_grid(0, 10, 401)
samples = profile(locations, xis, medium)
curves = {x: np.array([s.y for s in samples if s.chi == x]) for x in locations}
print(f"{'xi':>6}" + "".join(f"   x={x:<5}" for x in locations))
for xi in (0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
    i = int(np.argmin(np.abs(xis - xi)))
    print(f"{xis[i]:6.2f}" + "".join(f"   {curves[x][i]:.5f}" for x in locations))

# %%
# Just behind the front the field is an erfc in the elapsed time, damped by
# exp(-x / (c tau)).
x, elapsed = 0.5, 0.01
y = step_response(x + elapsed, StepResponseProblem(medium, x))
front = math.exp(-x) * math.erfc(x / (2 * math.sqrt(elapsed)))
print(f"\nnear the front at x = {x}: Y = {y:.4e}, front law {front:.4e}")

# %%
# Long after the front the response is diffusive,
# Y ~ erfc(sqrt(2) x / (c sqrt(tau t))). That is also why Y is still far from
# 1 at xi = 100.
for x in locations:
    for t in (100 + x, 1e3 * x):
        y = step_response(t, StepResponseProblem(medium, x))
        law = math.erfc(math.sqrt(2) * x / math.sqrt(t))
        print(f"x = {x}, t = {t:7.2f}: Y = {y:.6f}, diffusive law {law:.6f}")

# %%
# Same data from the command line:
#   besselwave step-response --xi 0:10:400 --x-over-ctau 0.25,0.5,1 --out profiles.csv
