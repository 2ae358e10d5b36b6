"""
Talbot inversion on known pairs
===============================

Before trusting the inverse Laplace transform on the wave problem, check it
on transforms whose originals are known in closed form.
"""

import numpy as np

from besselwave import TalbotConfig, catalogue_pair, convergence_study, invert, self_test

# %%
# The built-in self test inverts every catalogue pair on t in [1e-2, 1e2].
print(self_test().table())

# %%
# The classic cotangent contour is slower to converge but reaches the same
# accuracy with the default 48 nodes.
print()
print(self_test(TalbotConfig(contour_kind="classic_talbot")).table())

# %%
# Error against node count for exp(-sqrt(s)) / s at t = 1. Each doubling
# gains digits until rounding takes over.
for n, err in zip([8, 16, 32, 64, 128], convergence_study("erfc", 1.0, [8, 16, 32, 64, 128])):
    print(f"N = {n:4d}: |error| = {err:.2e}")

# %%
# Near a jump the contour method rings. The delayed step e^{-s}/s is only
# reliable a little past the jump.
pair = catalogue_pair("delayed_step")
for t in (0.8, 1.2, 2.0, 4.0):
    print(f"t = {t}: inverted {invert(pair.transform, t):+.3e}, exact {float(pair.original(np.array([t]))[0]):.0f}")
