"""
Two-level emitter: narrowing the line costs intensity
=====================================================

A two-level emitter side-coupled to a waveguide reflects a resonant photon
with probability ``(gamma / (gamma + gamma'))**2`` and its reflection line is
``gamma + gamma'`` wide.  Weakening the guided rate ``gamma`` narrows the line,
but once ``gamma`` drops to the loss rate ``gamma'`` the peak is down to 25%.
"""

# %%
from functools import partial

import numpy as np

from narrowband import TwoLevelParams, locate_peaks, reflectance, tls_reflection

gamma_prime = 0.1

# %% [markdown]
# Sample each spectrum and measure its peak.

# %%
print(f"{'gamma':>6} {'peak R':>8} {'FWHM':>8} {'gamma+gamma_prime':>18}")
for gamma in (0.1, 0.5, 1.0, 5.0):
    p = TwoLevelParams(gamma=gamma, gamma_prime=gamma_prime)
    w = gamma + gamma_prime
    (peak,) = locate_peaks(partial(tls_reflection, p), (-5 * w, 5 * w), 64)
    print(f"{gamma:6.2f} {peak.amplitude:8.4f} {peak.fwhm:8.4f} {w:18.4f}")

# %% [markdown]
# Normalizing the detuning by ``gamma'`` puts the curves on one axis.

# %%
delta = np.linspace(-30, 30, 7) * gamma_prime
for gamma in (0.1, 5.0):
    R = reflectance(tls_reflection(TwoLevelParams(gamma, gamma_prime), delta))
    print(f"gamma={gamma}:", np.array2string(R, precision=4))
