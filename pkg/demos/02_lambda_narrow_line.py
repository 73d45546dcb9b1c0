"""
Driven Lambda emitter: a narrow line that keeps its height
==========================================================

Dressing the excited state with a control field splits the reflection into
two lines at the roots of ``x (x + delta) = rabi**2 / 4``.  The spectrum
vanishes at the two-photon resonance ``x = -delta`` between them.  For a
far-detuned control field, the line next to ``-delta`` becomes very narrow
while its height stays at ``(g / (g + gamma'))**2``.
"""

# %%
from narrowband import (
    LambdaParams,
    dip_report,
    dressed_resonances,
    effective_model,
    lambda_peaks,
    narrow_peak,
)

# g = coupling**2 / v_g = 0.1, gamma' = 0.1
base = dict(coupling=1.0, v_g=10.0, gamma_prime=0.1, rabi=2.0)

# %% [markdown]
# With a resonant control field the two lines are symmetric, at ``+-rabi/2``.

# %%
for pk in lambda_peaks(LambdaParams(delta=0.0, **base)):
    print(f"center {pk.center:+.6f}  height {pk.amplitude:.4f}  FWHM {pk.fwhm:.4f}")

# %% [markdown]
# Increasing the detuning narrows the line near ``x = -delta``.

# %%
print(f"{'delta':>6} {'x_minus':>11} {'center':>11} {'height':>7} {'FWHM':>10} {'predicted':>10}")
for delta in (5.0, 10.0, 15.0, 30.0):
    p = LambdaParams(delta=delta, **base)
    pk = narrow_peak(p)
    em = effective_model(p)
    print(f"{delta:6.1f} {dressed_resonances(p)[1]:11.6f} {pk.center:11.6f} "
          f"{pk.amplitude:7.4f} {pk.fwhm:10.3e} {em.predicted_fwhm:10.3e}")

# %% [markdown]
# Metastable-state loss fills the dip in a little.

# %%
for gamma2 in (0.0, 1e-3, 1e-2):
    d = dip_report(LambdaParams(delta=5.0, gamma2=gamma2, **base))
    print(f"gamma2={gamma2:<6} dip at {d.location:+.6f}  R_min {d.residual:.3e}  "
          f"R(-delta) {d.closed_form:.3e}")
