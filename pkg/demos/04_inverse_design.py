"""
Designing the control field
===========================

Pick where the narrow line should sit and how wide it should be.  The
solver then returns the control detuning and Rabi frequency that produce it.
"""

# %%
from narrowband import LambdaParams, narrow_peak
from narrowband.design import design_control_field

fixed = dict(coupling=1.0, v_g=10.0, gamma_prime=0.1)

for center, fwhm in [(-10.1, 3.9e-3), (-20.0, 1e-3), (12.0, 5e-3)]:
    res = design_control_field(center, fwhm, **fixed)
    check = narrow_peak(LambdaParams(delta=res.delta, rabi=res.rabi, **fixed))
    print(f"target ({center:+8.3f}, {fwhm:.2e}) -> delta {res.delta:+.6f}, rabi {res.rabi:.6f} "
          f"in {res.iterations} steps; achieved ({check.center:+.6f}, {check.fwhm:.3e})")
