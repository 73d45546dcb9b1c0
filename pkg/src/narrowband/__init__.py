"""Single-photon reflection spectra of two-level and Lambda emitters in a 1D waveguide."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .model import (  # noqa: F401
    LambdaParams,
    TwoLevelParams,
    guided_rate,
    lls_reflection,
    reflectance,
    tls_equivalent_of_lambda,
    tls_reflection,
)
from .oracle import LatticeSpec, convergence_study, lattice_scatter, solve_stationary_system  # noqa: F401
from .analysis import (  # noqa: F401
    dip_report,
    dressed_resonances,
    effective_model,
    lambda_peaks,
    locate_peaks,
    measure_fwhm,
    narrow_peak,
    sample_spectrum,
)
from .design import design_control_field  # noqa: F401
from .figures import render_figure  # noqa: F401
