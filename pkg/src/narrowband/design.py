"""
Inverse design of the control field.

Given a target center and width for the narrow reflection line, find the
control detuning ``delta`` and Rabi frequency ``rabi`` that produce it.  The
forward map runs the full peak-extraction pipeline on the closed-form
amplitude, so it is smooth but has no analytic derivative; the solver is a
damped Newton iteration with a forward-difference Jacobian.
"""

from dataclasses import dataclass

import numpy as np

from .analysis import narrow_peak
from .errors import InfeasibleTargetError, NarrowbandError, ParameterError
from .model import LambdaParams

__all__ = ["DesignResult", "narrow_line", "design_control_field"]


@dataclass(frozen=True)
class DesignResult:
    delta: float
    rabi: float
    center: float
    fwhm: float
    residuals: tuple
    iterations: int


def narrow_line(delta, rabi, coupling, v_g=1.0, gamma_prime=0.0, gamma2=0.0, omega1=0.0):
    """Forward map ``(delta, rabi) -> (center, fwhm)`` of the narrow peak."""
    params = LambdaParams(coupling=coupling, v_g=v_g, omega1=omega1, delta=delta,
                          rabi=rabi, gamma_prime=gamma_prime, gamma2=gamma2)
    peak = narrow_peak(params)
    return peak.center, peak.fwhm


def design_control_field(target_center, target_fwhm, coupling, v_g=1.0, gamma_prime=0.0,
                         gamma2=0.0, omega1=0.0, atol=1e-6, rtol=1e-8, max_iter=100,
                         fd_step=1e-6, initial=None):
    """Find ``(delta, rabi)`` placing the narrow line at the requested center and width.

    Parameters
    ----------
    target_center : float
        Photon detuning ``E_k - omega1`` of the narrow peak.  Must lie well
        outside the bare emitter line, ``|target_center| > 2 (g + gamma')``.
    target_fwhm : float
        Requested full width at half maximum, > 0.
    coupling, v_g, gamma_prime, gamma2, omega1 : float
        Fixed emitter and waveguide parameters.
    atol, rtol : float
        Converged once each residual is below ``atol`` and below ``rtol``
        times its target.
    fd_step : float
        Relative step of the finite-difference Jacobian.
    initial : tuple, optional
        Starting ``(delta, rabi)``; by default the far-detuned estimates
        ``delta = -center`` and ``rabi = |delta| sqrt(2 fwhm / (g + gamma'))``.

    Raises
    ------
    InfeasibleTargetError
        When ``max_iter`` iterations do not reach the tolerances.
    """
    if not target_fwhm > 0:
        raise ParameterError(f"target_fwhm must be > 0, got {target_fwhm!r}")
    fixed = dict(coupling=coupling, v_g=v_g, gamma_prime=gamma_prime, gamma2=gamma2, omega1=omega1)
    lw = coupling ** 2 / v_g + gamma_prime
    if not abs(target_center) > 2 * lw:
        raise ParameterError(
            f"target_center {target_center!r} lies inside the bare emitter line (|x| <= {2 * lw:.6g})"
        )

    if initial is None:
        d0 = -float(target_center)
        initial = (d0, abs(d0) * np.sqrt(2 * target_fwhm / lw))
    z = np.array(initial, dtype=float)
    target = np.array([target_center, target_fwhm], dtype=float)
    scale = np.abs(target)

    def residual(z):
        try:
            return np.array(narrow_line(z[0], z[1], **fixed)) - target
        except NarrowbandError:
            return None

    def merit(F):
        return float(np.sum((F / scale) ** 2))

    def admissible(z):
        return z[1] > 0 and np.sign(z[0]) == np.sign(initial[0])

    def infeasible(message, F, it):
        return InfeasibleTargetError(message, residuals=tuple(map(float, F)), iterations=it)

    F = residual(z)
    if F is None:
        raise infeasible(f"forward map undefined at the initial iterate {z.tolist()}", [np.nan] * 2, 0)
    for it in range(1, max_iter + 1):
        jac = np.empty((2, 2))
        for k in range(2):
            h = fd_step * abs(z[k])
            dz = z.copy()
            dz[k] += h
            Fk = residual(dz)
            if Fk is None:
                raise infeasible(f"forward map undefined near {z.tolist()}", F, it)
            jac[:, k] = (Fk - F) / h
        try:
            step = np.linalg.solve(jac, -F)
        except np.linalg.LinAlgError:
            raise infeasible(f"singular Jacobian at {z.tolist()}", F, it) from None

        # step halving doubles as the trust region: delta may not change sign
        lam = 1.0
        while True:
            trial = z + lam * step
            if admissible(trial):
                F_trial = residual(trial)
                if F_trial is not None and (merit(F_trial) < merit(F) or lam < 1e-3):
                    break
            lam /= 2
            if lam < 1e-10:
                raise infeasible(f"line search failed at {z.tolist()}", F, it)
        z, F = trial, F_trial
        if np.all(np.abs(F) < atol) and np.all(np.abs(F) <= rtol * scale):
            center, fwhm = F + target
            return DesignResult(float(z[0]), float(z[1]), float(center), float(fwhm),
                                tuple(map(float, F)), it)
    raise infeasible(f"no convergence after {max_iter} iterations; residuals {F.tolist()}",
                     F, max_iter)
