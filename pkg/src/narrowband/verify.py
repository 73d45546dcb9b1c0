"""
Self-contained verification battery.

Cross-checks the closed-form amplitudes against the two scattering oracles on
a fixed set of parameters.  Everything is deterministic: the random points
come from a seeded generator.
"""

from dataclasses import dataclass

import numpy as np

from .analysis import dressed_resonances
from .model import LambdaParams, guided_rate, lls_reflection
from .oracle import convergence_study, solve_stationary_system

__all__ = ["CheckResult", "BATTERY", "oracle_grid", "run_battery"]

SEED = 20140101


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.value:.3e} (tol {self.tolerance:.1e})"


def _lls(gamma, delta, **kw):
    kw.setdefault("rabi", 2.0)
    kw.setdefault("gamma_prime", 0.1)
    return LambdaParams(coupling=gamma, v_g=1.0, delta=delta, **kw)


# coupling reading (v_g = 1) of the standard parameter sets, plus g = 0.1
BATTERY = {
    "fig3 Gamma=0.05": _lls(0.05, 0.0),
    "fig3 Gamma=0.2": _lls(0.2, 0.0),
    "fig3 Gamma=0.5": _lls(0.5, 0.0),
    "fig4 delta=0": _lls(0.1, 0.0),
    "fig4/5 delta=5": _lls(0.1, 5.0),
    "fig5 delta=10": _lls(0.1, 10.0),
    "fig5 delta=15": _lls(0.1, 15.0),
    "g=0.1 delta=5": LambdaParams(coupling=1.0, v_g=10.0, delta=5.0, rabi=2.0, gamma_prime=0.1),
}


def oracle_grid(params, points=201):
    """Uniform grid covering both dressed resonances with unit margin."""
    x_plus, x_minus = dressed_resonances(params)
    return np.linspace(min(x_minus, x_plus) - 1.0, max(x_minus, x_plus) + 1.0, points)


def oracle_deviation(params, xs):
    """Largest ``| |r_oracle| - |r_closed| |`` over ``xs``."""
    closed = np.abs(lls_reflection(params, xs))
    oracle = np.array([abs(solve_stationary_system(params, x).r) for x in xs])
    return float(np.max(np.abs(oracle - closed)))


def lossless_points(n=50, seed=SEED):
    """Fixed pseudo-random lossless parameter sets and detunings."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        params = LambdaParams(
            coupling=rng.uniform(0.05, 1.0), v_g=rng.uniform(0.5, 2.0),
            delta=rng.uniform(-15, 15), rabi=rng.uniform(0, 4),
        )
        out.append((params, rng.uniform(-20, 20)))
    return out


def run_battery():
    """Run every check; returns a list of :class:`CheckResult`."""
    results = []
    for name, params in BATTERY.items():
        dev = oracle_deviation(params, oracle_grid(params))
        results.append(CheckResult(f"oracle agreement [{name}]", dev < 1e-10, dev, 1e-10))

    sols = [(p, solve_stationary_system(p, x)) for p, x in lossless_points()]
    flux = max(abs(s.flux - 1) for _, s in sols)
    results.append(CheckResult("lossless flux |r|^2+|t|^2=1 (50 points)", flux < 1e-10, flux, 1e-10))
    rel = max(abs(s.r.real + s.R) for _, s in sols)
    results.append(CheckResult("lossless Re r = -|r|^2 (50 points)", rel < 1e-10, rel, 1e-10))

    worst = 0.0
    for params in BATTERY.values():
        worst = max(worst, float(abs(lls_reflection(params, -params.delta)) ** 2))
    results.append(CheckResult("transparency R(x=-delta)", worst < 1e-24, worst, 1e-24))

    worst = 0.0
    for params in BATTERY.values():
        g = guided_rate(params)
        for root in dressed_resonances(params):
            worst = max(worst, abs(abs(lls_reflection(params, root)) - g / (g + params.gamma_prime)))
    results.append(CheckResult("dressed-resonance |r| = g/(g+gamma')", worst < 1e-12, worst, 1e-12))

    params = BATTERY["fig4/5 delta=5"]
    x_minus = dressed_resonances(params)[1]
    conv = convergence_study(params, x_minus, [0.1, 0.05, 0.025, 0.0125])
    results.append(CheckResult("lattice convergence order >= 0.9", conv.order >= 0.9,
                               conv.order, 0.9))
    return results
