"""
Closed-form single-photon reflection amplitudes.

Two emitters are covered:

* a two-level emitter (TLS) side-coupled to a 1D waveguide, parameterized by
  its guided decay rate ``gamma``, its loss rate ``gamma_prime`` and its
  transition frequency ``omega1``;
* a Lambda-type three-level emitter (LLS) whose excited state is dressed by a
  classical control field of Rabi frequency ``rabi`` and detuning ``delta``.

Units and sign conventions
--------------------------
Rates and frequencies share one arbitrary frequency unit and the waveguide
group velocity defaults to ``v_g = 1``.  Plots conventionally normalize the
detuning by ``gamma_prime``; that happens at presentation time only.

The TLS functions take the emitter detuning ``Delta = omega1 - c k``.  The LLS
functions take the photon detuning ``x = E_k - omega1 = -Delta``.  Use
:func:`to_photon_detuning` / :func:`to_emitter_detuning` to convert.

The LLS amplitude couples through ``gamma**2 / v_g`` (see :func:`guided_rate`).
In the ``rabi -> 0`` limit its magnitude spectrum is the TLS one with the
guided and loss rates both doubled; :func:`tls_equivalent_of_lambda` performs
that mapping explicitly.  The overall sign of :func:`lls_reflection` is opposite
to the flux-conserving convention obeyed by :func:`tls_reflection`; only
``|r|`` is physically meaningful here, and transmission is obtained from
:mod:`narrowband.oracle` instead.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SingularPointError

__all__ = [
    "TwoLevelParams",
    "LambdaParams",
    "tls_reflection",
    "lls_reflection",
    "reflectance",
    "guided_rate",
    "tls_equivalent_of_lambda",
    "to_photon_detuning",
    "to_emitter_detuning",
]

# Denominator moduli below this are treated as a pole.
SINGULAR_FLOOR = 1e-300


def _require_finite(**values):
    for name, value in values.items():
        if not np.isfinite(value):
            raise ParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class TwoLevelParams:
    """Two-level emitter: guided rate, loss rate and transition frequency."""

    gamma: float
    gamma_prime: float = 0.0
    omega1: float = 0.0

    def __post_init__(self):
        _require_finite(gamma=self.gamma, gamma_prime=self.gamma_prime, omega1=self.omega1)
        if self.gamma <= 0:
            raise ParameterError(f"gamma must be > 0, got {self.gamma!r}")
        if self.gamma_prime < 0:
            raise ParameterError(f"gamma_prime must be >= 0, got {self.gamma_prime!r}")


@dataclass(frozen=True)
class LambdaParams:
    """Lambda-type emitter driven by a control field.

    Parameters
    ----------
    coupling : float
        Emitter-waveguide coupling constant. Enters the amplitude only through
        ``coupling**2 / v_g``.
    v_g : float
        Group velocity of the guided mode.
    omega1 : float
        Frequency of the ``|g> <-> |e>`` transition.
    delta : float
        Detuning of the control field; the metastable level sits at
        ``omega1 - delta``.
    rabi : float
        Rabi frequency of the control field.
    gamma_prime, gamma2 : float
        Loss rates of the excited and metastable levels.
    """

    coupling: float
    v_g: float = 1.0
    omega1: float = 0.0
    delta: float = 0.0
    rabi: float = 0.0
    gamma_prime: float = 0.0
    gamma2: float = 0.0

    def __post_init__(self):
        _require_finite(
            coupling=self.coupling, v_g=self.v_g, omega1=self.omega1, delta=self.delta,
            rabi=self.rabi, gamma_prime=self.gamma_prime, gamma2=self.gamma2,
        )
        if self.coupling <= 0:
            raise ParameterError(f"coupling must be > 0, got {self.coupling!r}")
        if self.v_g <= 0:
            raise ParameterError(f"v_g must be > 0, got {self.v_g!r}")
        for name in ("rabi", "gamma_prime", "gamma2"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @classmethod
    def from_guided_rate(cls, g, v_g=1.0, **kwargs):
        """Build parameters whose ``coupling**2 / v_g`` equals ``g``."""
        if g <= 0:
            raise ParameterError(f"guided rate must be > 0, got {g!r}")
        return cls(coupling=float(np.sqrt(g * v_g)), v_g=v_g, **kwargs)


def to_photon_detuning(delta):
    """Emitter detuning ``omega1 - ck`` -> photon detuning ``E_k - omega1``."""
    return -np.asarray(delta) if np.ndim(delta) else -delta


def to_emitter_detuning(x):
    """Photon detuning ``E_k - omega1`` -> emitter detuning ``omega1 - ck``."""
    return -np.asarray(x) if np.ndim(x) else -x


def guided_rate(params):
    """Effective decay rate into the waveguide, ``coupling**2 / v_g``."""
    return params.coupling ** 2 / params.v_g


def reflectance(amp):
    """Reflection probability ``|amp|**2``."""
    return np.abs(amp) ** 2


def tls_reflection(params, delta):
    """Reflection amplitude of a two-level emitter.

    ``r = -1 / (1 + gamma'/gamma - 2i Delta/gamma)`` with ``Delta = omega1 - ck``.
    Accepts scalars or arrays for ``delta``.
    """
    if params.gamma <= 0:
        raise ParameterError("gamma must be > 0")
    g, gp = params.gamma, params.gamma_prime
    return -1.0 / (1.0 + gp / g - 2j * np.asarray(delta, dtype=float) / g)[()]


def lls_reflection(params, x):
    """Reflection amplitude of the driven Lambda emitter at photon detuning ``x``.

    Evaluated exactly as::

        r = -i g (omega1 - E_k - delta - i gamma2)
            / [(E_k - omega1 + i gamma')(E_k - omega1 + delta + i gamma2)
               - rabi**2/4 + i g (E_k - omega1 + delta + i gamma2)]

    with ``g = coupling**2 / v_g`` and ``x = E_k - omega1``.  No cancellation is
    attempted, so ``rabi = gamma2 = 0`` at ``x = -delta`` is a 0/0 point and
    raises :class:`SingularPointError`.
    """
    x = np.asarray(x, dtype=float)
    g = guided_rate(params)
    two_photon = (x + params.delta) + 1j * params.gamma2
    num = -1j * g * (-(x + params.delta) - 1j * params.gamma2)
    den = (
        (x + 1j * params.gamma_prime) * two_photon
        - params.rabi ** 2 / 4.0
        + 1j * g * two_photon
    )
    bad = np.abs(den) < SINGULAR_FLOOR
    if np.any(bad):
        where = x[bad] if x.ndim else x
        raise SingularPointError(
            f"denominator vanishes at x={np.ravel(where)[0]!r} for {params}"
        )
    return (num / den)[()]


def tls_equivalent_of_lambda(params):
    """Two-level parameters reproducing ``|r|`` of the Lambda emitter at ``rabi = 0``.

    The guided and loss rates are doubled: ``gamma_eq = 2 g`` and
    ``gamma_prime_eq = 2 gamma'``.  The magnitude spectra are even, so evaluating
    the TLS form at ``Delta`` and the Lambda form at ``x`` agree for either sign.
    """
    return TwoLevelParams(
        gamma=2.0 * guided_rate(params),
        gamma_prime=2.0 * params.gamma_prime,
        omega1=params.omega1,
    )
