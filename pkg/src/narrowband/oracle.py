"""
Independent numerical solutions of the single-photon scattering problem.

The real-space Hamiltonian is

    H = int dx [-i v_g C_R^+ d_x C_R + i v_g C_L^+ d_x C_L]
        + (omega1 - i gamma') |e><e| + (omega1 - delta - i gamma2) |f><f|
        + rabi/2 (|e><f| + |f><e|)
        + V int dx delta(x) [(C_R^+(x) + C_L^+(x)) |g><e| + h.c.]

with ``V = coupling`` (rotating-wave form of the emitter-waveguide term).  Two
routes compute the stationary state of a photon incident from the left:

``solve_stationary_system``
    Substitutes the step-function ansatz ``phi_R = e^{ikx}[theta(-x) + t theta(x)]``,
    ``phi_L = r e^{-ikx} theta(-x)`` and integrates the field equations across
    ``x = 0``.  The field at the discontinuity is the midpoint average.  The
    resulting 4x4 system in ``(r, t, e_k, f_k)`` is solved by pivoted elimination.

``lattice_scatter``
    Replaces the linear-dispersion continuum by a nearest-neighbor chain whose
    group velocity at the anchor wavenumber equals ``v_g``, solves the finite
    chain with exact plane-wave boundary rows and reads ``r`` and ``t`` from
    plane-wave fits in the outer quarter of each half-chain.

Neither route evaluates the closed form in :mod:`narrowband.model`.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .errors import BandEdgeError, ExtractionError, ParameterError
from .linalg import solve_pivoted
from .model import lls_reflection, reflectance

__all__ = [
    "ScatteringSolution",
    "LatticeSpec",
    "solve_stationary_system",
    "lattice_scatter",
    "convergence_study",
    "ConvergenceResult",
]


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes of the stationary scattering state."""

    r: complex
    t: complex
    e_k: complex
    f_k: complex
    residual: float = 0.0

    @property
    def R(self):
        return abs(self.r) ** 2

    @property
    def T(self):
        return abs(self.t) ** 2

    @property
    def flux(self):
        """``|r|**2 + |t|**2``; equals 1 without losses."""
        return self.R + self.T


def solve_stationary_system(params, x):
    """Boundary-matching solution at photon detuning ``x = E_k - omega1``.

    Rows of the linear system (energies measured from ``omega1``)::

        r + i V/v_g e                                   = 0     (left jump)
        t + i V/v_g e                                   = 1     (right jump)
        V/2 r + V/2 t + (-x - i gamma') e + rabi/2 f    = -V/2  (|e> row)
        rabi/2 e + (-x - delta - i gamma2) f            = 0     (|f> row)
    """
    V, vg = params.coupling, params.v_g
    a = np.array([
        [1.0, 0.0, 1j * V / vg, 0.0],
        [0.0, 1.0, 1j * V / vg, 0.0],
        [V / 2, V / 2, -x - 1j * params.gamma_prime, params.rabi / 2],
        [0.0, 0.0, params.rabi / 2, -x - params.delta - 1j * params.gamma2],
    ], dtype=complex)
    b = np.array([0.0, 1.0, -V / 2, 0.0], dtype=complex)
    r, t, e_k, f_k = solve_pivoted(a, b)
    residual = float(np.max(np.abs(a @ np.array([r, t, e_k, f_k]) - b)))
    return ScatteringSolution(complex(r), complex(t), complex(e_k), complex(f_k), residual)


@dataclass(frozen=True)
class LatticeSpec:
    """Discretization of the waveguide as a hopping chain.

    Parameters
    ----------
    spacing : float
        Lattice constant ``a``.
    half_length : int
        Number of chain sites on each side of the emitter site.
    k0a : float
        Anchor wavenumber (times ``a``) where the chain's group velocity is
        matched to ``v_g`` and its energy to ``omega1``.  Band center
        ``pi/2`` makes the dispersion locally linear.
    fit_tol : float
        Largest relative plane-wave fit residual accepted.
    """

    spacing: float
    half_length: int = 200
    k0a: float = np.pi / 2
    fit_tol: float = 1e-8

    def __post_init__(self):
        if not self.spacing > 0:
            raise ParameterError(f"spacing must be > 0, got {self.spacing!r}")
        if self.half_length < 100:
            raise ParameterError(f"half_length must be >= 100, got {self.half_length!r}")
        if not 0 < self.k0a < np.pi:
            raise ParameterError(f"k0a must lie strictly inside (0, pi), got {self.k0a!r}")

    def hopping(self, v_g):
        return v_g / (2 * self.spacing * np.sin(self.k0a))

    def band_offset(self, v_g):
        # E(k) = offset - 2 J cos(ka), pinned so that E(k0) = 0 (i.e. omega1)
        return 2 * self.hopping(v_g) * np.cos(self.k0a)


def _fit_plane_waves(n, psi, ka):
    basis = np.column_stack([np.exp(1j * ka * n), np.exp(-1j * ka * n)])
    coef, *_ = np.linalg.lstsq(basis, psi, rcond=None)
    resid = np.linalg.norm(basis @ coef - psi) / max(np.linalg.norm(psi), 1e-300)
    return coef, resid


def lattice_scatter(params, x, spec):
    """Scatter a photon of detuning ``x`` off the emitter on a hopping chain.

    The emitter's ``|e>`` couples to site 0 with ``V / sqrt(a)``, which gives
    the continuum guided rate ``V**2 / v_g`` at the anchor wavenumber.  The end
    rows carry the exact semi-infinite-lead closure (incoming wave on the left,
    outgoing only on the right).
    """
    a = spec.spacing
    J = spec.hopping(params.v_g)
    eps0 = spec.band_offset(params.v_g)
    cos_ka = (eps0 - x) / (2 * J)
    if not abs(cos_ka) < 1:
        raise BandEdgeError(
            f"x={x!r} lies outside the band of half-width {2 * J:.6g} around {eps0:.6g}; "
            f"reduce the spacing"
        )
    ka = float(np.arccos(cos_ka))
    N = spec.half_length
    n_sites = 2 * N + 1
    ie, i_f = n_sites, n_sites + 1
    size = n_sites + 2
    Vl = params.coupling / np.sqrt(a)
    out = np.exp(1j * ka)

    # (E - H) psi = src, site index j = n + N
    diag = np.full(size, x - eps0, dtype=complex)
    diag[0] += J * out
    diag[n_sites - 1] += J * out
    diag[ie] = x + 1j * params.gamma_prime
    diag[i_f] = x + params.delta + 1j * params.gamma2
    rows, cols, vals = list(range(size)), list(range(size)), list(diag)
    for j in range(n_sites - 1):
        rows += [j, j + 1]
        cols += [j + 1, j]
        vals += [J, J]
    rows += [N, ie, ie, i_f]
    cols += [ie, N, i_f, ie]
    vals += [-Vl, -Vl, -params.rabi / 2, -params.rabi / 2]
    A = sp.csc_matrix((vals, (rows, cols)), shape=(size, size), dtype=complex)

    src = np.zeros(size, dtype=complex)
    # incoming e^{ikn} on the left lead, folded into the row of site -N
    src[0] = -J * (np.exp(-1j * ka * (N + 1)) - np.exp(-1j * ka * (N - 1)))
    psi = spsolve(A, src)

    m = max(N // 4, 2)
    n_left = np.arange(-N, -N + m)
    n_right = np.arange(N - m + 1, N + 1)
    (inc, r), res_l = _fit_plane_waves(n_left, psi[:m], ka)
    (t, back), res_r = _fit_plane_waves(n_right, psi[n_sites - m:n_sites], ka)
    residual = max(res_l, res_r, abs(inc - 1), abs(back))
    if not residual < spec.fit_tol:
        raise ExtractionError(f"plane-wave fit residual {residual:.3e} exceeds {spec.fit_tol:.1e}")
    # lattice amplitudes -> continuum normalization
    scale = np.sqrt(a)
    return ScatteringSolution(complex(r), complex(t), complex(psi[ie] * scale),
                              complex(psi[i_f] * scale), float(residual))


@dataclass(frozen=True)
class ConvergenceResult:
    spacings: tuple
    errors: tuple
    order: float


def convergence_study(params, x, spacings, half_length=200):
    """Lattice-vs-closed-form reflectance error for a decreasing spacing sequence.

    Returns the error per spacing and the least-squares slope of
    ``log(error)`` against ``log(spacing)``.
    """
    spacings = [float(s) for s in spacings]
    if len(spacings) < 3:
        raise ParameterError("convergence_study needs at least 3 spacings")
    if any(b >= a for a, b in zip(spacings, spacings[1:])):
        raise ParameterError(f"spacings must be strictly decreasing, got {spacings}")
    exact = reflectance(lls_reflection(params, x))
    errors = []
    for a in spacings:
        sol = lattice_scatter(params, x, LatticeSpec(spacing=a, half_length=half_length))
        errors.append(abs(sol.R - exact))
    err = np.asarray(errors)
    if np.all(err > 0):
        order = float(np.polyfit(np.log(spacings), np.log(err), 1)[0])
    else:
        order = float("nan")
    return ConvergenceResult(tuple(spacings), tuple(errors), order)
