"""
Spectrum sampling and line-shape analysis.

Peak centers are refined by golden-section search on the reflectance and
widths by bisection on ``R - R_max/2``.  Tolerances are fixed so that reports
are reproducible bit for bit.

For the driven Lambda emitter the reflection maxima sit exactly on the dressed
resonances, the roots of ``x (x + delta) = rabi**2 / 4``.  Without metastable
loss both maxima have height ``(g / (g + gamma'))**2`` and the spectrum
vanishes at the two-photon resonance ``x = -delta`` in between.  For a
far-detuned control field the root next to ``-delta`` gives a line much
narrower than the bare emitter; it is called the *narrow* peak below and the
other one the *broad* peak.
"""

from dataclasses import dataclass, replace
from functools import partial

import numpy as np
from scipy.optimize import bisect

from .errors import BracketError, NoDipError, ParameterError, UndefinedModelError
from .model import guided_rate, lls_reflection, reflectance

__all__ = [
    "SpectrumGrid",
    "PeakReport",
    "DipReport",
    "EffectiveModel",
    "sample_spectrum",
    "golden_section_max",
    "locate_peaks",
    "measure_fwhm",
    "dressed_resonances",
    "dip_report",
    "effective_model",
    "lambda_peaks",
    "narrow_peak",
    "broad_peak",
]

INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
CENTER_RTOL = 1e-10
CROSSING_RTOL = 1e-12


@dataclass(frozen=True)
class SpectrumGrid:
    """Uniformly sampled spectrum.

    ``axis`` is ``"delta"`` for the emitter detuning ``omega1 - ck`` or ``"x"``
    for the photon detuning ``E_k - omega1``.
    """

    axis: str
    points: np.ndarray
    R: np.ndarray
    amp: np.ndarray

    def __post_init__(self):
        if not (len(self.points) == len(self.R) == len(self.amp)):
            raise ValueError("points, R and amp must have equal lengths")
        if self.axis not in ("delta", "x"):
            raise ValueError(f"axis must be 'delta' or 'x', got {self.axis!r}")

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class PeakReport:
    """One reflection maximum.

    ``fwhm``, ``half_left`` and ``half_right`` stay ``None`` until
    :func:`measure_fwhm` has run.
    """

    center: float
    amplitude: float
    window: tuple
    fwhm: float = None
    half_left: float = None
    half_right: float = None

    def as_dict(self):
        return {
            "center": self.center,
            "amplitude": self.amplitude,
            "fwhm": self.fwhm,
            "half_left": self.half_left,
            "half_right": self.half_right,
            "window": list(self.window),
        }


@dataclass(frozen=True)
class DipReport:
    """Transparency minimum between the two dressed peaks.

    ``closed_form`` is the reflectance exactly at the two-photon resonance.
    """

    location: float
    residual: float
    closed_form: float

    def as_dict(self):
        return {"location": self.location, "residual": self.residual,
                "closed_form": self.closed_form}


@dataclass(frozen=True)
class EffectiveModel:
    """Far-detuned description of the narrow peak.

    ``validity`` is ``rabi / (2 |delta|)``; the predictions carry relative
    errors of order ``validity**2``.
    """

    stark_shift: float
    predicted_center: float
    predicted_fwhm: float
    validity: float

    @property
    def error_bound(self):
        return self.validity ** 2


def _reflectance_of(evaluator):
    return lambda x: float(reflectance(evaluator(x)))


def sample_spectrum(evaluator, start, stop, points, axis="x"):
    """Evaluate ``evaluator`` (detuning -> complex amplitude) on a uniform grid."""
    if points < 2:
        raise ParameterError(f"need at least 2 grid points, got {points}")
    if not (np.isfinite(start) and np.isfinite(stop)) or not stop > start:
        raise ParameterError(f"invalid range [{start!r}, {stop!r}]")
    xs = np.linspace(start, stop, int(points))
    amp = np.empty(len(xs), dtype=complex)
    for i, x in enumerate(xs):
        try:
            amp[i] = evaluator(x)
        except Exception as exc:
            raise type(exc)(f"{exc} [grid point {i}, detuning {x!r}]") from exc
    return SpectrumGrid(axis, xs, reflectance(amp), amp)


def golden_section_max(f, a, b, rtol=CENTER_RTOL):
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    Stops once the bracket is narrower than ``rtol * max(|a|, |b|, b - a)``,
    measured on the initial bracket.
    """
    tol = rtol * max(abs(a), abs(b), b - a)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def locate_peaks(evaluator, window, coarse_points=256, splits=(), measure=True):
    """Find the reflection maxima of ``evaluator`` inside ``window``.

    The window is sampled on ``coarse_points`` uniform points (plus any
    ``splits``), cut into sub-windows at interior local minima and at the
    ``splits``, and the best sample of each sub-window is refined by
    golden-section search between its neighbors.  Returns peaks sorted by
    center; an empty list when there is no interior maximum.
    """
    lo, hi = map(float, window)
    if not (np.isfinite(lo) and np.isfinite(hi)) or not hi > lo:
        raise ParameterError(f"invalid window {window!r}")
    if coarse_points < 32:
        raise ParameterError(f"need at least 32 coarse points, got {coarse_points}")
    R = _reflectance_of(evaluator)

    xs = np.linspace(lo, hi, int(coarse_points))
    inner = [float(s) for s in splits if lo < s < hi]
    if inner:
        xs = np.unique(np.concatenate([xs, inner]))
    rs = np.array([R(x) for x in xs])

    cuts = {0, len(xs) - 1}
    cuts.update(int(np.searchsorted(xs, s)) for s in inner)
    interior = np.arange(1, len(xs) - 1)
    minima = interior[(rs[interior] < rs[interior - 1]) & (rs[interior] <= rs[interior + 1])]
    cuts.update(int(i) for i in minima)
    cuts = sorted(cuts)

    found = set()
    for i0, i1 in zip(cuts, cuts[1:]):
        j = i0 + int(np.argmax(rs[i0:i1 + 1]))
        if 0 < j < len(xs) - 1 and rs[j] >= rs[j - 1] and rs[j] >= rs[j + 1] and rs[j] > 0:
            found.add(j)

    peaks = []
    for j in sorted(found):
        x, rx = golden_section_max(R, xs[j - 1], xs[j + 1])
        if rx < rs[j]:
            x, rx = xs[j], rs[j]
        peak = PeakReport(center=float(x), amplitude=float(rx), window=(lo, hi))
        peaks.append(measure_fwhm(evaluator, peak) if measure else peak)
    return peaks


def _crossing(R, center, half, direction, width):
    step = 1e-6 * width
    inside = center
    while True:
        outside = center + direction * step
        if R(outside) < half:
            break
        inside = outside
        if step > 10 * width:
            raise BracketError(
                f"half maximum not bracketed within {10 * width:.3g} of {center!r}"
            )
        step *= 2
    lo, hi = sorted((inside, outside))
    return bisect(lambda x: R(x) - half, lo, hi, xtol=CROSSING_RTOL * width)


def measure_fwhm(evaluator, peak):
    """Half-maximum crossings and full width of ``peak``.

    Searches outward from the center, doubling the step until the reflectance
    falls below half the amplitude, then bisects.
    """
    if not peak.amplitude > 0:
        raise ParameterError("peak amplitude must be > 0")
    R = _reflectance_of(evaluator)
    width = peak.window[1] - peak.window[0]
    half = peak.amplitude / 2
    left = _crossing(R, peak.center, half, -1, width)
    right = _crossing(R, peak.center, half, +1, width)
    return replace(peak, fwhm=right - left, half_left=left, half_right=right)


def dressed_resonances(params):
    """Roots ``(x_plus, x_minus)`` of ``x (x + delta) = rabi**2 / 4``."""
    d, w2 = params.delta, params.rabi ** 2 / 4
    s = np.hypot(d, params.rabi)
    if s == 0:
        return 0.0, 0.0
    # larger-magnitude root first, the other from the product x+ x- = -rabi**2/4
    big = -(d + np.copysign(s, d)) / 2
    small = -w2 / big
    return (small, big) if d >= 0 else (big, small)


def _dip_closed_form(params):
    g = guided_rate(params)
    gp, g2, d = params.gamma_prime, params.gamma2, params.delta
    return (g * g2) ** 2 / ((params.rabi ** 2 / 4 + g2 * (gp + g)) ** 2 + (d * g2) ** 2)


def dip_report(params):
    """Transparency dip at the two-photon resonance ``x = -delta``.

    Without metastable loss the dip is exact and the reflectance there
    vanishes.  Otherwise the minimum between the dressed peaks is located
    numerically; ``closed_form`` holds the reflectance at ``x = -delta``.
    """
    if params.rabi == 0:
        raise NoDipError("control field is off (rabi = 0); there is no transparency dip")
    R = _reflectance_of(partial(lls_reflection, params))
    x0 = -params.delta
    if params.gamma2 == 0:
        return DipReport(location=x0, residual=R(x0), closed_form=0.0)
    x_plus, x_minus = dressed_resonances(params)
    x, neg = golden_section_max(lambda x: -R(x), x_minus, x_plus)
    if R(x0) < -neg:
        x, neg = x0, -R(x0)
    return DipReport(location=float(x), residual=float(-neg), closed_form=_dip_closed_form(params))


def effective_model(params):
    """Far-detuned estimates for the narrow peak.

    The AC Stark shift is ``rabi**2 / (4 delta)``, the center the dressed root
    next to ``-delta`` and the width
    ``(g + gamma') rabi**2 / (2 |delta| sqrt(delta**2 + rabi**2))``.
    """
    d = params.delta
    if d == 0:
        raise UndefinedModelError("effective model needs a detuned control field (delta != 0)")
    g = guided_rate(params)
    w = params.rabi
    x_plus, x_minus = dressed_resonances(params)
    return EffectiveModel(
        stark_shift=w ** 2 / (4 * d),
        predicted_center=x_minus if d > 0 else x_plus,
        predicted_fwhm=(g + params.gamma_prime) * w ** 2 / (2 * abs(d) * np.hypot(d, w)),
        validity=w / (2 * abs(d)),
    )


def _root_width(params, root):
    # Lorentzian width of the dressed line at `root` (denominator linearized there)
    lw = guided_rate(params) + params.gamma_prime
    s = np.hypot(params.delta, params.rabi)
    if s == 0:
        return 2 * lw
    return 2 * lw * abs(root + params.delta) / s


def _peak_near(params, root, margin=10.0, coarse_points=64):
    evaluator = partial(lls_reflection, params)
    w = _root_width(params, root)
    lo, hi = root - margin * w, root + margin * w
    dip = -params.delta
    if params.rabi > 0:
        if root < dip:
            hi = min(hi, dip)
        else:
            lo = max(lo, dip)
    peaks = locate_peaks(evaluator, (lo, hi), coarse_points)
    if not peaks:
        return None
    return min(peaks, key=lambda p: abs(p.center - root))


def lambda_peaks(params, margin=10.0):
    """Measured reflection peaks of the Lambda emitter, sorted by center.

    One search window of ``margin`` estimated widths is placed around each
    dressed resonance that carries a line.
    """
    peaks = []
    for root in sorted(set(dressed_resonances(params))):
        if params.rabi == 0 and root == -params.delta:
            continue
        p = _peak_near(params, root, margin)
        if p is not None and all(abs(p.center - q.center) > 0 for q in peaks):
            peaks.append(p)
    return sorted(peaks, key=lambda p: p.center)


def narrow_peak(params, margin=10.0):
    """The dressed peak next to the two-photon resonance.

    For ``delta > 0`` that is the lower root ``x_minus``, for ``delta < 0`` the
    upper one; at ``delta = 0`` the lower root is returned.
    """
    x_plus, x_minus = dressed_resonances(params)
    root = x_plus if params.delta < 0 else x_minus
    peak = _peak_near(params, root, margin)
    if peak is None:
        raise BracketError(f"no reflection maximum found near x={root!r}")
    return peak


def broad_peak(params, margin=10.0):
    """The dressed peak on the far side of the two-photon resonance."""
    x_plus, x_minus = dressed_resonances(params)
    root = x_minus if params.delta < 0 else x_plus
    peak = _peak_near(params, root, margin)
    if peak is None:
        raise BracketError(f"no reflection maximum found near x={root!r}")
    return peak
