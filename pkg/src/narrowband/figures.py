"""
Plot-ready datasets for the standard parameter sets.

Each figure id maps to a list of curves.  :func:`render_figure` samples every
curve on a uniform photon-detuning grid, writes one CSV per curve and a JSON
report with the measured peaks (and transparency dip for driven Lambda
curves).  Output is byte-identical for identical inputs.

Lambda-emitter curves come in two readings of the printed coupling value
``Gamma``: the *coupling* reading uses ``g = Gamma**2 / v_g`` with ``v_g = 1``,
the *rate* reading sets ``g = Gamma``.  The coupling reading is written to the
output directory itself, the rate reading to its ``rate_reading/``
subdirectory; the report lists both.

CSV columns: ``x, delta, delta_norm, R, re_r, im_r`` with ``delta = -x`` and
``delta_norm = (delta - f_c) / gamma_prime``.  ``f_c`` is the emitter detuning
of the analyzed peak: 0 for a two-level emitter and for an on-resonance control
field, the narrow peak otherwise.
"""

import dataclasses
import json
import os
import tempfile
from dataclasses import dataclass
from functools import partial
from pathlib import Path

import numpy as np

from .analysis import dip_report, lambda_peaks, locate_peaks, narrow_peak, sample_spectrum
from .model import LambdaParams, TwoLevelParams, guided_rate, lls_reflection, tls_reflection

__all__ = ["Curve", "FigurePreset", "PRESETS", "render_figure", "curve_csv", "atomic_write_text"]

DEFAULT_POINTS = 4001
MARGIN_HALF_WIDTHS = 10
CSV_HEADER = "x,delta,delta_norm,R,re_r,im_r"
RATE_DIR = "rate_reading"


@dataclass(frozen=True)
class Curve:
    label: str
    slug: str
    params: object
    reading: str = None

    @property
    def model(self):
        return "tls" if isinstance(self.params, TwoLevelParams) else "lambda"

    def amplitude(self, x):
        """Reflection amplitude at photon detuning ``x``."""
        if self.model == "tls":
            return tls_reflection(self.params, -x)
        return lls_reflection(self.params, x)


@dataclass(frozen=True)
class FigurePreset:
    id: str
    curves: tuple
    gamma_prime: float


def _lambda_pair(label, slug, gamma, **kw):
    # same printed Gamma under both readings of the guided rate
    return (
        Curve(f"{label} [coupling reading]", slug,
              LambdaParams(coupling=gamma, v_g=1.0, **kw), "coupling"),
        Curve(f"{label} [rate reading]", slug,
              LambdaParams.from_guided_rate(gamma, v_g=1.0, **kw), "rate"),
    )


def _build_presets():
    gp = 0.1
    fig2 = tuple(
        Curve(f"TLS Gamma={g}", f"tls_gamma{g}", TwoLevelParams(gamma=g, gamma_prime=gp))
        for g in (0.1, 0.5, 1.0, 5.0)
    )
    fig3 = sum((
        _lambda_pair(f"LLS Gamma={g}", f"lls_gamma{g}", g,
                     rabi=2.0, gamma_prime=gp, gamma2=0.0, delta=0.0)
        for g in (0.05, 0.2, 0.5)), ())
    fig4 = (Curve("TLS Gamma=0.1", "tls_gamma0.1", TwoLevelParams(gamma=0.1, gamma_prime=gp)),)
    fig4 += sum((
        _lambda_pair(f"LLS delta={d}", f"lls_delta{d}", 0.1,
                     rabi=2.0, gamma_prime=gp, gamma2=0.0, delta=d)
        for d in (0.0, 5.0)), ())
    fig5 = sum((
        _lambda_pair(f"LLS delta={d}", f"lls_delta{d}", 0.1,
                     rabi=2.0, gamma_prime=gp, gamma2=0.0, delta=d)
        for d in (5.0, 10.0, 15.0)), ())
    return {
        "fig2": FigurePreset("fig2", fig2, gp),
        "fig3": FigurePreset("fig3", fig3, gp),
        "fig4": FigurePreset("fig4", fig4, gp),
        "fig5": FigurePreset("fig5", fig5, gp),
    }


PRESETS = _build_presets()


def atomic_write_text(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def analyze_curve(curve):
    """Peaks (photon-detuning axis), dip and analyzed center ``f_c`` of a curve."""
    p = curve.params
    if curve.model == "tls":
        hw = (p.gamma + p.gamma_prime) / 2
        peaks = locate_peaks(curve.amplitude, (-4 * hw, 4 * hw), 64)
        return peaks, None, 0.0
    peaks = lambda_peaks(p)
    dip = dip_report(p) if p.rabi > 0 else None
    f_c = 0.0 if p.delta == 0 else -narrow_peak(p).center
    return peaks, dip, f_c


def default_window(curve, peaks):
    lo = min(pk.center - MARGIN_HALF_WIDTHS * pk.fwhm / 2 for pk in peaks)
    hi = max(pk.center + MARGIN_HALF_WIDTHS * pk.fwhm / 2 for pk in peaks)
    return lo, hi


def _fmt(v):
    return repr(float(v))


def curve_csv(grid, f_c, gamma_prime):
    """CSV text of a sampled curve; rows follow the grid order."""
    lines = [CSV_HEADER]
    sign = -1.0 if grid.axis == "delta" else 1.0
    for pt, R, a in zip(grid.points, grid.R, grid.amp):
        x = sign * float(pt) + 0.0
        delta = -x
        lines.append(",".join(map(_fmt, (
            x, delta, (delta - f_c) / gamma_prime, R, a.real, a.imag))))
    return "\n".join(lines) + "\n"


def _params_dict(curve):
    d = dataclasses.asdict(curve.params)
    if curve.model == "lambda":
        d["g"] = guided_rate(curve.params)
    return d


def render_figure(fig_id, out_dir, points=None, window=None):
    """Write the datasets and report of figure ``fig_id`` into ``out_dir``.

    Parameters
    ----------
    fig_id : str
        One of ``PRESETS``.
    out_dir : path-like
        Target directory; created if missing.
    points : int, optional
        Grid size per curve (default 4001).
    window : tuple, optional
        ``(x_min, x_max)`` in photon detuning applied to every curve.  By
        default each curve spans all of its peaks with ten half-widths of
        margin.

    Returns
    -------
    dict
        ``{"csv": [paths], "report": path}``.
    """
    if fig_id not in PRESETS:
        raise KeyError(f"unknown figure {fig_id!r}; choose from {sorted(PRESETS)}")
    preset = PRESETS[fig_id]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise PermissionError(f"output directory {out} is not writable")
    n = DEFAULT_POINTS if points is None else int(points)

    entries, written = [], []
    for curve in preset.curves:
        peaks, dip, f_c = analyze_curve(curve)
        lo, hi = window if window is not None else default_window(curve, peaks)
        grid = sample_spectrum(curve.amplitude, lo, hi, n, axis="x")
        sub = out / RATE_DIR if curve.reading == "rate" else out
        sub.mkdir(exist_ok=True)
        path = sub / f"{fig_id}_{curve.slug}.csv"
        atomic_write_text(path, curve_csv(grid, f_c, preset.gamma_prime))
        written.append(path)
        entries.append({
            "label": curve.label,
            "model": curve.model,
            "reading": curve.reading,
            "file": str(path.relative_to(out)),
            "params": _params_dict(curve),
            "axis": "x",
            "f_c": f_c,
            "peaks": [pk.as_dict() for pk in peaks],
            "dip": dip.as_dict() if dip is not None else None,
        })

    report = {
        "figure": fig_id,
        "normalization": {"divide_by": "gamma_prime", "gamma_prime": preset.gamma_prime},
        "curves": entries,
    }
    report_path = out / f"{fig_id}_report.json"
    atomic_write_text(report_path, json.dumps(report, indent=2) + "\n")
    return {"csv": written, "report": report_path}
