from functools import partial

import numpy as np
import pytest

from narrowband.analysis import (
    PeakReport,
    broad_peak,
    dip_report,
    dressed_resonances,
    effective_model,
    golden_section_max,
    lambda_peaks,
    locate_peaks,
    measure_fwhm,
    narrow_peak,
    sample_spectrum,
)
from narrowband.errors import BracketError, NoDipError, ParameterError, UndefinedModelError
from narrowband.model import LambdaParams, TwoLevelParams, lls_reflection, reflectance, tls_reflection

# Narrow/broad FWHM for g = 0.1, gamma' = 0.1, rabi = 2, gamma2 = 0: differences of the
# real roots of the half-maximum quartic 2 g^2 u^2 = A [(x u - rabi^2/4)^2 + (g+gamma')^2 u^2],
# u = x + delta, A = (g/(g+gamma'))^2, solved with mpmath.polyroots at 50 digits.
NARROW_FWHM = {5.0: 1.4322344563176132e-02, 10.0: 3.8853159454818334e-03, 15.0: 1.7547223430676856e-03}
BROAD_FWHM = {5.0: 0.38567765543682387, 10.0: 0.39611468405451817, 15.0: 0.39824527765693231}


def lam(delta, **kw):
    kw = {"coupling": 1.0, "v_g": 10.0, "gamma_prime": 0.1, "rabi": 2.0, **kw}
    return LambdaParams(delta=delta, **kw)


def lorentzian(center, width, height=1.0):
    # amplitude whose modulus squared is a Lorentzian of the given FWHM
    return lambda x: np.sqrt(height) / (1 + 2j * (x - center) / width)


class TestSampleSpectrum:

    def test_tls_symmetric(self):
        grid = sample_spectrum(partial(tls_reflection, TwoLevelParams(0.1, 0.1)), -1, 1, 5, axis="delta")
        assert grid.R[2] == pytest.approx(0.25, abs=1e-15)
        np.testing.assert_allclose(grid.R, grid.R[::-1], rtol=1e-15)
        assert len(grid) == 5 and grid.axis == "delta"

    def test_fig3_two_peaks(self):
        p = LambdaParams(coupling=0.2, gamma_prime=0.1, rabi=2.0, delta=0.0)
        grid = sample_spectrum(partial(lls_reflection, p), -2, 2, 401)
        assert grid.R[200] == 0
        np.testing.assert_allclose(grid.R, grid.R[::-1], rtol=1e-12, atol=1e-15)
        interior = grid.R[1:-1]
        n_max = np.sum((interior > grid.R[:-2]) & (interior > grid.R[2:]))
        assert n_max == 2

    def test_bounds_and_monotone_axis(self, g01):
        grid = sample_spectrum(partial(lls_reflection, g01), -8, 3, 1001)
        assert np.all(np.diff(grid.points) > 0)
        assert np.all((grid.R >= 0) & (grid.R <= 1 + 1e-9))

    def test_single_point_rejected(self):
        with pytest.raises(ParameterError):
            sample_spectrum(lambda x: 0j, -1, 1, 1)

    def test_error_names_point(self):
        p = LambdaParams(coupling=0.3, delta=0.5)   # 0/0 at x = -0.5
        with pytest.raises(Exception, match="grid point 1"):
            sample_spectrum(partial(lls_reflection, p), -1.0, 0.0, 3)

    def test_calls_once_per_point(self):
        calls = []
        sample_spectrum(lambda x: calls.append(x) or 0j, 0, 1, 7)
        assert len(calls) == 7


class TestPeaks:

    def test_lambda_two_peaks(self, g01):
        peaks = locate_peaks(partial(lls_reflection, g01), (-8, 3), 256, splits=(-5.0,))
        s = np.sqrt(29)
        assert [p.center for p in peaks] == pytest.approx([(-5 - s) / 2, (-5 + s) / 2], abs=1e-8)

    def test_lambda_resonant_control(self):
        peaks = lambda_peaks(lam(0.0))
        assert len(peaks) == 2
        assert peaks[0].center == pytest.approx(-1, abs=1e-8)
        assert peaks[1].center == pytest.approx(1, abs=1e-8)

    def test_tls_single_peak(self):
        peaks = locate_peaks(partial(tls_reflection, TwoLevelParams(0.1, 0.1)), (-1, 1), 64)
        assert len(peaks) == 1
        assert peaks[0].center == pytest.approx(0, abs=1e-8)
        assert peaks[0].amplitude == pytest.approx(0.25, abs=1e-15)

    def test_monotone_window_has_no_peak(self):
        assert locate_peaks(partial(tls_reflection, TwoLevelParams(0.1, 0.1)), (0.5, 2), 64) == []

    def test_refinement_never_worse_than_coarse(self, rng):
        for _ in range(20):
            p = lam(rng.uniform(1, 15), rabi=rng.uniform(0.5, 4), gamma2=rng.uniform(0, 0.02))
            ev = partial(lls_reflection, p)
            xs = np.linspace(-20, 5, 64)
            best = reflectance(ev(xs)).max()
            peaks = locate_peaks(ev, (-20, 5), 64, measure=False)
            assert max(pk.amplitude for pk in peaks) >= best

    def test_invariants(self, g01):
        for pk in lambda_peaks(g01):
            assert pk.half_left < pk.center < pk.half_right
            assert pk.fwhm == pytest.approx(pk.half_right - pk.half_left, rel=1e-15)
            assert pk.amplitude >= reflectance(lls_reflection(g01, pk.half_left))
            assert pk.amplitude >= reflectance(lls_reflection(g01, pk.half_right))

    def test_too_few_coarse_points(self):
        with pytest.raises(ParameterError):
            locate_peaks(lambda x: 0j, (0, 1), 16)

    def test_golden_section_on_parabola(self):
        x, fx = golden_section_max(lambda x: -(x - 0.3) ** 2, -1, 2)
        assert x == pytest.approx(0.3, abs=1e-7)


class TestFwhm:

    @pytest.mark.parametrize("gamma", [0.1, 0.5, 1.0, 5.0])
    def test_tls_width_law(self, gamma):
        ev = partial(tls_reflection, TwoLevelParams(gamma, 0.1))
        (pk,) = locate_peaks(ev, (-5 * gamma, 5 * gamma), 64)
        assert pk.fwhm == pytest.approx(gamma + 0.1, rel=1e-9)

    @pytest.mark.parametrize("center,width", [(0.0, 1.0), (3.7, 1e-3), (-12.0, 0.25)])
    def test_exact_lorentzian(self, center, width):
        ev = lorentzian(center, width, 0.8)
        peak = PeakReport(center=center, amplitude=0.8, window=(center - 5 * width, center + 5 * width))
        out = measure_fwhm(ev, peak)
        assert out.fwhm == pytest.approx(width, rel=1e-10)

    @pytest.mark.parametrize("delta", [5.0, 10.0, 15.0])
    def test_lambda_widths(self, delta):
        p = lam(delta)
        assert narrow_peak(p).fwhm == pytest.approx(NARROW_FWHM[delta], rel=1e-9)
        assert broad_peak(p).fwhm == pytest.approx(BROAD_FWHM[delta], rel=1e-9)

    def test_narrowing_with_detuning(self):
        widths = [narrow_peak(lam(d)).fwhm for d in (5.0, 10.0, 15.0)]
        assert widths[0] > widths[1] > widths[2]

    def test_zero_amplitude_rejected(self):
        with pytest.raises(ParameterError):
            measure_fwhm(lambda x: 0j, PeakReport(0.0, 0.0, (-1, 1)))

    def test_unbracketed(self):
        flat = PeakReport(center=0.0, amplitude=1.0, window=(-1, 1))
        with pytest.raises(BracketError):
            measure_fwhm(lambda x: 1.0 + 0j, flat)


class TestDressed:

    @pytest.mark.parametrize("delta,rabi,expected", [
        (5.0, 2.0, ((-5 + np.sqrt(29)) / 2, (-5 - np.sqrt(29)) / 2)),
        (0.0, 2.0, (1.0, -1.0)),
        (5.0, 0.0, (0.0, -5.0)),
    ])
    def test_roots(self, delta, rabi, expected):
        p = lam(delta, rabi=rabi)
        assert dressed_resonances(p) == pytest.approx(expected, abs=1e-15)

    def test_roots_satisfy_quadratic(self, rng):
        for _ in range(50):
            d, w = rng.uniform(-1e3, 1e3), rng.uniform(0, 5)
            xp, xm = dressed_resonances(lam(d, rabi=w))
            assert xp + xm == pytest.approx(-d, rel=1e-14)
            assert xp * xm == pytest.approx(-w ** 2 / 4, rel=1e-14, abs=1e-300)
            assert xp >= xm

    @pytest.mark.parametrize("delta", [5.0, 10.0, 15.0])
    def test_amplitude_constancy(self, delta):
        p = lam(delta)
        assert narrow_peak(p).amplitude == pytest.approx(0.25, abs=1e-14)


class TestDip:

    @pytest.mark.parametrize("delta", [5.0, 0.0])
    def test_lossless(self, delta):
        d = dip_report(lam(delta))
        assert d.location == -delta
        assert d.residual == 0

    def test_with_metastable_loss(self):
        p = lam(5.0, gamma2=0.01)
        d = dip_report(p)
        # closed form: g^2 gamma2^2 / [(rabi^2/4 + gamma2 (gamma'+g))^2 + delta^2 gamma2^2]
        assert d.closed_form == pytest.approx(1e-6 / (1.002 ** 2 + 25e-4), rel=1e-12)
        assert d.closed_form == pytest.approx(9.94e-7, rel=1e-3)
        assert d.closed_form == pytest.approx(reflectance(lls_reflection(p, -5.0)), rel=1e-12)
        xs = np.linspace(-5.01, -4.99, 200001)
        grid_min = reflectance(lls_reflection(p, xs)).min()
        assert d.residual <= grid_min + 1e-18
        assert d.residual == pytest.approx(grid_min, rel=1e-6)
        assert d.residual <= d.closed_form
        assert d.residual == pytest.approx(d.closed_form, rel=1e-2)

    def test_no_control_field(self):
        with pytest.raises(NoDipError):
            dip_report(lam(5.0, rabi=0.0))


class TestEffectiveModel:

    def test_stark_shift(self):
        em = effective_model(lam(5.0))
        assert em.stark_shift == pytest.approx(0.2, rel=1e-15)
        x_plus = dressed_resonances(lam(5.0))[0]
        assert x_plus == pytest.approx(0.19258240356725187, rel=1e-14)
        assert (em.stark_shift - x_plus) / em.stark_shift == pytest.approx(0.037, abs=5e-4)
        assert em.validity == pytest.approx(0.2)

    def test_width_prediction(self):
        em = effective_model(lam(10.0))
        assert em.predicted_fwhm == pytest.approx(0.2 * 4 / (20 * np.sqrt(104)), rel=1e-14)
        assert em.predicted_fwhm == pytest.approx(NARROW_FWHM[10.0], rel=0.15)

    def test_control_off(self):
        em = effective_model(lam(5.0, rabi=0.0))
        assert em.stark_shift == 0 and em.predicted_fwhm == 0

    def test_negative_detuning_mirrors(self):
        a, b = effective_model(lam(7.0)), effective_model(lam(-7.0))
        assert b.predicted_center == pytest.approx(-a.predicted_center)
        assert b.predicted_fwhm == pytest.approx(a.predicted_fwhm)

    def test_resonant_control_undefined(self):
        with pytest.raises(UndefinedModelError):
            effective_model(lam(0.0))


def _quartic_crossings(g, gp, rabi, delta):
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    g, gp, rabi, delta = map(mp.mpf, (g, gp, rabi, delta))
    L, c = g + gp, rabi ** 2 / 4
    A = (g / L) ** 2
    # (x^2 + delta x - c)^2 and u^2 = (x + delta)^2, highest power first
    quad = [1, 2 * delta, delta ** 2 - 2 * c, -2 * delta * c, c ** 2]
    u2 = [0, 0, 1, 2 * delta, delta ** 2]
    coeffs = [-A * q + (2 * g ** 2 - A * L ** 2) * u for q, u in zip(quad, u2)]
    roots = mp.polyroots(coeffs, maxsteps=200, extraprec=200)
    return sorted(float(r.real) for r in roots if abs(r.imag) < mp.mpf(10) ** -30)


@pytest.mark.parametrize("delta", [5.0, 10.0, 15.0])
def test_frozen_widths_reproduce(delta):
    r = _quartic_crossings("0.1", "0.1", 2, delta)
    assert r[1] - r[0] == pytest.approx(NARROW_FWHM[delta], rel=1e-12)
    assert r[3] - r[2] == pytest.approx(BROAD_FWHM[delta], rel=1e-12)
