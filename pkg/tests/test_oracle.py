import numpy as np
import pytest

from narrowband.errors import BandEdgeError, ParameterError, SingularSystemError
from narrowband.model import LambdaParams, lls_reflection, reflectance
from narrowband.oracle import (
    LatticeSpec,
    convergence_study,
    lattice_scatter,
    solve_stationary_system,
)

FIG4_DELTA5 = LambdaParams(coupling=0.1, v_g=1.0, gamma_prime=0.1, rabi=2.0, delta=5.0)
X_MINUS_5 = (-5 - np.sqrt(29)) / 2


def lossless(rng):
    return LambdaParams(coupling=rng.uniform(0.05, 1.5), v_g=rng.uniform(0.3, 3),
                        delta=rng.uniform(-10, 10), rabi=rng.uniform(0, 4))


class TestStationarySystem:

    def test_matches_closed_form_on_grid(self, g01):
        xs = np.linspace(-8, 3, 201)
        closed = np.abs(lls_reflection(g01, xs))
        oracle = np.array([abs(solve_stationary_system(g01, x).r) for x in xs])
        assert np.max(np.abs(oracle - closed)) < 1e-10

    def test_closed_form_sign_is_flipped(self, g01):
        for x in (-5.19, -3.0, 0.2):
            assert solve_stationary_system(g01, x).r == pytest.approx(-lls_reflection(g01, x), abs=1e-13)

    def test_lossless_flux_and_phase(self, rng):
        for _ in range(100):
            p = lossless(rng)
            sol = solve_stationary_system(p, rng.uniform(-12, 12))
            assert sol.flux == pytest.approx(1.0, abs=1e-10)
            assert sol.r.real == pytest.approx(-sol.R, abs=1e-10)

    def test_lossy_flux_bounded(self, rng):
        for _ in range(100):
            p = LambdaParams(coupling=rng.uniform(0.05, 1.5), delta=rng.uniform(-10, 10),
                             rabi=rng.uniform(0, 4), gamma_prime=rng.uniform(0, 0.5),
                             gamma2=rng.uniform(0, 0.1))
            assert solve_stationary_system(p, rng.uniform(-12, 12)).flux <= 1 + 1e-10

    def test_decoupled_metastable_amplitude(self):
        p = LambdaParams(coupling=0.4, delta=3.0, gamma_prime=0.1)
        for x in (-1.0, 0.0, 0.5):
            assert solve_stationary_system(p, x).f_k == 0

    def test_transmission_is_one_plus_r(self, g01):
        sol = solve_stationary_system(g01, -0.7)
        assert sol.t == pytest.approx(1 + sol.r, abs=1e-14)
        assert sol.residual < 1e-13

    def test_singular_degeneracy(self):
        # decoupled, lossless metastable level degenerate with the photon
        p = LambdaParams(coupling=0.4, delta=3.0)
        with pytest.raises(SingularSystemError) as exc:
            solve_stationary_system(p, -3.0)
        assert exc.value.pivot is not None


class TestLattice:

    @pytest.mark.parametrize("a", [0.1, 0.05, 0.025])
    def test_perfect_mirror(self, a):
        p = LambdaParams(coupling=0.3, delta=2.0)
        sol = lattice_scatter(p, 0.0, LatticeSpec(spacing=a))
        assert sol.R == pytest.approx(1.0, abs=1e-12)
        assert sol.flux == pytest.approx(1.0, abs=1e-10)

    def test_lossless_flux(self, rng):
        for _ in range(10):
            p = lossless(rng)
            sol = lattice_scatter(p, rng.uniform(-2, 2), LatticeSpec(spacing=0.05))
            assert sol.flux == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("x", [-0.19, X_MINUS_5])
    def test_converges_to_closed_form(self, x):
        exact = reflectance(lls_reflection(FIG4_DELTA5, x))
        errs = [abs(lattice_scatter(FIG4_DELTA5, x, LatticeSpec(spacing=a)).R - exact)
                for a in (0.1, 0.05, 0.025, 0.0125)]
        assert all(e1 > e2 for e1, e2 in zip(errs, errs[1:]))
        assert errs[-1] < 1e-4

    def test_transparency_survives(self):
        sol = lattice_scatter(FIG4_DELTA5, -5.0, LatticeSpec(spacing=0.1))
        assert sol.R < 1e-24

    def test_agrees_with_boundary_matching(self, g01):
        for x in (-5.3, -1.0, 0.4):
            a = lattice_scatter(g01, x, LatticeSpec(spacing=1e-3))
            b = solve_stationary_system(g01, x)
            assert a.r == pytest.approx(b.r, abs=1e-4)
            assert a.t == pytest.approx(b.t, abs=1e-4)
            assert a.e_k == pytest.approx(b.e_k, rel=1e-4)

    def test_off_center_anchor(self, g01):
        sol = lattice_scatter(g01, 0.3, LatticeSpec(spacing=1e-3, k0a=1.2))
        assert sol.R == pytest.approx(solve_stationary_system(g01, 0.3).R, abs=1e-3)

    def test_band_edge(self):
        # band half-width is v_g / a = 10
        with pytest.raises(BandEdgeError):
            lattice_scatter(FIG4_DELTA5, -12.0, LatticeSpec(spacing=0.1))

    @pytest.mark.parametrize("kwargs", [
        dict(spacing=0.0), dict(spacing=0.1, half_length=50), dict(spacing=0.1, k0a=np.pi),
    ])
    def test_invalid_lattice_settings(self, kwargs):
        with pytest.raises(ParameterError):
            LatticeSpec(**kwargs)


class TestConvergenceStudy:

    def test_lossless_tls_limit_strictly_decreasing(self):
        p = LambdaParams(coupling=0.3, delta=2.0)
        res = convergence_study(p, 0.05, [0.2, 0.1, 0.05, 0.025])
        assert all(a > b for a, b in zip(res.errors, res.errors[1:]))

    def test_fig4_narrow_peak_order(self):
        res = convergence_study(FIG4_DELTA5, X_MINUS_5, [0.1, 0.05, 0.025, 0.0125])
        assert res.order >= 0.9

    @pytest.mark.parametrize("spacings", [[0.1, 0.1, 0.05], [0.1, 0.05], [0.05, 0.1, 0.2]])
    def test_bad_spacings(self, spacings):
        with pytest.raises(ParameterError):
            convergence_study(FIG4_DELTA5, -1.0, spacings)
