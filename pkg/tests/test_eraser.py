import numpy as np
import pytest

from quantum_eraser.eraser import (
    EraserConfig,
    MeasurementSetting,
    c_p_general,
    c_p_half_integer,
    c_p_quarter,
    central_visibility_law,
    coincidence,
    density_weights,
    full_state_oracle,
    idler_density_at,
    oracle_scale,
    default_config,
    pattern,
    visibility,
    xi_pair,
)
from quantum_eraser.channel import MziSetting, SpectralFilter
from quantum_eraser.propagation import SlitGeometry
from quantum_eraser.states import purity

P = MeasurementSetting.from_label("P")
M = MeasurementSetting.from_label("M")
H = MeasurementSetting.from_label("H")
XS = np.arange(-50, 51) * 30e-6


def quarter_pattern(n, xs=XS):
    cfg = default_config(n + 0.25)
    return pattern(xs, c_p_quarter(xs, n, cfg), cfg)


def test_config_wavelengths_must_agree():
    g = SlitGeometry(40e-6, 125e-6, 25e-6, 0.2, 702e-9)
    with pytest.raises(ValueError):
        EraserConfig(g, SpectralFilter(700e-9, 10e-9), MziSetting(0, 702e-9))


class TestXi:
    def test_real_part_nonpositive(self):
        rng = np.random.default_rng(1)
        xi = xi_pair(rng.uniform(-5, 5, 1000), 7.3, 0.0142)
        assert np.all(xi.xi_plus.real <= 0) and np.all(xi.xi_minus.real <= 0)

    def test_equal_on_axis(self):
        xi = xi_pair(0.0, 12.25, 0.0142)
        assert xi.xi_plus == xi.xi_minus


class TestIdlerDensity:
    def test_balanced_center_maximally_mixed(self):
        out = idler_density_at(0.0, default_config(0.0))
        assert out.weights.b == 0
        assert np.allclose(out.density.matrix, np.eye(2) / 2)

    def test_coherence_bounded_by_interferometer_decay(self):
        cfg = default_config(30.0)
        bound = np.exp(-2 * np.pi**2 * cfg.epsilon_lambda**2 * 900)
        assert bound == pytest.approx(0.027, abs=5e-4)
        w = density_weights(0.0, cfg)
        assert abs(w.b) / w.a_plus <= bound
        # near the axis the (eps_x -+ eps_I)^2 exponents stay within a hair of the bound
        for x in np.linspace(-0.3e-3, 0.3e-3, 21):
            w = density_weights(x, cfg)
            assert abs(w.b) / w.a_plus <= 1.1 * bound

    def test_zero_intensity_flag(self):
        cfg = default_config(0.25)
        out = idler_density_at(cfg.geometry.first_envelope_zero, cfg)
        assert out.zero_intensity and out.density is None

    @pytest.mark.parametrize("eps", [0.0, 0.25, 3.1, 19.25, 60.0])
    def test_purity_in_qubit_range(self, eps):
        cfg = default_config(eps)
        for x in XS:
            p = purity(idler_density_at(x, cfg).density)
            assert 0.5 - 1e-12 <= p <= 1 + 1e-12

    def test_purity_grows_with_coherence(self):
        cfg = default_config(0.25)
        xs = np.linspace(0, 0.5e-3, 50)
        ratios = [abs(density_weights(x, cfg).b) / density_weights(x, cfg).a_plus for x in xs]
        purities = [purity(idler_density_at(x, cfg).density) for x in xs]
        order = np.argsort(ratios)
        assert np.all(np.diff(np.array(purities)[order]) >= -1e-12)


class TestCoincidence:
    def test_HV_basis_is_pure_diffraction(self):
        rng = np.random.default_rng(9)
        cfg0 = default_config()
        for x, eps in zip(rng.uniform(-1.5e-3, 1.5e-3, 100), rng.uniform(0, 100, 100)):
            cfg = cfg0.with_epsilon_I(eps)
            assert abs(coincidence(x, H, cfg) - coincidence(x, H, cfg0)) < 1e-12
            assert coincidence(x, H, cfg) == pytest.approx(cfg.geometry.envelope(x) / 4, abs=1e-15)

    def test_balanced_P_has_no_fringes(self):
        cfg = default_config(0.0)
        c = coincidence(XS, P, cfg)
        assert np.allclose(c, cfg.geometry.envelope(XS) / 4, atol=1e-15)

    @pytest.mark.parametrize("eps", [0.0, 0.3, 7.25, 30.0])
    def test_proportional_to_c_p_general(self, eps):
        cfg = default_config(eps)
        assert np.allclose(coincidence(XS, P, cfg), c_p_general(XS, cfg) / 8, rtol=1e-13, atol=0)

    @pytest.mark.parametrize("theta, phi", [(0.3, 0.7), (np.pi / 4, 0), (1.1, -2.0), (0.0, 1.0)])
    def test_complementary_outcomes_sum_to_fringe_free_total(self, theta, phi):
        cfg = default_config(5.37)
        m = MeasurementSetting(theta, phi)
        total = coincidence(XS, m, cfg) + coincidence(XS, m.orthogonal(), cfg)
        w = density_weights(XS, cfg)
        assert np.allclose(total, (w.a_minus + w.a_plus) / 8, atol=1e-15)

    def test_P_and_M_anti_phased(self):
        cfg = default_config(7.25)
        env = cfg.geometry.envelope(XS)
        lobe = env > 0.5
        cp = coincidence(XS, P, cfg)[lobe] / env[lobe]
        cm = coincidence(XS, M, cfg)[lobe] / env[lobe]
        assert np.argmax(cp) == np.argmin(cm)
        assert np.argmin(cp) == np.argmax(cm)

    def test_R_at_n_approximates_P_at_quarter_offset(self):
        # exact only as eps_lambda -> 0; the residual is the Gaussian shift from n to n + 1/4
        r = MeasurementSetting.from_label("R")
        for n in (0, 3):
            cp = coincidence(XS, P, default_config(n + 0.25))
            cr = coincidence(XS, r, default_config(n))
            assert np.max(np.abs(cp - cr)) / cp.max() < 5e-3
        narrow = EraserConfig(
            default_config().geometry, SpectralFilter(702e-9, 1e-12), MziSetting.from_epsilon(3.25, 702e-9)
        )
        narrow_n = narrow.with_epsilon_I(3.0)
        assert np.allclose(coincidence(XS, P, narrow), coincidence(XS, r, narrow_n), atol=1e-9)


class TestCaseFormulas:
    def test_case_II_balanced(self):
        cfg = default_config(0.0)
        assert np.allclose(c_p_general(XS, cfg), 2 * cfg.geometry.envelope(XS), atol=1e-15)

    def test_case_I_far_unbalanced(self):
        cfg = default_config(100.0)
        k = 2 * np.pi**2 * cfg.epsilon_lambda**2
        assert np.exp(-k * 100**2) < 1e-17
        c = c_p_general(XS, cfg)
        assert np.allclose(c, 2 * cfg.geometry.envelope(XS), rtol=1e-14, atol=0)

    def test_quarter_center_matches_general(self):
        cfg = default_config(0.25)
        assert c_p_general(0.0, cfg) / 2 == pytest.approx(c_p_quarter(0.0, 0, cfg), abs=1e-6)

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 21])
    def test_half_integer_matches_general(self, n):
        cfg = default_config(n / 2)
        xs = np.linspace(-2.25e-3, 2.25e-3, 301)
        assert np.allclose(c_p_half_integer(xs, n, cfg), c_p_general(xs, cfg) / 2, atol=1e-9)

    def test_half_integer_n0_is_envelope(self):
        cfg = default_config(0.0)
        assert np.array_equal(c_p_half_integer(XS, 0, cfg), cfg.geometry.envelope(XS))

    def test_half_integer_sinh_argument(self):
        # 2 pi^2 (10/702.2)^2 * 3.57
        el = 10 / 702.2
        assert 2 * np.pi**2 * el**2 * 3.57 == pytest.approx(0.0143, abs=5e-5)

    def test_half_integer_n10_modulation_small(self):
        cfg = default_config(5.0)
        eps = np.linspace(-4, 4, 2001)
        xs = eps * cfg.geometry.L * cfg.geometry.wavelength / (2 * cfg.geometry.d)
        env = cfg.geometry.envelope(xs)
        keep = env > 1e-6
        modulation = np.abs(c_p_half_integer(xs, 10, cfg)[keep] / env[keep] - 1)
        assert modulation.max() < 0.15

    def test_quarter_deep_minimum(self):
        cfg = default_config(0.25)
        x = 0.25 * cfg.geometry.fringe_period
        ratio = c_p_quarter(x, 0, cfg) / cfg.geometry.envelope(x)
        # 1 - exp(-2 pi^2 eps_lambda^2 / 16)
        assert ratio == pytest.approx(1 - np.exp(-2 * np.pi**2 * (10 / 702) ** 2 / 16), rel=1e-9)
        assert ratio == pytest.approx(2.5e-4, abs=1e-5)

    def test_quarter_center_is_envelope(self):
        assert c_p_quarter(0.0, 0, default_config(0.25)) == 1

    @pytest.mark.parametrize("n", [0, 3, 7, 12, 20])
    def test_quarter_tracks_general(self, n):
        cfg = default_config(n + 0.25)
        eps = np.linspace(-4, 4, 4001)
        xs = eps * cfg.geometry.fringe_period
        general = c_p_general(xs, cfg) / 2
        err = np.max(np.abs(c_p_quarter(xs, n, cfg) - general)) / general.max()
        assert err < 0.01

    def test_wrong_eps_rejected(self):
        with pytest.raises(ValueError):
            c_p_quarter(0.0, 2, default_config(1.0))

    def test_visibility_law_values(self):
        el = 10 / 702.2
        v = central_visibility_law([7, 19, 35], el)
        assert v == pytest.approx([0.822, 0.236, 0.0074], rel=3e-3)


class TestVisibility:
    def test_quarter_n0_near_unity(self):
        v = visibility(quarter_pattern(0))
        assert v.has_fringes and v.value >= 0.99

    def test_balanced_has_no_fringes(self):
        cfg = default_config(0.0)
        v = visibility(pattern(XS, c_p_general(XS, cfg), cfg))
        assert v == (0.0, False)

    def test_quarter_n19(self):
        assert visibility(quarter_pattern(19)).value == pytest.approx(0.236, abs=0.01)

    def test_insufficient_span(self):
        xs = np.linspace(-0.2e-3, 0.2e-3, 21)
        assert visibility(quarter_pattern(0, xs)) == (0.0, False)

    def test_monotone_and_matches_law(self):
        el = default_config().epsilon_lambda
        vis = [visibility(quarter_pattern(n)).value for n in range(36)]
        assert np.all(np.diff(vis) < 0)
        assert np.allclose(vis, central_visibility_law(np.arange(36), el), rtol=0.01)


class TestFullStateOracle:
    def test_HV_envelope(self):
        cfg = default_config(0.0)
        xs = np.linspace(-1.5e-3, 1.5e-3, 9)
        o = np.array([full_state_oracle(x, H, cfg) for x in xs])
        env = cfg.geometry.envelope(xs)
        assert np.allclose(o / o[4], env, atol=1e-6)

    def test_quarter_P_matches_general(self):
        cfg = default_config(0.25)
        xs = np.linspace(0, cfg.geometry.fringe_period, 5)
        o = np.array([full_state_oracle(x, P, cfg) for x in xs])
        ref = c_p_general(xs, cfg)
        k = oracle_scale(ref, o)
        assert np.max(np.abs(ref - k * o) / ref) < 1e-5

    def test_fixed_normalization_constant(self):
        # one global constant across eps_I and measurement settings
        ratios = []
        for eps in (0.0, 1.7, 19.25):
            cfg = default_config(eps)
            for m in (P, H, MeasurementSetting(0.4, 1.2)):
                for x in (-0.7e-3, 0.1e-3, 1.3e-3):
                    ratios.append(coincidence(x, m, cfg) / full_state_oracle(x, m, cfg))
        assert np.allclose(ratios, ratios[0], rtol=1e-9)

    def test_unbalanced_fringes_small(self):
        cfg = default_config(30.0)
        xs = np.linspace(0, cfg.geometry.fringe_period, 5)
        o = np.array([full_state_oracle(x, P, cfg) for x in xs])
        k = oracle_scale(c_p_general(xs, cfg), o)
        fringe_free = 2 * cfg.geometry.envelope(xs)
        assert np.max(np.abs(k * o / fringe_free - 1)) < 0.03

    def test_undersampled(self):
        with pytest.raises(ValueError, match="undersampled"):
            full_state_oracle(0.0, P, default_config(4000.0), n_points=1024)

    def test_minimum_points(self):
        with pytest.raises(ValueError):
            full_state_oracle(0.0, P, default_config(), n_points=512)
