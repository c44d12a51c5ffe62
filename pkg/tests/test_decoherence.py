import math

import mpmath
import numpy as np
import pytest

from multislit import (
    HBAR,
    K_B,
    PLANCK,
    BathParameters,
    DecoherenceSchedule,
    DimensionMismatchError,
    FraunhoferLimitError,
    PathConfiguration,
    SlitGeometry,
    ValidationError,
    bath_from_scaled_time,
    decoherence_time,
    diffusion_coefficient,
    flight_time,
    pair_decoherence_factor,
    screen_density_exact,
    screen_density_fraunhofer,
    screen_density_maxcoherent,
    screen_density_selective,
    selective_bracket,
    spreading_width,
)
from multislit.states import DetectorOverlapMatrix

NEON_MASS = 3.349e-26
NEON_T = 2.5e-3


def neon(n=4):
    return SlitGeometry(n=n, ell=6e-6, eps=2e-6, wavelength=0.018e-6, L=37e-3)


def test_diffusion_coefficient():
    bath = BathParameters(gamma=2.0, temperature=3.0, mass=5.0)
    assert diffusion_coefficient(bath) == pytest.approx(2.0 * 5.0 * 2.0 * K_B * 3.0, rel=1e-15)
    back = BathParameters.from_diffusion(bath.diffusion, 3.0, 5.0)
    assert back.gamma == pytest.approx(2.0, rel=1e-15)


def test_bath_domain():
    with pytest.raises(ValidationError):
        BathParameters(gamma=-1.0, temperature=1.0, mass=1.0)
    with pytest.raises(ValidationError):
        BathParameters(gamma=1.0, temperature=0.0, mass=1.0)
    # the free limit stays legal
    assert BathParameters(gamma=0.0, temperature=1.0, mass=1.0).diffusion == 0.0


class TestPairScales:
    def test_inverse_square_separation(self):
        d, ell = 1e-40, 5e-6
        t12 = decoherence_time(d, ell, 1, 2)
        assert decoherence_time(d, ell, 1, 3) == pytest.approx(t12 / 4.0, rel=1e-15)
        assert decoherence_time(d, ell, 2, 5) == pytest.approx(t12 / 9.0, rel=1e-15)
        assert decoherence_time(d, ell, 1, 2) == pytest.approx(12.0 * HBAR**2 / (d * ell**2), rel=1e-15)

    def test_free_bath_never_decoheres(self):
        assert decoherence_time(0.0, 1e-6, 1, 2) == math.inf
        assert pair_decoherence_factor(0.0, 1e-6, 10.0, 1, 2) == 1.0

    def test_factor_is_exp_of_time_ratio(self):
        d, ell, t = 3e-41, 6e-6, 0.02
        for j, k in ((1, 2), (1, 4), (2, 3)):
            tau = decoherence_time(d, ell, j, k)
            assert pair_decoherence_factor(d, ell, t, j, k) == pytest.approx(
                math.exp(-t / tau), rel=1e-12
            )

    def test_same_path_rejected(self):
        with pytest.raises(ValidationError):
            decoherence_time(1e-40, 1e-6, 2, 2)


class TestSchedule:
    def test_pair_count_and_symmetry(self):
        bath = BathParameters(gamma=1e-4, temperature=NEON_T, mass=NEON_MASS)
        sched = DecoherenceSchedule.from_bath(bath, 6e-6, 5, 0.01)
        times = sched.pair_times()
        assert len(times) == 5 * 4 // 2
        np.testing.assert_allclose(sched.factors, sched.factors.T, atol=0)
        assert np.all(np.diag(sched.factors) == 1.0)

    def test_selective_column(self):
        bath = BathParameters(gamma=1e-4, temperature=NEON_T, mass=NEON_MASS)
        sched = DecoherenceSchedule.from_bath(bath, 6e-6, 4, 0.01)
        want = [pair_decoherence_factor(bath.diffusion, 6e-6, 0.01, j, 4) for j in (1, 2, 3)]
        np.testing.assert_allclose(sched.selective_factors(), want, rtol=1e-15)

    def test_widest_pair_dies_first(self):
        bath = BathParameters(gamma=1e-3, temperature=NEON_T, mass=NEON_MASS)
        sched = DecoherenceSchedule.from_bath(bath, 6e-6, 6, 0.02)
        factors = sched.selective_factors()
        assert np.all(np.diff(factors) > 0.0)  # pair (1, n) is the most damped


class TestSpreadingWidth:
    def _mpmath_alpha(self, gamma, t, eps, m, temperature):
        with mpmath.workdps(50):
            g = mpmath.mpf(gamma) * mpmath.mpf(t)
            d = 2 * mpmath.mpf(m) * mpmath.mpf(gamma) * mpmath.mpf(K_B) * mpmath.mpf(temperature)
            free = mpmath.mpf(HBAR) ** 2 * (1 - mpmath.e ** (-2 * g)) ** 2 / (
                mpmath.mpf(eps) ** 2 * mpmath.mpf(m) ** 2 * mpmath.mpf(gamma) ** 2
            )
            diff = d * (4 * g + 4 * mpmath.e ** (-2 * g) - mpmath.e ** (-4 * g) - 3) / (
                8 * mpmath.mpf(m) ** 2 * mpmath.mpf(gamma) ** 3
            )
            return float(mpmath.mpf(eps) ** 2 + free + diff)

    def test_series_branch_against_high_precision(self):
        # gamma*t = 1e-6 lands deep in the cancellation zone of the closed
        # form; the series branch must track a 50-digit evaluation.
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        gamma = 1e-6 / t
        bath = BathParameters(gamma=gamma, temperature=NEON_T, mass=NEON_MASS)
        got = spreading_width(bath, geom, t)
        want = self._mpmath_alpha(gamma, t, geom.eps, NEON_MASS, NEON_T)
        assert got == pytest.approx(want, rel=1e-9)

    def test_branches_agree_at_switchover(self):
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        for gt in (9.0e-4, 1.1e-3):
            gamma = gt / t
            bath = BathParameters(gamma=gamma, temperature=NEON_T, mass=NEON_MASS)
            got = spreading_width(bath, geom, t)
            want = self._mpmath_alpha(gamma, t, geom.eps, NEON_MASS, NEON_T)
            assert got == pytest.approx(want, rel=1e-5)

    def test_free_particle_limit(self):
        geom = neon()
        t = 0.02
        bath = BathParameters(gamma=0.0, temperature=NEON_T, mass=NEON_MASS)
        want = geom.eps**2 + (2.0 * HBAR * t / (geom.eps * NEON_MASS)) ** 2
        assert spreading_width(bath, geom, t) == pytest.approx(want, rel=1e-12)

    def test_monotone_in_time(self):
        geom = neon()
        bath = BathParameters(gamma=1e-3, temperature=NEON_T, mass=NEON_MASS)
        times = np.linspace(0.001, 5.0, 40)
        widths = [spreading_width(bath, geom, t) for t in times]
        assert np.all(np.diff(widths) > 0.0)


class TestGeometryAndTime:
    def test_flight_time_value(self):
        # L m lambda / h for the neon benchmark, frozen from an independent
        # evaluation of the de Broglie velocity h / (m lambda)
        assert flight_time(neon(), NEON_MASS) == pytest.approx(0.03366149089139963, rel=1e-15)

    def test_fringe_width(self):
        geom = neon()
        assert geom.fringe_width == pytest.approx(0.018e-6 * 37e-3 / 6e-6, rel=1e-15)
        assert geom.centroid == pytest.approx(6e-6 * 2.5, rel=1e-15)

    def test_fraunhofer_gate(self):
        assert neon().fraunhofer_ratio < 0.1
        wide = SlitGeometry(n=4, ell=6e-6, eps=1e-2, wavelength=0.018e-6, L=37e-3)
        with pytest.raises(FraunhoferLimitError):
            wide.require_fraunhofer()

    def test_geometry_field_diagnostics(self):
        with pytest.raises(ValidationError, match="geometry.ell"):
            SlitGeometry(n=4, ell=-6e-6, eps=2e-6, wavelength=0.018e-6, L=37e-3)

    def test_bath_from_scaled_time_round_trip(self):
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        for s in (0.0, 1.0 / 12.0, 1.0, 2.0):
            bath = bath_from_scaled_time(s, NEON_T, NEON_MASS, geom.ell, t)
            back = bath.diffusion * geom.ell**2 * t / (12.0 * HBAR**2)
            assert back == pytest.approx(s, abs=1e-15)
        assert bath_from_scaled_time(0.0, NEON_T, NEON_MASS, geom.ell, t).gamma == 0.0


def _free_bath():
    return BathParameters(gamma=0.0, temperature=NEON_T, mass=NEON_MASS)


def _symmetric_inputs(n, beta=1.0, pi_path=None):
    paths = PathConfiguration.equal(n, pi_path=pi_path)
    overlaps = DetectorOverlapMatrix.one_path(n, beta)
    return paths, overlaps


class TestScreenDensities:
    def test_selective_equals_maxcoherent(self):
        # two independent codings of the same equal-weight profile
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        x = np.linspace(-3, 3, 301) * geom.fringe_width
        for s in (0.0, 0.25, 1.0):
            bath = bath_from_scaled_time(s, NEON_T, NEON_MASS, geom.ell, t)
            a = screen_density_selective(geom, bath, t, x, 4)
            b = screen_density_maxcoherent(geom, bath, t, x, 4)
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-30)

    def test_selective_matches_fraunhofer_at_t_zero(self):
        geom = neon()
        paths, overlaps = _symmetric_inputs(4, beta=1.0, pi_path=4)
        x = np.linspace(-2, 2, 257) * geom.fringe_width
        a = screen_density_selective(geom, _free_bath(), 0.0, x, 4)
        b = screen_density_fraunhofer(geom, paths, overlaps, _free_bath(), 0.0, x)
        np.testing.assert_allclose(a, b, rtol=1e-12)

    def test_selective_bracket_drives_density(self):
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        s = 0.5
        bath = bath_from_scaled_time(s, NEON_T, NEON_MASS, geom.ell, t)
        x = np.linspace(-1.5, 1.5, 97) * geom.fringe_width
        phi = 2.0 * math.pi * geom.ell * x / (geom.wavelength * geom.L)
        density = screen_density_selective(geom, bath, t, x, 4)
        bracket = selective_bracket(4, s, phi)
        env = np.exp(-2.0 * geom.eps**2 * x**2 / geom.envelope_scale**2)
        pref = density / np.where(env * bracket == 0.0, 1.0, env * bracket)
        np.testing.assert_allclose(pref, pref[0], rtol=1e-9)

    def test_exact_centered_on_centroid(self):
        geom = neon()
        paths, overlaps = _symmetric_inputs(4)
        x = np.linspace(-3, 3, 2001) * geom.fringe_width + geom.centroid
        density = screen_density_exact(geom, paths, overlaps, _free_bath(), 0.0, x)
        peak = x[int(np.argmax(density))]
        assert abs(peak - geom.centroid) < 1e-3 * geom.fringe_width

    def test_exact_matches_fraunhofer_when_aligned(self):
        # after shifting out the slit centroid the two evaluators agree to a
        # few percent of the peak for the neon layout
        geom = neon()
        paths, overlaps = _symmetric_inputs(4)
        x = np.linspace(-1, 1, 801) * geom.fringe_width
        a = screen_density_exact(geom, paths, overlaps, _free_bath(), 0.0, x + geom.centroid)
        b = screen_density_fraunhofer(geom, paths, overlaps, _free_bath(), 0.0, x)
        assert np.max(np.abs(a - b)) < 0.05 * np.max(b)

    def test_unaligned_comparison_fails(self):
        # sanity check that the centroid shift is what makes them comparable
        geom = neon()
        paths, overlaps = _symmetric_inputs(4)
        x = np.linspace(-1, 1, 801) * geom.fringe_width
        a = screen_density_exact(geom, paths, overlaps, _free_bath(), 0.0, x)
        b = screen_density_fraunhofer(geom, paths, overlaps, _free_bath(), 0.0, x)
        assert np.max(np.abs(a - b)) > 0.05 * np.max(b)

    def test_exact_normalization(self):
        # the pattern integrates to one over a window holding the envelope
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        paths, overlaps = _symmetric_inputs(4, pi_path=4)
        for s in (0.0, 1.0 / 12.0):
            bath = bath_from_scaled_time(s, NEON_T, NEON_MASS, geom.ell, t)
            x = np.linspace(-6, 6, 20001) * geom.fringe_width + geom.centroid
            density = screen_density_exact(geom, paths, overlaps, bath, t, x)
            total = np.trapezoid(density, x)
            assert total == pytest.approx(1.0, abs=0.02)

    def test_selective_is_even(self):
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        bath = bath_from_scaled_time(0.3, NEON_T, NEON_MASS, geom.ell, t)
        x = np.linspace(0.0, 2.5, 200) * geom.fringe_width
        np.testing.assert_allclose(
            screen_density_selective(geom, bath, t, x, 4),
            screen_density_selective(geom, bath, t, -x, 4),
            rtol=1e-13,
        )

    def test_selective_differs_from_global_damping(self):
        # a bath acting on every pair is a different model; the residual
        # must be visible, not a rounding artifact
        geom = neon()
        t = flight_time(geom, NEON_MASS)
        bath = bath_from_scaled_time(1.0, NEON_T, NEON_MASS, geom.ell, t)
        paths, overlaps = _symmetric_inputs(4, beta=1.0, pi_path=4)
        x = np.linspace(-2, 2, 401) * geom.fringe_width
        a = screen_density_selective(geom, bath, t, x, 4)
        b = screen_density_fraunhofer(geom, paths, overlaps, bath, t, x)
        assert np.max(np.abs(a - b)) / np.max(a) > 1e-3

    def test_free_bath_pattern_shape_is_static(self):
        # with gamma = 0 the bracket never moves; two times differ only by
        # the global spreading prefactor
        geom = neon()
        paths, overlaps = _symmetric_inputs(4, pi_path=4)
        x = np.linspace(-2, 2, 101) * geom.fringe_width
        early = screen_density_fraunhofer(geom, paths, overlaps, _free_bath(), 0.01, x)
        late = screen_density_fraunhofer(geom, paths, overlaps, _free_bath(), 0.03, x)
        ratio = early / late
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)
        want = math.sqrt(
            spreading_width(_free_bath(), geom, 0.03) / spreading_width(_free_bath(), geom, 0.01)
        )
        assert ratio[0] == pytest.approx(want, rel=1e-12)

    def test_far_field_gate_enforced(self):
        wide = SlitGeometry(n=4, ell=6e-6, eps=1e-2, wavelength=0.018e-6, L=37e-3)
        paths, overlaps = _symmetric_inputs(4)
        with pytest.raises(FraunhoferLimitError):
            screen_density_fraunhofer(wide, paths, overlaps, _free_bath(), 0.0, 0.0)
        with pytest.raises(FraunhoferLimitError):
            screen_density_selective(wide, _free_bath(), 0.0, 0.0, 4)
        # the per-slit-envelope evaluator has no far-field requirement
        screen_density_exact(wide, paths, overlaps, _free_bath(), 0.0, 0.0)

    def test_dimension_gate(self):
        geom = neon(4)
        paths, overlaps = _symmetric_inputs(5)
        with pytest.raises(DimensionMismatchError):
            screen_density_exact(geom, paths, overlaps, _free_bath(), 0.0, 0.0)


class TestSelectiveBracket:
    def test_custom_amplitudes_normalization_guard(self):
        with pytest.raises(ValidationError):
            selective_bracket(3, 0.0, 0.0, amplitudes=[1.0, 1.0, 1.0])

    def test_undamped_bracket_is_squared_sum(self):
        # at t = 0 the profile is |sum_j c_j e^{i j phi} - c_n e^{i n phi}|^2-like,
        # so it vanishes nowhere below 0
        phi = np.linspace(0.0, 2.0 * math.pi, 721)
        for n in (2, 3, 5):
            values = selective_bracket(n, 0.0, phi)
            amps = np.full(n, 1.0 / math.sqrt(n))
            signs = np.ones(n)
            signs[-1] = -1.0
            direct = np.abs(
                np.sum(amps * signs * np.exp(1j * np.outer(phi, np.arange(1, n + 1))), axis=1)
            ) ** 2
            np.testing.assert_allclose(values, direct, atol=1e-12)
            assert values.min() >= -1e-12

    def test_flight_time_consistency_with_planck(self):
        geom = neon()
        v = PLANCK / (NEON_MASS * geom.wavelength)
        assert flight_time(geom, NEON_MASS) == pytest.approx(geom.L / v, rel=1e-15)
