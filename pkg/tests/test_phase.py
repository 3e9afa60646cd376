import math

import numpy as np
import pytest

from geophase.exceptions import DegeneracyError, GaugeAlignmentError, ValidationError
from geophase.models import (
    BlochState,
    CorrelatedProjection,
    MarkovianProjection,
    Picture,
    PhaseResult,
    QuadratureConfig,
    QuadratureScheme,
    Trajectory,
    spectral_arrays,
)
from geophase.services.evolutions import sample_trajectory
from geophase.services.phase import (
    accumulated_phase,
    align_sequence,
    connection,
    derivative,
    first_jump,
    fold_phase,
    gauge_align,
    phase_closed,
    phase_gap,
    phase_general,
    relative_phase,
)

UNITARY_THETAS = [math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3]


def unitary_phase(theta: float) -> float:
    return -math.pi * (1.0 - math.cos(theta))


class TestFolding:
    def test_fold_range(self):
        assert fold_phase(math.pi) == math.pi
        assert fold_phase(-math.pi) == math.pi
        assert fold_phase(0.5) == pytest.approx(0.5)
        assert fold_phase(-1.5 * math.pi) == pytest.approx(0.5 * math.pi)
        assert np.allclose(fold_phase(np.array([0.0, 2.5 * math.pi])), [0.0, 0.5 * math.pi])

    def test_phase_gap_is_circular(self):
        assert phase_gap(0.1, 2 * math.pi - 0.1) == pytest.approx(0.2)
        assert phase_gap(0.95, -0.95, period=2.0) == pytest.approx(0.1)
        assert phase_gap(0.3, 0.3) == 0.0


class TestPhaseClosed:
    def test_theta_zero_is_exactly_zero(self, any_model):
        assert phase_closed(any_model, 0.0) == PhaseResult(principal=0.0, unwrapped=0.0, visibility=1.0)

    @pytest.mark.parametrize("theta", UNITARY_THETAS)
    def test_unitary_limit(self, theta):
        result = phase_closed(MarkovianProjection(gamma2=0.0), theta)
        assert result.unwrapped == pytest.approx(unitary_phase(theta), abs=1e-10)
        assert phase_gap(result.principal, unitary_phase(theta)) < 1e-10
        assert result.visibility == pytest.approx(1.0, abs=1e-12)

    def test_weak_damping_third_of_pi(self):
        result = phase_closed(MarkovianProjection(gamma2=1e-12), 0.333333 * math.pi)
        assert result.principal_over_pi == pytest.approx(-0.5, abs=1e-5)

    def test_periods_accumulate(self):
        model = MarkovianProjection(gamma2=0.0)
        one = phase_closed(model, math.pi / 3)
        three = phase_closed(model, math.pi / 3, periods=3)
        assert three.unwrapped == pytest.approx(3 * one.unwrapped)

    @pytest.mark.parametrize("periods", [0, -1, 1.5])
    def test_periods_validated(self, markovian, periods):
        with pytest.raises(ValidationError):
            phase_closed(markovian, 1.0, periods=periods)

    def test_theta_validated(self, markovian):
        with pytest.raises(ValidationError):
            phase_closed(markovian, 4.0)

    def test_visibility_bounded(self, any_model):
        for theta in (0.3, 1.5, 2.8):
            result = phase_closed(any_model, theta)
            assert 0.0 <= result.visibility <= 1.0 + 1e-12
            assert -math.pi < result.principal <= math.pi

    def test_quadrature_converged(self, any_model):
        coarse = phase_closed(any_model, 1.0, QuadratureConfig(steps=2000))
        fine = phase_closed(any_model, 1.0, QuadratureConfig(steps=4000))
        assert phase_gap(coarse.principal, fine.principal) < 1e-8

    def test_trapezoid_close_to_simpson(self, markovian):
        simpson = phase_closed(markovian, 1.0)
        trapezoid = phase_closed(markovian, 1.0, QuadratureConfig(scheme=QuadratureScheme.TRAPEZOID))
        assert phase_gap(simpson.principal, trapezoid.principal) < 1e-5

    def test_damping_moves_the_phase(self):
        weak = phase_closed(MarkovianProjection(gamma2=0.0), math.pi / 4)
        strong = phase_closed(MarkovianProjection(gamma2=1.0), math.pi / 4)
        assert phase_gap(weak.principal, strong.principal) > 1e-2


class TestAlignment:
    def test_gauge_align_removes_phase(self):
        v = np.array([0.6, 0.8j])
        assert np.allclose(gauge_align(v, v * np.exp(0.7j)), v)

    def test_gauge_align_rejects_orthogonal(self):
        with pytest.raises(GaugeAlignmentError):
            gauge_align(np.array([1.0, 0.0]), np.array([0.0, 1.0]))

    def test_first_jump(self):
        vectors = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]], dtype=complex)
        assert first_jump(vectors) == 1
        assert first_jump(vectors[:2]) is None
        with pytest.raises(GaugeAlignmentError):
            align_sequence(vectors)

    def test_aligned_neighbours_have_positive_overlap(self):
        k = np.arange(30)
        vectors = np.stack([np.cos(0.3 + 0.01 * k), np.sin(0.3 + 0.01 * k) * np.exp(0.05j * k)], axis=1)
        vectors = vectors * np.exp(1j * np.sin(7.0 * k))[:, None]
        aligned = align_sequence(vectors)
        overlaps = np.sum(np.conj(aligned[:-1]) * aligned[1:], axis=1)
        assert np.all(overlaps.real > 0)
        assert np.allclose(overlaps.imag, 0.0, atol=1e-12)


class TestDerivative:
    def test_exact_on_quartics(self):
        t = np.linspace(0.0, 1.0, 11)
        f = t ** 4 - 2 * t ** 3 + t
        assert np.allclose(derivative(f, t[1] - t[0]), 4 * t ** 3 - 6 * t ** 2 + 1, atol=1e-9)

    def test_short_input_falls_back(self):
        t = np.linspace(0.0, 1.0, 3)
        assert np.allclose(derivative(2.0 * t, 0.5), 2.0)

    def test_connection_of_rotating_phase(self):
        t = np.linspace(0.0, 1.0, 101)
        vectors = np.stack([np.full(t.shape, 0.6), 0.8 * np.exp(1j * t)], axis=1)
        assert np.allclose(connection(vectors, t[1] - t[0]), 0.64j, atol=1e-7)

    def test_connection_is_imaginary_along_a_damped_path(self):
        model = MarkovianProjection(gamma2=0.1)
        traj = sample_trajectory(model, BlochState(theta=math.pi / 3), model.period, 2000)
        aligned = align_sequence(spectral_arrays(traj.matrices)[2])
        h = traj.dt
        conn = connection(aligned, h)[2:-2]
        speed = np.linalg.norm(derivative(aligned, h), axis=1)[2:-2]
        assert np.all(np.abs(conn.real) <= 1e-6 * speed)


class TestRelativePhase:
    def _path(self, size=201, omega=1.0):
        t = np.linspace(0.0, 2.0, size)
        s = 0.3 + 1.2 * t
        # the excited component changes sign at s = pi/2
        return t, np.stack([np.cos(s), np.sin(s) * np.exp(1j * omega * t)], axis=1).astype(complex)

    def test_sign_change_adds_no_jump(self):
        t, vectors = self._path()
        chi = relative_phase(vectors)
        assert np.allclose(np.diff(chi), t[1] - t[0], atol=1e-12)

    def test_unresolved_sample_is_interpolated(self):
        t, vectors = self._path()
        vectors[50, 0] = 0.0
        chi = relative_phase(vectors)
        assert chi[50] == pytest.approx(0.5 * (chi[49] + chi[51]), abs=1e-12)
        assert np.allclose(np.diff(chi), t[1] - t[0], atol=1e-12)

    def test_pole_has_no_relative_phase(self):
        vectors = np.tile(np.array([0.0, 1.0], dtype=complex), (11, 1))
        assert np.array_equal(relative_phase(vectors), np.zeros(11))

    def test_accumulated_phase_weights_by_ground_component(self):
        t, vectors = self._path(size=401, omega=2.0)
        s = 0.3 + 1.2 * t
        expected = -2.0 * (t[-1] / 2.0 - (np.sin(2.0 * s[-1]) - np.sin(2.0 * s[0])) / (4.0 * 1.2))
        assert accumulated_phase(vectors, t[1] - t[0], QuadratureScheme.SIMPSON) == pytest.approx(expected, abs=1e-9)


class TestPhaseGeneral:
    @pytest.mark.parametrize("theta", [math.pi / 3, 2 * math.pi / 3])
    def test_agrees_with_closed_form(self, any_model, theta):
        closed = phase_closed(any_model, theta)
        traj = sample_trajectory(any_model, BlochState(theta=theta), any_model.period, 2000)
        general = phase_general(traj)
        assert phase_gap(closed.principal, general.principal) < 1e-6
        assert general.visibility == pytest.approx(closed.visibility, abs=1e-6)
        assert general.unwrapped == pytest.approx(closed.unwrapped, abs=1e-6)

    @pytest.mark.parametrize("model, theta, expected_over_pi", [
        (MarkovianProjection(gamma2=0.1), 0.7 * math.pi, -1.70476),
        (CorrelatedProjection(gamma=1.0), 0.3 * math.pi, -1.616688),
    ])
    def test_unwrapped_matches_closed_form(self, model, theta, expected_over_pi):
        closed = phase_closed(model, theta)
        general = phase_general(sample_trajectory(model, BlochState(theta=theta), model.period, 2000))
        assert closed.unwrapped / math.pi == pytest.approx(expected_over_pi, abs=1e-5)
        assert general.unwrapped == pytest.approx(closed.unwrapped, abs=1e-6)
        assert phase_gap(general.principal, closed.principal) < 1e-6

    def test_unitary_unwrapped(self):
        traj = sample_trajectory(MarkovianProjection(gamma2=0.0), BlochState(theta=math.pi / 3), 2 * math.pi, 2000)
        result = phase_general(traj)
        assert result.unwrapped == pytest.approx(-0.5 * math.pi, abs=1e-6)
        assert result.visibility == pytest.approx(1.0, abs=1e-9)

    def test_azimuth_does_not_matter(self, markovian):
        base = phase_general(sample_trajectory(markovian, BlochState(theta=1.0), markovian.period, 1000))
        turned = phase_general(sample_trajectory(markovian, BlochState(theta=1.0, phi=2.0), markovian.period, 1000))
        assert phase_gap(base.principal, turned.principal) < 1e-9

    def test_schemes_agree(self, markovian):
        traj = sample_trajectory(markovian, BlochState(theta=1.0), markovian.period, 2000)
        simpson = phase_general(traj)
        trapezoid = phase_general(traj, QuadratureConfig(scheme=QuadratureScheme.TRAPEZOID))
        assert phase_gap(simpson.principal, trapezoid.principal) < 1e-4

    def test_interaction_picture_rejected(self, markovian):
        traj = sample_trajectory(markovian, BlochState(theta=1.0), 1.0, 10, Picture.INTERACTION)
        with pytest.raises(ValidationError):
            phase_general(traj)

    def test_degenerate_run_reported(self):
        times = np.linspace(0.0, 1.0, 11)
        mixed = np.stack([0.5 * np.eye(2, dtype=complex)] * times.size)
        with pytest.raises(DegeneracyError) as info:
            phase_general(Trajectory(times=times, matrices=mixed, picture=Picture.SCHROEDINGER))
        assert info.value.t_start == 0.0
        assert info.value.t_end == pytest.approx(1.0)

    def test_crossing_populations_at_theta_zero(self):
        # rho11 passes 1/2 with no coherence: the leading eigenvector swaps basis states
        model = MarkovianProjection(gamma2=1.0)
        traj = sample_trajectory(model, BlochState(theta=0.0), model.period, 2000)
        with pytest.raises(DegeneracyError) as info:
            phase_general(traj)
        assert info.value.t_start < math.log(2.0) <= info.value.t_end + 1e-3
