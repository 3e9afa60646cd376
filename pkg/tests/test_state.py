import math

import numpy as np
import pytest

from geophase.exceptions import ValidationError
from geophase.models import (
    BlochState,
    DensityMatrix2,
    Picture,
    Trajectory,
    bloch_vector,
    eigensystem,
    min_eigenvalue,
    pure_state,
    purity,
    spectral_arrays,
    to_schroedinger,
)


class TestBlochState:
    def test_rounding_overshoot_is_clamped(self):
        assert BlochState(theta=-1e-13).theta == 0.0
        assert BlochState(theta=math.pi + 1e-13).theta == math.pi

    @pytest.mark.parametrize("theta", [-1e-3, math.pi + 1e-3, float("nan")])
    def test_out_of_range_theta_rejected(self, theta):
        with pytest.raises(ValidationError):
            BlochState(theta=theta)

    def test_phi_is_reduced(self):
        assert BlochState(theta=1.0, phi=2 * math.pi + 0.5).phi == pytest.approx(0.5)
        assert BlochState(theta=1.0, phi=-0.5).phi == pytest.approx(2 * math.pi - 0.5)

    def test_initial_coherence(self):
        assert BlochState(theta=math.pi / 2).initial_coherence == pytest.approx(0.5)
        assert BlochState(theta=math.pi / 2, phi=math.pi / 2).initial_coherence == pytest.approx(-0.5j)


class TestDensityMatrix2:
    def test_from_elements_fills_the_rest(self):
        rho = DensityMatrix2.from_elements(0.3, 0.1 + 0.2j)
        assert rho.rho21 == pytest.approx(0.1 - 0.2j)
        assert rho.rho22 == pytest.approx(0.7)
        assert rho.trace == pytest.approx(1.0)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValidationError, match="Hermitian"):
            DensityMatrix2(rho11=0.5, rho12=0.1, rho21=0.2, rho22=0.5)

    def test_trace_checked(self):
        with pytest.raises(ValidationError, match="trace"):
            DensityMatrix2(rho11=1.0, rho12=0.0, rho21=0.0, rho22=1.0)

    def test_complex_diagonal_rejected(self):
        with pytest.raises(ValidationError):
            DensityMatrix2(rho11=0.5 + 0.1j, rho12=0.0, rho21=0.0, rho22=0.5 - 0.1j)

    def test_from_matrix_shape(self):
        with pytest.raises(ValidationError):
            DensityMatrix2.from_matrix(np.eye(3))

    def test_positivity_not_enforced(self):
        rho = DensityMatrix2.from_elements(-0.2, 0.0)
        assert min_eigenvalue(rho) == pytest.approx(-0.2)


class TestSpectral:
    def test_diagonal_state(self):
        pair = eigensystem(DensityMatrix2.from_elements(0.7, 0.0))
        assert pair.lambda_plus == pytest.approx(0.7)
        assert pair.lambda_minus == pytest.approx(0.3)
        assert np.allclose(pair.vec_plus, [1.0, 0.0])
        assert np.allclose(pair.vec_minus, [0.0, 1.0])
        assert not pair.degenerate

    def test_maximally_mixed_is_degenerate(self):
        pair = eigensystem(DensityMatrix2.from_elements(0.5, 0.0))
        assert pair.degenerate
        assert np.allclose(pair.vec_plus, [1.0, 0.0])
        assert abs(np.vdot(pair.vec_plus, pair.vec_minus)) < 1e-15

    def test_pure_state_eigenvector(self):
        init = BlochState(theta=math.pi / 3, phi=0.4)
        pair = eigensystem(pure_state(init))
        assert pair.lambda_plus == pytest.approx(1.0)
        assert pair.lambda_minus == pytest.approx(0.0, abs=1e-15)
        expected = np.array([init.cos_half, init.sin_half * np.exp(1j * init.phi)])
        assert abs(abs(np.vdot(expected, pair.vec_plus)) - 1.0) < 1e-12
        # the excited component is the larger one and carries the gauge
        assert pair.vec_plus[0].real > 0 and abs(pair.vec_plus[0].imag) < 1e-15

    def test_vectorised_matches_single(self):
        states = [DensityMatrix2.from_elements(r, c) for r, c in [(0.2, 0.3j), (0.9, -0.1), (0.5, 0.25 + 0.25j)]]
        lp, lm, vp, vm, _ = spectral_arrays(np.stack([s.matrix for s in states]))
        for k, state in enumerate(states):
            pair = eigensystem(state)
            assert lp[k] == pytest.approx(pair.lambda_plus)
            assert lm[k] == pytest.approx(pair.lambda_minus)
            assert np.allclose(vp[k], pair.vec_plus)
            assert np.allclose(vm[k], pair.vec_minus)


class TestPictures:
    def test_to_schroedinger_rotates_coherence(self):
        rho = DensityMatrix2.from_elements(0.4, 0.3)
        out = to_schroedinger(rho, omega=1.0, t=math.pi / 2)
        assert out.rho12 == pytest.approx(-0.3j)
        assert out.rho11 == pytest.approx(0.4)

    def test_negative_time_rejected(self):
        with pytest.raises(ValidationError):
            to_schroedinger(DensityMatrix2.from_elements(0.4, 0.3), 1.0, -1.0)


class TestTrajectory:
    def _matrices(self, n):
        return np.stack([DensityMatrix2.from_elements(0.5, 0.1).matrix] * n)

    def test_uniform_grid(self):
        traj = Trajectory(times=np.linspace(0.0, 2.0, 5), matrices=self._matrices(5), picture=Picture.INTERACTION)
        assert len(traj) == 5
        assert traj.dt == pytest.approx(0.5)
        assert traj.t_end == pytest.approx(2.0)
        assert len(traj.states) == 5

    def test_states_accept_small_trace_drift(self):
        matrices = self._matrices(4)
        matrices[:, 0, 0] += np.array([0.0, 2e-10, 5e-10, -5e-10])
        traj = Trajectory(times=np.linspace(0.0, 3.0, 4), matrices=matrices, picture=Picture.INTERACTION)
        states = traj.states
        assert all(abs(s.rho11 + s.rho22 - 1.0) < 1e-15 for s in states)
        assert states[2].rho11 == pytest.approx(0.5, abs=1e-9)

    def test_states_reject_large_trace_drift(self):
        matrices = self._matrices(3)
        matrices[2, 0, 0] += 1e-6
        traj = Trajectory(times=np.linspace(0.0, 2.0, 3), matrices=matrices, picture=Picture.INTERACTION)
        with pytest.raises(ValidationError, match="t=2"):
            traj.states

    @pytest.mark.parametrize("times", [
        [0.0, 0.5, 1.5],
        [0.1, 0.6, 1.1],
        [0.0],
    ])
    def test_bad_grids_rejected(self, times):
        with pytest.raises(ValidationError):
            Trajectory(times=np.array(times), matrices=self._matrices(len(times)), picture=Picture.INTERACTION)

    def test_to_schroedinger_only_from_interaction(self):
        times = np.linspace(0.0, math.pi, 3)
        traj = Trajectory(times=times, matrices=self._matrices(3), picture="interaction")
        rotated = traj.to_schroedinger(1.0)
        assert rotated.picture is Picture.SCHROEDINGER
        assert rotated.matrices[-1, 0, 1] == pytest.approx(-0.1)
        with pytest.raises(ValidationError):
            rotated.to_schroedinger(1.0)


def test_bloch_vector_of_pure_state():
    theta, phi = 1.1, 0.7
    x, y, z = bloch_vector(pure_state(BlochState(theta=theta, phi=phi)))
    assert (x, y, z) == pytest.approx((math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)))


def test_purity():
    assert purity(pure_state(BlochState(theta=0.8))) == pytest.approx(1.0)
    assert purity(DensityMatrix2.from_elements(0.5, 0.0)) == pytest.approx(0.5)
