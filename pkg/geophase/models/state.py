import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np

from ..exceptions import ValidationError

HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
DEGENERACY_TOLERANCE = 1e-9
GAUGE_TIE_TOLERANCE = 1e-9
ANGLE_CLAMP_TOLERANCE = 1e-12
GRID_TOLERANCE = 1e-12
# accumulated trace error tolerated in a numerically propagated trajectory
TRAJECTORY_TRACE_TOLERANCE = 1e-9


class Picture(str, Enum):
    INTERACTION = "interaction"
    SCHROEDINGER = "schroedinger"


# @agent:service-type data-model
# @agent:scalability stateless
# @agent:persistence none
@dataclass(frozen=True)
class BlochState:
    """Pure qubit state given by its Bloch angles.

    The induced state is cos(theta/2)|1> + sin(theta/2) e^{i phi}|0>, with |1>
    the excited level stored at index 0.

    Attributes:
        theta (float): polar angle in [0, pi]; values within 1e-12 outside are clamped
        phi (float): azimuth, reduced into [0, 2pi)
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValidationError(f"Bloch angles must be finite: theta={theta}, phi={phi}")
        if theta < -ANGLE_CLAMP_TOLERANCE or theta > math.pi + ANGLE_CLAMP_TOLERANCE:
            raise ValidationError(f"theta must lie in [0, pi], got {theta}")
        object.__setattr__(self, 'theta', min(max(theta, 0.0), math.pi))
        object.__setattr__(self, 'phi', phi % (2.0 * math.pi))

    @property
    def cos_half(self) -> float:
        return math.cos(self.theta / 2.0)

    @property
    def sin_half(self) -> float:
        return math.sin(self.theta / 2.0)

    @property
    def initial_coherence(self) -> complex:
        """rho_12 of the pure state: 1/2 sin(theta) e^{-i phi}"""
        return 0.5 * math.sin(self.theta) * complex(math.cos(self.phi), -math.sin(self.phi))


@dataclass(frozen=True)
class DensityMatrix2:
    """Hermitian unit-trace 2x2 matrix. Positivity is not enforced."""

    rho11: complex
    rho12: complex
    rho21: complex
    rho22: complex

    def __post_init__(self):
        entries = (self.rho11, self.rho12, self.rho21, self.rho22)
        if not all(np.isfinite(complex(e)) for e in entries):
            raise ValidationError("Density matrix entries must be finite")
        if abs(complex(self.rho21) - complex(self.rho12).conjugate()) > HERMITIAN_TOLERANCE:
            raise ValidationError(f"Density matrix is not Hermitian: rho12={self.rho12}, rho21={self.rho21}")
        if abs(complex(self.rho11).imag) > HERMITIAN_TOLERANCE or abs(complex(self.rho22).imag) > HERMITIAN_TOLERANCE:
            raise ValidationError("Density matrix diagonal must be real")
        if abs(complex(self.rho11 + self.rho22) - 1.0) > TRACE_TOLERANCE:
            raise ValidationError(f"Density matrix trace must be 1, got {complex(self.rho11 + self.rho22)}")

    @classmethod
    def from_elements(cls, rho11: float, rho12: complex) -> 'DensityMatrix2':
        """Build from the excited population and the coherence; the rest follows."""
        rho11 = float(np.real(rho11))
        rho12 = complex(rho12)
        return cls(rho11=rho11, rho12=rho12, rho21=rho12.conjugate(), rho22=1.0 - rho11)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> 'DensityMatrix2':
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValidationError(f"Expected a 2x2 matrix, got shape {m.shape}")
        return cls(rho11=m[0, 0], rho12=m[0, 1], rho21=m[1, 0], rho22=m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.rho11, self.rho12], [self.rho21, self.rho22]], dtype=complex)

    @property
    def trace(self) -> float:
        return float(np.real(self.rho11 + self.rho22))


@dataclass(frozen=True, eq=False)
class SpectralPair:
    """Eigen-decomposition of a 2x2 density matrix with the gauge rule applied."""

    lambda_plus: float
    lambda_minus: float
    vec_plus: np.ndarray
    vec_minus: np.ndarray
    degenerate: bool


# @agent:service-type data-model
# @agent:complexity low
@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled density matrices.

    Samples are stored as one (n, 2, 2) complex array; ``states`` gives the
    DensityMatrix2 view on demand.

    Attributes:
        times (np.ndarray): strictly increasing uniform grid starting at 0
        matrices (np.ndarray): shape (n, 2, 2)
        picture (Picture): interaction or Schroedinger picture
    """

    times: np.ndarray
    matrices: np.ndarray
    picture: Picture

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        matrices = np.asarray(self.matrices, dtype=complex)
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'matrices', matrices)
        object.__setattr__(self, 'picture', Picture(self.picture))

        if times.ndim != 1 or times.size < 2:
            raise ValidationError("Trajectory needs at least two samples")
        if matrices.shape != (times.size, 2, 2):
            raise ValidationError(f"Expected matrices of shape ({times.size}, 2, 2), got {matrices.shape}")
        if times[0] != 0.0:
            raise ValidationError(f"Trajectory must start at t=0, got {times[0]}")
        span = times[-1] - times[0]
        if not span > 0:
            raise ValidationError("Trajectory times must be strictly increasing")
        ideal = np.linspace(0.0, times[-1], times.size)
        if np.max(np.abs(times - ideal)) > GRID_TOLERANCE * max(1.0, span):
            raise ValidationError("Trajectory times must be uniformly spaced")

    def __len__(self) -> int:
        return self.times.size

    @property
    def dt(self) -> float:
        return float(self.times[-1] / (self.times.size - 1))

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @property
    def states(self) -> List[DensityMatrix2]:
        """Per-sample density matrices, renormalized to unit trace.

        Samples whose trace or Hermiticity is off by more than
        TRAJECTORY_TRACE_TOLERANCE raise ValidationError.
        """
        m = self.matrices
        traces = m[:, 0, 0] + m[:, 1, 1]
        skew = np.abs(m[:, 1, 0] - np.conj(m[:, 0, 1]))
        bad = (np.abs(traces - 1.0) > TRAJECTORY_TRACE_TOLERANCE) | (skew > TRAJECTORY_TRACE_TOLERANCE)
        if np.any(bad):
            k = int(np.flatnonzero(bad)[0])
            raise ValidationError(f"Sample at t={self.times[k]:.6g} is not a density matrix (trace {traces[k]})")
        return [
            DensityMatrix2.from_elements(m[k, 0, 0].real / traces[k].real, m[k, 0, 1] / traces[k].real)
            for k in range(self.times.size)
        ]

    def to_schroedinger(self, omega: float) -> 'Trajectory':
        if self.picture is not Picture.INTERACTION:
            raise ValidationError("Trajectory is already in the Schroedinger picture")
        matrices = self.matrices.copy()
        rotation = np.exp(-1j * omega * self.times)
        matrices[:, 0, 1] *= rotation
        matrices[:, 1, 0] *= np.conj(rotation)
        return Trajectory(times=self.times, matrices=matrices, picture=Picture.SCHROEDINGER)


def stack_matrices(rho11: np.ndarray, rho12: np.ndarray) -> np.ndarray:
    """(n, 2, 2) stack from arrays of excited populations and coherences."""
    rho11 = np.asarray(rho11, dtype=float)
    rho12 = np.asarray(rho12, dtype=complex)
    out = np.empty(rho11.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = rho11
    out[..., 0, 1] = rho12
    out[..., 1, 0] = np.conj(rho12)
    out[..., 1, 1] = 1.0 - rho11
    return out


def pure_state(b: BlochState) -> DensityMatrix2:
    c = b.cos_half
    return DensityMatrix2.from_elements(c * c, b.initial_coherence)


def _apply_gauge(vectors: np.ndarray) -> np.ndarray:
    """Make the largest component of every row real and nonnegative.

    Ties (magnitudes within 1e-9) go to the first component.
    """
    magnitudes = np.abs(vectors)
    pick_second = magnitudes[:, 1] > magnitudes[:, 0] + GAUGE_TIE_TOLERANCE
    pivot = np.where(pick_second, vectors[:, 1], vectors[:, 0])
    pivot_abs = np.abs(pivot)
    phase = np.where(pivot_abs > 0, np.conj(pivot) / np.where(pivot_abs > 0, pivot_abs, 1.0), 1.0)
    return vectors * phase[:, None]


# @agent:complexity medium
# @agent:performance O(n) vectorized
def spectral_arrays(
    matrices: np.ndarray,
    degeneracy_tolerance: float = DEGENERACY_TOLERANCE,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form eigen-decomposition of a stack of Hermitian 2x2 matrices.

    Args:
        matrices: array of shape (n, 2, 2)
        degeneracy_tolerance: gap below which a sample is flagged degenerate

    Returns:
        (lambda_plus, lambda_minus, vec_plus, vec_minus, degenerate) with vectors
        of shape (n, 2), each gauge-fixed.
    """
    m = np.asarray(matrices, dtype=complex)
    a = m[:, 0, 0].real
    d = m[:, 1, 1].real
    b = m[:, 0, 1]

    mean = 0.5 * (a + d)
    radius = np.hypot(0.5 * (a - d), np.abs(b))
    lambda_plus = mean + radius
    lambda_minus = mean - radius

    # The candidate with the larger pivot (>= radius) is never the zero vector unless radius == 0
    upper = a >= d
    first = np.where(upper, lambda_plus - d, b)
    second = np.where(upper, np.conj(b), lambda_plus - a)
    vec_plus = np.stack([first, second], axis=1).astype(complex)
    norms = np.linalg.norm(vec_plus, axis=1)
    flat = norms == 0.0
    vec_plus[flat] = np.array([1.0, 0.0], dtype=complex)
    norms[flat] = 1.0
    vec_plus /= norms[:, None]

    vec_minus = np.stack([-np.conj(vec_plus[:, 1]), np.conj(vec_plus[:, 0])], axis=1)

    degenerate = (lambda_plus - lambda_minus) < degeneracy_tolerance
    return lambda_plus, lambda_minus, _apply_gauge(vec_plus), _apply_gauge(vec_minus), degenerate


def eigensystem(rho: DensityMatrix2) -> SpectralPair:
    lp, lm, vp, vm, deg = spectral_arrays(rho.matrix[None, :, :])
    return SpectralPair(
        lambda_plus=float(lp[0]),
        lambda_minus=float(lm[0]),
        vec_plus=vp[0],
        vec_minus=vm[0],
        degenerate=bool(deg[0]),
    )


def to_schroedinger(rho_i: DensityMatrix2, omega: float, t: float) -> DensityMatrix2:
    """Conjugate by exp(-i H t), H = omega sigma_z / 2."""
    if t < 0:
        raise ValidationError(f"Time must be nonnegative, got {t}")
    rotation = complex(math.cos(omega * t), -math.sin(omega * t))
    return DensityMatrix2(
        rho11=rho_i.rho11,
        rho12=rho_i.rho12 * rotation,
        rho21=rho_i.rho21 * rotation.conjugate(),
        rho22=rho_i.rho22,
    )


def min_eigenvalue(rho: DensityMatrix2) -> float:
    a = float(np.real(rho.rho11))
    d = float(np.real(rho.rho22))
    return 0.5 * (a + d) - math.hypot(0.5 * (a - d), abs(rho.rho12))


def bloch_vector(rho: DensityMatrix2) -> Tuple[float, float, float]:
    rho12 = complex(rho.rho12)
    return (2.0 * rho12.real, -2.0 * rho12.imag, float(np.real(rho.rho11 - rho.rho22)))


def purity(rho: DensityMatrix2) -> float:
    a = float(np.real(rho.rho11))
    d = float(np.real(rho.rho22))
    return a * a + d * d + 2.0 * abs(rho.rho12) ** 2
