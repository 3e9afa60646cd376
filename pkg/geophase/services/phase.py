"""
Geometric phase of a mixed state under nonunitary evolution.

Two independent evaluators:

* ``phase_closed`` integrates the closed-form weight cos^2(theta_t/2) of the
  leading eigenvector over whole quasi-periods (fast path).
* ``phase_general`` works from any sampled trajectory: it diagonalises every
  sample, transports the eigenvectors along the path and sums the eigenvalue
  weighted overlap times connection factor over the eigenbranches (slow path).

Each one is used as the other's check.
"""

import math
from typing import Optional, Union

import numpy as np
from scipy.integrate import simpson, trapezoid

from ..exceptions import DegeneracyError, GaugeAlignmentError, ValidationError
from ..models.params import ModelParams
from ..models.results import PhaseResult, QuadratureConfig, QuadratureScheme
from ..models.state import BlochState, Picture, Trajectory, spectral_arrays
from ..utils.logging_config import LoggerFactory
from .evolutions import coherence_decay, spectral_factors

logger = LoggerFactory.create_logger(__name__)

ALIGNMENT_TOLERANCE = 1e-12
BRANCH_WEIGHT_TOLERANCE = 1e-12
# below this |v0 v1| the relative phase of an eigenvector is not resolved
RELATIVE_PHASE_TOLERANCE = 1e-9
MAX_DEGENERATE_RUN = 2


def fold_phase(value: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Fold into (-pi, pi]."""
    folded = np.remainder(np.asarray(value, dtype=float) + math.pi, 2.0 * math.pi) - math.pi
    folded = np.where(folded <= -math.pi, folded + 2.0 * math.pi, folded)
    return float(folded) if np.ndim(folded) == 0 else folded


def phase_gap(a: Union[float, np.ndarray], b: Union[float, np.ndarray], period: float = 2.0 * math.pi):
    """Circular distance between two phases.

    Pass ``period=2`` for values given in units of pi.
    """
    diff = np.remainder(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), period)
    gap = np.minimum(diff, period - diff)
    return float(gap) if np.ndim(gap) == 0 else gap


def _integrate(values: np.ndarray, h: float, scheme: QuadratureScheme) -> complex:
    rule = simpson if scheme is QuadratureScheme.SIMPSON else trapezoid
    if np.iscomplexobj(values):
        return complex(rule(values.real, dx=h), rule(values.imag, dx=h))
    return float(rule(values, dx=h))


# @agent:complexity medium
# @agent:side-effects none
# @agent:performance O(steps) vectorized
def phase_closed(
    model: ModelParams,
    theta: float,
    config: Optional[QuadratureConfig] = None,
    periods: int = 1,
) -> PhaseResult:
    """Geometric phase over whole quasi-periods from the closed-form eigenbranch.

    The leading eigenvector is x|1> + y e^{i(phi + omega t)}|0> with
    y = cos(theta_t/2) and x = sign(C) sin(theta_t/2), C the coherence factor.
    Its connection is i omega y^2, so the accumulated phase is
    -omega * integral of cos^2(theta_t/2). The principal value also carries
    the sign of the start/end overlap, which turns negative when the
    coherence factor changes sign.

    Args:
        model: evolution model
        theta: initial polar angle in [0, pi]
        config: quadrature settings (default 2000 Simpson steps)
        periods: number of quasi-periods 2pi/omega

    Returns:
        PhaseResult; theta = 0 gives exactly (0, 0, 1)

    Raises:
        ValidationError: theta outside [0, pi] or periods < 1
    """
    config = config or QuadratureConfig()
    init = BlochState(theta=theta)
    if not isinstance(periods, (int, np.integer)) or periods < 1:
        raise ValidationError(f"periods must be a positive integer, got {periods!r}")
    if init.theta == 0.0:
        return PhaseResult(principal=0.0, unwrapped=0.0, visibility=1.0)

    span = periods * model.period
    times = np.linspace(0.0, span, config.steps + 1)
    eta_values, cos2 = spectral_factors(model, init.theta, times)
    unwrapped = -model.omega * _integrate(cos2, span / config.steps, config.scheme)

    y_end = math.sqrt(cos2[-1])
    x_end = math.copysign(math.sqrt(1.0 - cos2[-1]), float(coherence_decay(model, span)))
    overlap = init.cos_half * x_end + init.sin_half * y_end * complex(
        math.cos(model.omega * span), math.sin(model.omega * span)
    )
    factor = overlap * complex(math.cos(unwrapped), math.sin(unwrapped))

    visibility = math.sqrt(0.5 * (1.0 + eta_values[-1])) * abs(overlap)
    return PhaseResult(
        principal=fold_phase(math.atan2(factor.imag, factor.real)),
        unwrapped=unwrapped,
        visibility=visibility,
    )


def gauge_align(previous: np.ndarray, current: np.ndarray) -> np.ndarray:
    """Rotate ``current`` by a unit phase so that <previous|aligned> is real and positive.

    Raises:
        GaugeAlignmentError: the vectors are (numerically) orthogonal
    """
    overlap = np.vdot(previous, current)
    magnitude = abs(overlap)
    if magnitude < ALIGNMENT_TOLERANCE:
        raise GaugeAlignmentError(f"Cannot align orthogonal vectors (overlap {magnitude:.3e})")
    return np.asarray(current, dtype=complex) * (np.conj(overlap) / magnitude)


def _pair_overlaps(vectors: np.ndarray) -> np.ndarray:
    return np.sum(np.conj(vectors[:-1]) * vectors[1:], axis=1)


def first_jump(vectors: np.ndarray) -> Optional[int]:
    """Index k of the first pair (k, k+1) that cannot be aligned, if any."""
    bad = np.flatnonzero(np.abs(_pair_overlaps(vectors)) < ALIGNMENT_TOLERANCE)
    return int(bad[0]) if bad.size else None


def align_sequence(vectors: np.ndarray) -> np.ndarray:
    """Chain gauge_align along a sequence of (n, 2) vectors, vectorised.

    Each sample is aligned to the already aligned previous one; the
    accumulated unit phase is a running product of the pairwise overlaps.
    """
    jump = first_jump(vectors)
    if jump is not None:
        raise GaugeAlignmentError(f"Cannot align sample {jump + 1} to sample {jump}")
    phases = np.concatenate([[0.0], np.cumsum(np.angle(_pair_overlaps(vectors)))])
    return vectors * np.exp(-1j * phases)[:, None]


def derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite differences along axis 0.

    Five-point central stencil inside, one-sided five-point stencils on the
    two outermost samples at each end. Shorter inputs fall back to numpy.
    """
    n = values.shape[0]
    if n < 5:
        return np.gradient(values, h, axis=0, edge_order=1 if n < 3 else 2)
    f = values
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    out[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    out[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    return out


def connection(vectors: np.ndarray, h: float) -> np.ndarray:
    """<phi|d phi/dt> at every sample."""
    return np.sum(np.conj(vectors) * derivative(vectors, h), axis=1)


def _check_degenerate_runs(flags: np.ndarray, times: np.ndarray) -> None:
    padded = np.concatenate([[0], flags.astype(np.int8), [0]])
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    for start, end in zip(starts, ends):
        if end - start > MAX_DEGENERATE_RUN:
            t_start, t_end = float(times[start]), float(times[end - 1])
            raise DegeneracyError(
                f"Trajectory is degenerate over {end - start} samples in [{t_start:.6g}, {t_end:.6g}]",
                t_start=t_start,
                t_end=t_end,
            )


def _branch_terms(
    weights: np.ndarray,
    vectors: np.ndarray,
    times: np.ndarray,
    h: float,
    scheme: QuadratureScheme,
) -> complex:
    """sqrt(l(0) l(T)) <phi(0)|phi(T)> exp(-integral <phi|d phi>) of one eigenbranch."""
    jump = first_jump(vectors)
    if jump is not None:
        t_start, t_end = float(times[jump]), float(times[jump + 1])
        raise DegeneracyError(
            f"Eigenvector cannot be followed between t={t_start:.6g} and t={t_end:.6g}",
            t_start=t_start,
            t_end=t_end,
        )
    aligned = align_sequence(vectors)

    conn = connection(aligned, h)
    integral = _integrate(conn, h, scheme)

    amplitudes = np.sqrt((weights[0] * weights).astype(complex))
    overlaps = aligned @ np.conj(aligned[0])
    return complex(amplitudes[-1] * overlaps[-1] * np.exp(-integral))


def relative_phase(vectors: np.ndarray, unresolved: Optional[np.ndarray] = None) -> np.ndarray:
    """Continuous arg(v1 conj(v0)) along a sequence of (n, 2) vectors.

    Steps are folded into (-pi/2, pi/2], so a sign change of either component
    does not add a jump. Samples where the phase is not resolved are
    interpolated from their neighbours; if none is resolved the phase is zero.
    """
    product = vectors[:, 1] * np.conj(vectors[:, 0])
    resolved = np.abs(product) > RELATIVE_PHASE_TOLERANCE
    if unresolved is not None:
        resolved &= ~unresolved
    if not np.any(resolved):
        return np.zeros(vectors.shape[0])
    index = np.flatnonzero(resolved)
    steps = np.diff(np.angle(product[index]))
    steps = np.pi / 2.0 - np.remainder(np.pi / 2.0 - steps, np.pi)
    chi = np.angle(product[index[0]]) + np.concatenate([[0.0], np.cumsum(steps)])
    return np.interp(np.arange(vectors.shape[0]), index, chi)


def accumulated_phase(vectors: np.ndarray, h: float, scheme: QuadratureScheme, unresolved: Optional[np.ndarray] = None) -> float:
    """-integral of Im<phi|d phi/dt> in the gauge where the excited component is real.

    In that gauge the connection is i |v1|^2 d(chi)/dt with chi the relative phase.
    """
    chi = relative_phase(vectors, unresolved)
    return -float(_integrate(np.abs(vectors[:, 1]) ** 2 * derivative(chi, h), h, scheme))


# @agent:complexity high
# @agent:side-effects none
# @agent:performance O(n) vectorized
# @agent:test-coverage critical,gauge-invariance,path-agreement
def phase_general(traj: Trajectory, config: Optional[QuadratureConfig] = None) -> PhaseResult:
    """Geometric phase of an arbitrary sampled trajectory.

    Sums sqrt(l_i(0) l_i(T)) <phi_i(0)|phi_i(T)> exp(-integral <phi_i|d phi_i>)
    over both eigenbranches. Branches with l_i(0) <= 1e-12 contribute zero.
    ``config.steps`` is not used; the trajectory grid sets the resolution.

    Args:
        traj: Schroedinger-picture trajectory
        config: quadrature scheme and degeneracy tolerance

    Returns:
        PhaseResult whose ``unwrapped`` is the accumulated phase of the
        leading eigenbranch (see ``accumulated_phase``)

    Raises:
        ValidationError: interaction-picture input
        DegeneracyError: a degenerate run longer than two samples, or an
            eigenvector that cannot be followed between samples
    """
    config = config or QuadratureConfig()
    if traj.picture is not Picture.SCHROEDINGER:
        raise ValidationError("phase_general expects a Schroedinger-picture trajectory")

    times = traj.times
    h = traj.dt
    lambda_plus, lambda_minus, vec_plus, vec_minus, degenerate = spectral_arrays(
        traj.matrices, config.degeneracy_tolerance
    )
    _check_degenerate_runs(degenerate, times)
    if np.any(degenerate):
        logger.debug("Near-degenerate samples tolerated", count=int(np.sum(degenerate)))

    total = 0j
    for weights, vectors in ((lambda_plus, vec_plus), (lambda_minus, vec_minus)):
        if abs(weights[0]) <= BRANCH_WEIGHT_TOLERANCE:
            continue
        total += _branch_terms(weights, vectors, times, h, config.scheme)

    principal = fold_phase(math.atan2(total.imag, total.real))
    unwrapped = accumulated_phase(vec_plus, h, config.scheme, degenerate)
    return PhaseResult(principal=principal, unwrapped=unwrapped, visibility=abs(total))
