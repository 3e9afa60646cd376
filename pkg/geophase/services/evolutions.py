"""
Closed-form dynamics of the damped two-level atom.

Every model shares one structure: the excited population is the initial one
times a population factor P(t), and the coherence is the initial one times a
coherence factor C(t). The models differ only in those two factors:

    markovian   P = e^{-gamma2 t}             C = e^{-gamma2 t / 2}
    correlated  P = (1 + e^{-2 gamma t}) / 2  C = e^{-gamma t / 2}
    memory      P = xi_memory(R, tau)         C = xi_memory(R/2, tau)
    post        P = xi_post(R, tau)           C = xi_post(R/2, tau)

with R = gamma0/gamma and tau = gamma t. Functions accept scalars or numpy
arrays of times.
"""

from typing import Tuple, Union

import numpy as np

from ..exceptions import ValidationError
from ..models.params import (
    CorrelatedProjection,
    MarkovianProjection,
    MemoryKernel,
    ModelParams,
    PostMarkovian,
    XiBranch,
)
from ..models.state import BlochState, DensityMatrix2, Picture, Trajectory, stack_matrices
from ..utils.logging_config import LoggerFactory

logger = LoggerFactory.create_logger(__name__)

ArrayLike = Union[float, np.ndarray]

CRITICAL_TOLERANCE = 1e-8


def _as_output(values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(values) == 0 else values


def _check_nonnegative(name: str, values: np.ndarray) -> None:
    if np.any(np.isnan(values)) or np.any(values < 0):
        raise ValidationError(f"{name} must be nonnegative")


def xi_branch(ratio: float) -> XiBranch:
    if ratio < 0:
        raise ValidationError(f"Ratio must be nonnegative, got {ratio}")
    discriminant = 1.0 - 4.0 * ratio
    if abs(discriminant) < CRITICAL_TOLERANCE:
        return XiBranch.CRITICAL
    return XiBranch.HYPERBOLIC if discriminant > 0 else XiBranch.TRIGONOMETRIC


# @agent:complexity medium
# @agent:side-effects none
# @agent:performance O(n) vectorized
def xi_memory(ratio: float, tau: ArrayLike) -> ArrayLike:
    """Decay factor of the exponential-memory-kernel equation.

    Args:
        ratio: R = gamma0 / gamma >= 0
        tau: dimensionless time gamma t >= 0, scalar or array

    Returns:
        xi(R, tau) with the same shape as ``tau``

    Raises:
        ValidationError: negative ratio or time
    """
    tau = np.asarray(tau, dtype=float)
    _check_nonnegative("tau", tau)
    branch = xi_branch(ratio)

    if branch is XiBranch.CRITICAL:
        values = np.exp(-0.5 * tau) * (1.0 + 0.5 * tau)
    elif branch is XiBranch.HYPERBOLIC:
        kappa = np.sqrt(1.0 - 4.0 * ratio)
        # e^{-tau/2}[sinh(k tau/2)/k + cosh(k tau/2)] as two decaying exponentials
        slow = 0.5 * (1.0 + 1.0 / kappa) * np.exp(-0.5 * (1.0 - kappa) * tau)
        fast = 0.5 * (1.0 - 1.0 / kappa) * np.exp(-0.5 * (1.0 + kappa) * tau)
        values = slow + fast
    else:
        kappa = np.sqrt(4.0 * ratio - 1.0)
        half = 0.5 * kappa * tau
        values = np.exp(-0.5 * tau) * (np.sin(half) / kappa + np.cos(half))
    return _as_output(values)


def xi_post(ratio: float, tau: ArrayLike) -> ArrayLike:
    """Decay factor of the post-Markovian equation, (e^{-R tau} - R e^{-tau}) / (1 - R)."""
    tau = np.asarray(tau, dtype=float)
    _check_nonnegative("tau", tau)
    if ratio < 0:
        raise ValidationError(f"Ratio must be nonnegative, got {ratio}")

    if abs(1.0 - ratio) < CRITICAL_TOLERANCE:
        values = (1.0 + tau) * np.exp(-tau)
    else:
        values = (np.exp(-ratio * tau) - ratio * np.exp(-tau)) / (1.0 - ratio)
    return _as_output(values)


def population_decay(model: ModelParams, t: ArrayLike) -> ArrayLike:
    """P(t) = rho11(t) / rho11(0)"""
    t = np.asarray(t, dtype=float)
    _check_nonnegative("t", t)
    match model:
        case MarkovianProjection():
            return _as_output(np.exp(-model.gamma2 * t))
        case CorrelatedProjection():
            return _as_output(0.5 * (1.0 + np.exp(-2.0 * model.gamma * t)))
        case MemoryKernel():
            return xi_memory(model.ratio, model.gamma * t)
        case PostMarkovian():
            return xi_post(model.ratio, model.gamma * t)
    raise ValidationError(f"Unsupported model {type(model).__name__}")


def coherence_decay(model: ModelParams, t: ArrayLike) -> ArrayLike:
    """C(t) = rho12_I(t) / rho12(0); signed for the kernel models."""
    t = np.asarray(t, dtype=float)
    _check_nonnegative("t", t)
    match model:
        case MarkovianProjection():
            return _as_output(np.exp(-0.5 * model.gamma2 * t))
        case CorrelatedProjection():
            return _as_output(np.exp(-0.5 * model.gamma * t))
        case MemoryKernel():
            return xi_memory(0.5 * model.ratio, model.gamma * t)
        case PostMarkovian():
            return xi_post(0.5 * model.ratio, model.gamma * t)
    raise ValidationError(f"Unsupported model {type(model).__name__}")


def _elements(model: ModelParams, init: BlochState, t: np.ndarray, picture: Picture) -> Tuple[np.ndarray, np.ndarray]:
    rho11 = init.cos_half ** 2 * np.asarray(population_decay(model, t))
    rho12 = init.initial_coherence * np.asarray(coherence_decay(model, t))
    if picture is Picture.SCHROEDINGER:
        rho12 = rho12 * np.exp(-1j * model.omega * t)
    return rho11, rho12


def evolve_interaction(model: ModelParams, init: BlochState, t: float) -> DensityMatrix2:
    if t < 0:
        raise ValidationError(f"Time must be nonnegative, got {t}")
    rho11, rho12 = _elements(model, init, np.asarray(float(t)), Picture.INTERACTION)
    return DensityMatrix2.from_elements(float(rho11), complex(rho12))


def evolve(model: ModelParams, init: BlochState, t: float) -> DensityMatrix2:
    """Schroedinger-picture state at time t."""
    if t < 0:
        raise ValidationError(f"Time must be nonnegative, got {t}")
    rho11, rho12 = _elements(model, init, np.asarray(float(t)), Picture.SCHROEDINGER)
    return DensityMatrix2.from_elements(float(rho11), complex(rho12))


def sample_trajectory(
    model: ModelParams,
    init: BlochState,
    t_end: float,
    steps: int,
    picture: Picture = Picture.SCHROEDINGER,
) -> Trajectory:
    """Closed-form states on a uniform grid of steps + 1 samples over [0, t_end]."""
    if not t_end > 0:
        raise ValidationError(f"t_end must be positive, got {t_end}")
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps}")
    times = np.linspace(0.0, t_end, steps + 1)
    rho11, rho12 = _elements(model, init, times, Picture(picture))
    return Trajectory(times=times, matrices=stack_matrices(rho11, rho12), picture=picture)


# @agent:complexity medium
# @agent:performance O(n) vectorized
def spectral_factors(model: ModelParams, theta: float, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """eta and cos^2(theta_t/2) of the evolved state, free of cancellation.

    With d = 1 - 2 rho11 and q = 4|rho12|^2, eta = sqrt(d^2 + q) and
    cos^2(theta_t/2) = (d + eta) / (2 eta); d + eta is rewritten as
    q / (eta - d) when d < 0. A fully mixed state (eta = 0) gets 1/2.
    """
    init = BlochState(theta=theta)
    t = np.asarray(t, dtype=float)
    rho11 = init.cos_half ** 2 * np.asarray(population_decay(model, t))
    coherence = np.sin(init.theta) * np.asarray(coherence_decay(model, t))

    d = 1.0 - 2.0 * rho11
    q = coherence * coherence
    eta_values = np.sqrt(d * d + q)

    with np.errstate(divide='ignore', invalid='ignore'):
        gap = np.where(d < 0, q / (eta_values - d), d + eta_values)
        cos2 = np.where(eta_values > 0, gap / (2.0 * eta_values), 0.5)
    cos2 = np.clip(cos2, 0.0, 1.0)
    return _as_output(eta_values), _as_output(cos2)


def eta(model: ModelParams, theta: float, t: ArrayLike) -> ArrayLike:
    """Eigenvalue gap lambda_plus - lambda_minus."""
    values, _ = spectral_factors(model, theta, t)
    return values


def cos2_half_theta_t(model: ModelParams, theta: float, t: ArrayLike) -> ArrayLike:
    """Ground-state weight |<0|v_plus>|^2 of the leading eigenvector.

    Raises:
        ValidationError: theta = 0, where the effective angle is undefined
    """
    if theta == 0:
        raise ValidationError("cos^2(theta_t/2) is undefined for theta = 0")
    _, cos2 = spectral_factors(model, theta, t)
    return cos2
