"""
Numerical solvers that check the closed forms independently.

The two Lindblad-type models and the exponential memory kernel are linear
autonomous systems in vec(rho) (row-major, ordered rho11, rho12, rho21, rho22),
so one RK4 step is a fixed matrix. Runs advance blockwise with precomputed
powers of that matrix. The post-Markovian equation is solved element by
element as scalar Volterra integro-differential equations.
All solvers work in the interaction picture.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ConfigurationError, GridMismatchError, SolverDivergedError, ValidationError
from ..models.params import CorrelatedProjection, MarkovianProjection, MemoryKernel, ModelParams, PostMarkovian
from ..models.results import Deviation, SolverConfig, SolverMethod
from ..models.state import TRAJECTORY_TRACE_TOLERANCE, BlochState, Picture, Trajectory, pure_state, stack_matrices
from ..utils.validators import InputValidator
from ..utils.logging_config import LoggerFactory
from .evolutions import coherence_decay, population_decay, sample_trajectory

logger = LoggerFactory.create_logger(__name__)

TRACE_DRIFT_LIMIT = TRAJECTORY_TRACE_TOLERANCE
# growth per RK4 step above which a linear run is rejected
STABILITY_MARGIN = 1e-9
POSITIVITY_TOLERANCE = 1e-12
BLOCK_SIZE = 256

IDENTITY2 = np.eye(2, dtype=complex)
# |1> (excited) is index 0, |0> (ground) is index 1
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T


def jump_term(op: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> op rho op^dagger."""
    return np.kron(op, op.conj())


def anticommutator_term(op: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> -1/2 {op^dagger op, rho}."""
    n = op.conj().T @ op
    return -0.5 * (np.kron(n, IDENTITY2) + np.kron(IDENTITY2, n.T))


def lindblad_dissipator(op: np.ndarray) -> np.ndarray:
    return jump_term(op) + anticommutator_term(op)


def amplitude_damping_generator(rate: float) -> np.ndarray:
    """rate * (s- rho s+ - 1/2 {s+ s-, rho})"""
    return rate * lindblad_dissipator(SIGMA_MINUS)


def correlated_generator(gamma1: float, gamma2: float) -> np.ndarray:
    """Coupled band equations acting on [vec rho1, vec rho2].

    d rho1/dt = gamma1 s+ rho2 s- - gamma2/2 {s+ s-, rho1}
    d rho2/dt = gamma2 s- rho1 s+ - gamma1/2 {s- s+, rho2}
    """
    out = np.zeros((8, 8), dtype=complex)
    out[:4, :4] = gamma2 * anticommutator_term(SIGMA_MINUS)
    out[:4, 4:] = gamma1 * jump_term(SIGMA_PLUS)
    out[4:, :4] = gamma2 * jump_term(SIGMA_MINUS)
    out[4:, 4:] = gamma1 * anticommutator_term(SIGMA_PLUS)
    return out


def memory_kernel_generator(gamma0: float, gamma: float) -> np.ndarray:
    """Local system on [vec rho, vec u] equivalent to the exponential kernel.

    u(t) = integral of gamma e^{-gamma (t - s)} L rho(s) ds obeys
    du/dt = gamma (L rho - u) with u(0) = 0, and d rho/dt = u.
    """
    out = np.zeros((8, 8), dtype=complex)
    out[:4, 4:] = np.eye(4)
    out[4:, :4] = gamma * amplitude_damping_generator(gamma0)
    out[4:, 4:] = -gamma * np.eye(4)
    return out


def rk4_step_matrix(generator: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step of dy/dt = L y, applied to the identity."""
    identity = np.eye(generator.shape[0], dtype=complex)
    k1 = generator
    k2 = generator @ (identity + 0.5 * dt * k1)
    k3 = generator @ (identity + 0.5 * dt * k2)
    k4 = generator @ (identity + dt * k3)
    return identity + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


# @agent:complexity medium
# @agent:performance O(n_saved * dim^2) with BLOCK_SIZE matrix powers
def propagate_linear(
    generator: np.ndarray,
    y0: np.ndarray,
    dt: float,
    n_steps: int,
    save_every: int = 1,
    block: int = BLOCK_SIZE,
) -> np.ndarray:
    """Iterate the RK4 step matrix, keeping every ``save_every``-th state.

    A step matrix with an eigenvalue outside the unit circle raises
    SolverDivergedError before any state is computed.

    Returns:
        array of shape (n_steps // save_every + 1, dim)
    """
    if n_steps % save_every:
        raise ConfigurationError("n_steps must be a multiple of save_every")
    single = rk4_step_matrix(generator, dt)
    growth = float(np.max(np.abs(np.linalg.eigvals(single))))
    if growth > 1.0 + STABILITY_MARGIN:
        raise SolverDivergedError(
            f"dt={dt:g} lies outside the RK4 stability region of this generator (growth {growth:.4f} per step)",
            time=0.0,
        )
    step = np.linalg.matrix_power(single, save_every)
    n_saved = n_steps // save_every

    dim = generator.shape[0]
    powers = np.empty((block, dim, dim), dtype=complex)
    powers[0] = step
    for k in range(1, block):
        powers[k] = powers[k - 1] @ step

    out = np.empty((n_saved + 1, dim), dtype=complex)
    out[0] = y0
    done = 0
    current = np.asarray(y0, dtype=complex)
    while done < n_saved:
        m = min(block, n_saved - done)
        segment = powers[:m] @ current
        out[done + 1: done + m + 1] = segment
        current = segment[-1]
        done += m
    return out


def _check_finite_and_trace(times: np.ndarray, traces: np.ndarray, label: str) -> None:
    finite = np.isfinite(traces)
    if not np.all(finite):
        k = int(np.flatnonzero(~finite)[0])
        raise SolverDivergedError(f"{label}: non-finite state at t={times[k]:.6g}", time=float(times[k]))
    drift = np.abs(traces - traces[0])
    worst = float(np.max(drift))
    if worst > TRACE_DRIFT_LIMIT:
        k = int(np.flatnonzero(drift > TRACE_DRIFT_LIMIT)[0])
        raise SolverDivergedError(
            f"{label}: trace drift {worst:.3e} exceeds {TRACE_DRIFT_LIMIT:g}",
            time=float(times[k]),
            drift=worst,
        )


def _require_method(cfg: SolverConfig, method: SolverMethod, label: str) -> None:
    if cfg.method is not method:
        raise ConfigurationError(f"{label} needs method '{method.value}', got '{cfg.method.value}'")


def _run_linear(generator: np.ndarray, y0: np.ndarray, cfg: SolverConfig, label: str) -> Tuple[np.ndarray, np.ndarray]:
    times = cfg.saved_times
    logger.debug("Linear solver run", solver=label, steps=cfg.n_steps, saved=times.size)
    states = propagate_linear(generator, y0, cfg.step, cfg.n_steps, cfg.save_every)
    return times, states


def solve_markovian(gamma2: float, init: BlochState, cfg: SolverConfig) -> Trajectory:
    _require_method(cfg, SolverMethod.RK4, "solve_markovian")
    gamma2 = InputValidator.validate_rate("gamma2", gamma2)
    y0 = pure_state(init).matrix.ravel()
    times, states = _run_linear(amplitude_damping_generator(gamma2), y0, cfg, "markovian")
    _check_finite_and_trace(times, states[:, 0] + states[:, 3], "markovian")
    return Trajectory(times=times, matrices=states.reshape(-1, 2, 2), picture=Picture.INTERACTION)


def solve_correlated(gamma1: float, gamma2: float, init: BlochState, cfg: SolverConfig) -> Trajectory:
    """Both bands integrated together; the band-2 state starts empty."""
    _require_method(cfg, SolverMethod.RK4, "solve_correlated")
    gamma1 = InputValidator.validate_rate("gamma1", gamma1)
    gamma2 = InputValidator.validate_rate("gamma2", gamma2)
    y0 = np.concatenate([pure_state(init).matrix.ravel(), np.zeros(4, dtype=complex)])
    times, states = _run_linear(correlated_generator(gamma1, gamma2), y0, cfg, "correlated")
    total = states[:, :4] + states[:, 4:]
    _check_finite_and_trace(times, total[:, 0] + total[:, 3], "correlated")
    return Trajectory(times=times, matrices=total.reshape(-1, 2, 2), picture=Picture.INTERACTION)


def solve_memory_kernel(gamma0: float, gamma: float, init: BlochState, cfg: SolverConfig) -> Trajectory:
    _require_method(cfg, SolverMethod.RK4, "solve_memory_kernel")
    gamma0 = InputValidator.validate_rate("gamma0", gamma0)
    gamma = InputValidator.validate_rate("gamma", gamma, strictly_positive=True)
    y0 = np.concatenate([pure_state(init).matrix.ravel(), np.zeros(4, dtype=complex)])
    times, states = _run_linear(memory_kernel_generator(gamma0, gamma), y0, cfg, "memory")
    rho = states[:, :4]
    _check_finite_and_trace(times, rho[:, 0] + rho[:, 3], "memory")
    return Trajectory(times=times, matrices=rho.reshape(-1, 2, 2), picture=Picture.INTERACTION)


# @agent:complexity medium
# @agent:performance O(n^2) full history
def solve_volterra_scalar(g: float, gamma: float, dt: float, n_steps: int) -> np.ndarray:
    """Solve y' = -g * integral_0^t k(t - s) y(s) ds, y(0) = 1, k(u) = gamma e^{-(gamma + g) u}.

    The history integral uses the trapezoid rule over the stored solution and
    the step is the implicit trapezoid rule, which is linear in the new value
    and so solved directly.

    Returns:
        y on the grid 0, dt, ..., n_steps * dt
    """
    if n_steps < 1 or not dt > 0:
        raise ConfigurationError(f"Volterra solver needs dt > 0 and n_steps >= 1, got dt={dt}, n_steps={n_steps}")
    kernel = gamma * np.exp(-(gamma + g) * dt * np.arange(n_steps + 1))
    y = np.empty(n_steps + 1)
    y[0] = 1.0
    slope = 0.0
    half_k0 = 0.5 * kernel[0]
    denominator = 1.0 + 0.5 * dt * g * dt * half_k0
    for n in range(n_steps):
        history = 0.5 * kernel[n + 1] * y[0] + np.dot(kernel[n:0:-1], y[1:n + 1])
        y[n + 1] = (y[n] + 0.5 * dt * slope - 0.5 * dt * g * dt * history) / denominator
        slope = -g * dt * (history + half_k0 * y[n + 1])
    return y


def solve_post_markovian(gamma0: float, gamma: float, init: BlochState, cfg: SolverConfig) -> Trajectory:
    """Population and coherence as independent scalar Volterra equations.

    The damping generator acts on rho11 by -gamma0 and on rho12 by -gamma0/2,
    so each element obeys the scalar equation with g set to that rate.
    """
    _require_method(cfg, SolverMethod.TRAPEZOID_VOLTERRA, "solve_post_markovian")
    gamma0 = InputValidator.validate_rate("gamma0", gamma0)
    gamma = InputValidator.validate_rate("gamma", gamma, strictly_positive=True)
    logger.debug("Volterra solver run", steps=cfg.n_steps, gamma0=gamma0, gamma=gamma)

    population = solve_volterra_scalar(gamma0, gamma, cfg.step, cfg.n_steps)[::cfg.save_every]
    coherence = solve_volterra_scalar(0.5 * gamma0, gamma, cfg.step, cfg.n_steps)[::cfg.save_every]
    times = cfg.saved_times
    if not (np.all(np.isfinite(population)) and np.all(np.isfinite(coherence))):
        raise SolverDivergedError("post-Markovian: non-finite response")

    rho11 = init.cos_half ** 2 * population
    rho12 = init.initial_coherence * coherence
    return Trajectory(times=times, matrices=stack_matrices(rho11, rho12), picture=Picture.INTERACTION)


def compare(analytic: Trajectory, numeric: Trajectory) -> Deviation:
    """Largest entrywise |analytic - numeric| and where it occurs."""
    if analytic.picture is not numeric.picture:
        raise GridMismatchError(
            f"Cannot compare {analytic.picture.value} and {numeric.picture.value} trajectories"
        )
    if len(analytic) != len(numeric) or not np.allclose(
        analytic.times, numeric.times, rtol=0.0, atol=1e-12 * max(1.0, analytic.t_end)
    ):
        raise GridMismatchError("Trajectories are sampled on different time grids")

    diff = np.abs(analytic.matrices - numeric.matrices).reshape(-1, 4)
    per_sample = np.max(diff, axis=1)
    if np.any(np.isnan(per_sample)):
        k = int(np.flatnonzero(np.isnan(per_sample))[0])
        return Deviation(max_abs=float("nan"), at_time=float(analytic.times[k]), per_entry=tuple(float("nan") for _ in range(4)))
    k = int(np.argmax(per_sample))
    per_entry = tuple(float(v) for v in np.max(diff, axis=0))
    return Deviation(max_abs=max(per_entry), at_time=float(analytic.times[k]), per_entry=per_entry)


# @agent:complexity low
# @agent:performance O(len(thetas) * len(times)) vectorized per theta
def positivity_scan(
    model: ModelParams,
    thetas: Sequence[float],
    times: Sequence[float],
) -> List[Tuple[float, float, float]]:
    """All (theta, t, lambda_minus) of the closed form with lambda_minus < -1e-12."""
    thetas = np.asarray(thetas, dtype=float)
    times = np.asarray(times, dtype=float)
    if thetas.size == 0 or times.size == 0:
        raise ValidationError("Positivity scan needs nonempty grids")

    population = np.asarray(population_decay(model, times))
    coherence = np.asarray(coherence_decay(model, times))
    violations: List[Tuple[float, float, float]] = []
    for theta in thetas:
        init = BlochState(theta=theta)
        rho11 = init.cos_half ** 2 * population
        rho12_abs = 0.5 * math.sin(init.theta) * np.abs(coherence)
        lambda_minus = 0.5 - np.hypot(rho11 - 0.5, rho12_abs)
        for k in np.flatnonzero(lambda_minus < -POSITIVITY_TOLERANCE):
            violations.append((float(theta), float(times[k]), float(lambda_minus[k])))

    if violations:
        logger.warning("Positivity violations found", model=model.label, count=len(violations))
    return violations


def rk4_order(gamma2: float, init: BlochState, t_end: float, dt: float) -> float:
    """Empirical convergence order of the Markovian solver from a dt / dt/2 pair."""

    model = MarkovianProjection(gamma2=gamma2)
    errors = []
    for step in (dt, 0.5 * dt):
        cfg = SolverConfig(dt=step, t_end=t_end)
        numeric = solve_markovian(gamma2, init, cfg)
        exact = sample_trajectory(model, init, t_end, cfg.n_steps, Picture.INTERACTION)
        errors.append(compare(exact, numeric).max_abs)
    logger.debug("RK4 order estimate", coarse=errors[0], fine=errors[1])
    return math.log2(errors[0] / errors[1])


def solve(model: ModelParams, init: BlochState, cfg: Optional[SolverConfig] = None, t_end: Optional[float] = None) -> Trajectory:
    """Dispatch to the oracle matching ``model``; default grid from SolverConfig.default."""

    if cfg is None:
        span = t_end if t_end is not None else model.period
        method = SolverMethod.TRAPEZOID_VOLTERRA if isinstance(model, PostMarkovian) else SolverMethod.RK4
        cfg = SolverConfig.default(span, model.max_rate, model.omega, method)
    match model:
        case MarkovianProjection():
            return solve_markovian(model.gamma2, init, cfg)
        case CorrelatedProjection():
            return solve_correlated(model.gamma, model.gamma, init, cfg)
        case MemoryKernel():
            return solve_memory_kernel(model.gamma0, model.gamma, init, cfg)
        case PostMarkovian():
            return solve_post_markovian(model.gamma0, model.gamma, init, cfg)
    raise ValidationError(f"Unsupported model {type(model).__name__}")
