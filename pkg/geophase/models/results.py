import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ..exceptions import ConfigurationError, ValidationError
from .params import ModelParams


class QuadratureScheme(str, Enum):
    SIMPSON = "simpson"
    TRAPEZOID = "trapezoid"


class SolverMethod(str, Enum):
    RK4 = "rk4"
    TRAPEZOID_VOLTERRA = "trapezoid-volterra"


@dataclass(frozen=True)
class PhaseResult:
    """Geometric phase of one evolution.

    Attributes:
        principal (float): Arg of the phase factor, in (-pi, pi]
        unwrapped (float): accumulated value before folding
        visibility (float): modulus of the phase factor
    """

    principal: float
    unwrapped: float
    visibility: float

    @property
    def principal_over_pi(self) -> float:
        return self.principal / math.pi

    @property
    def unwrapped_over_pi(self) -> float:
        return self.unwrapped / math.pi


@dataclass(frozen=True)
class QuadratureConfig:
    steps: int = 2000
    scheme: QuadratureScheme = QuadratureScheme.SIMPSON
    degeneracy_tolerance: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, 'scheme', QuadratureScheme(self.scheme))
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 2:
            raise ConfigurationError(f"Quadrature steps must be an integer >= 2, got {self.steps!r}")
        if self.scheme is QuadratureScheme.SIMPSON and self.steps % 2:
            raise ConfigurationError(f"Simpson quadrature needs an even step count, got {self.steps}")
        if not self.degeneracy_tolerance > 0:
            raise ConfigurationError("Degeneracy tolerance must be positive")


# @agent:service-type data-model
# @agent:complexity low
@dataclass(frozen=True)
class SolverConfig:
    """Time grid and method for one numeric solver run.

    The run covers [0, t_end] in ``n_steps`` equal steps of roughly ``dt``
    (the step is shrunk so that the last sample lands exactly on ``t_end``).
    Only every ``save_every``-th sample is kept in the returned trajectory.
    """

    dt: float
    t_end: float
    method: SolverMethod = SolverMethod.RK4
    save_every: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'method', SolverMethod(self.method))
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ConfigurationError(f"Solver step must be positive, got {self.dt}")
        if not (math.isfinite(self.t_end) and self.t_end >= self.dt):
            raise ConfigurationError(f"Solver end time must be >= dt, got t_end={self.t_end}, dt={self.dt}")
        if not isinstance(self.save_every, (int, np.integer)) or self.save_every < 1:
            raise ConfigurationError(f"save_every must be a positive integer, got {self.save_every!r}")

    @classmethod
    def default(
        cls,
        t_end: float,
        rate: float,
        omega: float,
        method: SolverMethod = SolverMethod.RK4,
        save_every: int = 1,
    ) -> 'SolverConfig':
        """dt = 1e-4 in units of 1/rate or 1/omega, whichever is smaller."""
        scale = 1.0 / omega if rate <= 0 else min(1.0 / rate, 1.0 / omega)
        return cls(dt=1e-4 * scale, t_end=t_end, method=method, save_every=save_every)

    @property
    def n_steps(self) -> int:
        raw = max(1, int(round(self.t_end / self.dt)))
        return self.save_every * math.ceil(raw / self.save_every)

    @property
    def step(self) -> float:
        return self.t_end / self.n_steps

    @property
    def saved_times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_end, self.n_steps // self.save_every + 1)


@dataclass(frozen=True)
class Deviation:
    """Largest entrywise gap between two trajectories.

    per_entry is ordered (rho11, rho12, rho21, rho22).
    """

    max_abs: float
    at_time: float
    per_entry: Tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.per_entry) != 4:
            raise ValidationError("Deviation needs exactly four entries")
        if not (np.isnan(self.max_abs) or self.max_abs == max(self.per_entry)):
            raise ValidationError("max_abs must equal the largest per-entry deviation")


@dataclass(frozen=True)
class SweepSpec:
    """One theta sweep of one model."""

    model: ModelParams
    theta_start: float = 0.01 * math.pi
    theta_end: float = 0.99 * math.pi
    theta_count: int = 99
    steps: int = 2000
    periods: int = 1

    def __post_init__(self):
        if not isinstance(self.theta_count, (int, np.integer)) or self.theta_count < 1:
            raise ConfigurationError(f"theta_count must be >= 1, got {self.theta_count!r}")
        for name in ("theta_start", "theta_end"):
            value = getattr(self, name)
            if not (0.0 <= value <= math.pi):
                raise ValidationError(f"{name} must lie in [0, pi], got {value}")
        if self.theta_end < self.theta_start:
            raise ValidationError("theta_end must not be smaller than theta_start")
        if not isinstance(self.periods, (int, np.integer)) or self.periods < 1:
            raise ConfigurationError(f"periods must be a positive integer, got {self.periods!r}")
        QuadratureConfig(steps=self.steps)

    @property
    def omega(self) -> float:
        return self.model.omega

    @property
    def thetas(self) -> np.ndarray:
        if self.theta_count == 1:
            return np.array([self.theta_start])
        return np.linspace(self.theta_start, self.theta_end, self.theta_count)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(steps=self.steps)
