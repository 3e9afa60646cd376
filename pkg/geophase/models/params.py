import math
from abc import ABC
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Dict, Optional, Tuple

from ..exceptions import ConfigurationError
from ..utils.validators import InputValidator


class ModelKind(str, Enum):
    MARKOVIAN = "markovian"
    CORRELATED = "correlated"
    MEMORY = "memory"
    POST = "post"


class XiBranch(str, Enum):
    """Closed form used by the memory-kernel decay function for a given ratio."""
    HYPERBOLIC = "hyperbolic"
    TRIGONOMETRIC = "trigonometric"
    CRITICAL = "critical"


def format_number(value: float) -> str:
    return format(float(value), '.12g')


# @agent:service-type data-model
# @agent:scalability stateless
# @agent:persistence none
# @agent:priority critical
@dataclass(frozen=True, kw_only=True)
class ModelParams(ABC):
    """Rates of one open-system evolution model plus the transition frequency.

    Subclasses form a closed union, one per model. Every instance is immutable
    and validated on construction, so it can be shared across sweep threads.

    Architecture: frozen dataclass hierarchy, dispatched on ``kind``
    Failure Mode: ValidationError on negative or non-finite rates

    Example:
        >>> ModelParams.from_flags("markovian", gamma2=0.1).params_string()
        'gamma2=0.1;omega=1'
    """

    omega: float = 1.0

    kind: ClassVar[ModelKind]
    rate_fields: ClassVar[Tuple[str, ...]]
    # rates that must be strictly positive; the others may be zero
    positive_rates: ClassVar[Tuple[str, ...]] = ()

    def __post_init__(self):
        object.__setattr__(self, "omega", InputValidator.validate_rate("omega", self.omega, strictly_positive=True))
        for name in self.rate_fields:
            value = InputValidator.validate_rate(name, getattr(self, name), strictly_positive=name in self.positive_rates)
            object.__setattr__(self, name, value)

    @property
    def rates(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in self.rate_fields}

    @property
    def max_rate(self) -> float:
        """Fastest rate of the model, used to scale solver steps."""
        return max(self.rates.values())

    @property
    def period(self) -> float:
        """One quasi-period 2pi/omega."""
        return 2.0 * math.pi / self.omega

    def params_string(self) -> str:
        parts = [f"{name}={format_number(value)}" for name, value in self.rates.items()]
        parts.append(f"omega={format_number(self.omega)}")
        return ";".join(parts)

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.params_string()})"

    # @agent:complexity low
    # @agent:side-effects none
    @classmethod
    def from_flags(
        cls,
        model: str,
        *,
        gamma2: Optional[float] = None,
        gamma: Optional[float] = None,
        gamma0: Optional[float] = None,
        omega: float = 1.0,
    ) -> 'ModelParams':
        """Build the model named on the command line from its rate flags.

        Raises:
            ConfigurationError: unknown model, missing required rate, or a rate
                that the model does not take
        """
        try:
            kind = ModelKind(model)
        except ValueError:
            raise ConfigurationError(
                f"Unknown model '{model}', expected one of {[k.value for k in ModelKind]}"
            )

        target = _MODEL_CLASSES[kind]
        given = {"gamma2": gamma2, "gamma": gamma, "gamma0": gamma0}
        missing = [name for name in target.rate_fields if given[name] is None]
        extra = [name for name, value in given.items() if value is not None and name not in target.rate_fields]
        if missing:
            raise ConfigurationError(
                f"Model '{kind.value}' requires " + ", ".join(f"--{n}" for n in missing)
            )
        if extra:
            raise ConfigurationError(
                f"Model '{kind.value}' does not take " + ", ".join(f"--{n}" for n in extra)
            )
        return target(omega=omega, **{name: given[name] for name in target.rate_fields})

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> 'ModelParams':
        """Build from a mapping such as a YAML curve entry."""
        data = dict(data)
        model = data.pop("model", None)
        if model is None:
            raise ConfigurationError("Model entry is missing the 'model' key")
        known = {"gamma2", "gamma", "gamma0", "omega"}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"Unknown model keys: {sorted(unknown)}")
        return cls.from_flags(str(model), **{k: float(v) for k, v in data.items()})


@dataclass(frozen=True, kw_only=True)
class MarkovianProjection(ModelParams):
    """Memoryless amplitude damping at rate gamma2."""
    gamma2: float

    kind: ClassVar[ModelKind] = ModelKind.MARKOVIAN
    rate_fields: ClassVar[Tuple[str, ...]] = ("gamma2",)


@dataclass(frozen=True, kw_only=True)
class CorrelatedProjection(ModelParams):
    """Correlated-projection model with equal band rates gamma1 = gamma2 = gamma."""
    gamma: float

    kind: ClassVar[ModelKind] = ModelKind.CORRELATED
    rate_fields: ClassVar[Tuple[str, ...]] = ("gamma",)


@dataclass(frozen=True, kw_only=True)
class _KernelModel(ModelParams):
    gamma0: float
    gamma: float

    rate_fields: ClassVar[Tuple[str, ...]] = ("gamma0", "gamma")
    positive_rates: ClassVar[Tuple[str, ...]] = ("gamma",)

    @property
    def ratio(self) -> float:
        """R = gamma0 / gamma"""
        return self.gamma0 / self.gamma


@dataclass(frozen=True, kw_only=True)
class MemoryKernel(_KernelModel):
    """Exponential memory kernel gamma e^{-gamma t} convolving the damping generator."""
    kind: ClassVar[ModelKind] = ModelKind.MEMORY


@dataclass(frozen=True, kw_only=True)
class PostMarkovian(_KernelModel):
    """Post-Markovian equation with the same exponential kernel."""
    kind: ClassVar[ModelKind] = ModelKind.POST


_MODEL_CLASSES = {
    ModelKind.MARKOVIAN: MarkovianProjection,
    ModelKind.CORRELATED: CorrelatedProjection,
    ModelKind.MEMORY: MemoryKernel,
    ModelKind.POST: PostMarkovian,
}
