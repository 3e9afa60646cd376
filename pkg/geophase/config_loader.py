"""
Loading of the packaged YAML data (figure datasets and validation defaults).
"""

from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Any, Dict, Iterable, List, Optional, Tuple

import yaml

from .exceptions import ConfigurationError
from .models.params import ModelParams
from .models.results import SweepSpec
from .utils.logging_config import LoggerFactory
from .utils.validators import InputValidator

logger = LoggerFactory.create_logger(__name__)

CONFIG_PACKAGE = "geophase.config"


def read_packaged_yaml(name: str) -> Dict[str, Any]:
    """Parse one YAML file shipped in geophase/config."""
    try:
        text = resources.files(CONFIG_PACKAGE).joinpath(name).read_text(encoding='utf-8')
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise ConfigurationError(f"Packaged config '{name}' not found") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"Packaged config '{name}' is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"Packaged config '{name}' must be a mapping")
    return data


@dataclass(frozen=True)
class FigureCurve:
    name: str
    model: ModelParams


# @agent:service-type data-model
# @agent:scalability stateless
# @agent:persistence file_system
@dataclass(frozen=True)
class FigureDataset:
    """One figure panel: a shared theta grid and several model curves.

    Attributes:
        name (str): file stem, e.g. ``fig3_top``
        curves (Tuple[FigureCurve, ...]): sweeps written side by side
        theta_start, theta_end (float): grid bounds in radians
        theta_count (int): number of grid points
        steps (int): quadrature steps per phase evaluation
    """

    name: str
    curves: Tuple[FigureCurve, ...]
    theta_start: float
    theta_end: float
    theta_count: int
    steps: int

    def sweep_spec(self, curve: FigureCurve) -> SweepSpec:
        return SweepSpec(
            model=curve.model,
            theta_start=self.theta_start,
            theta_end=self.theta_end,
            theta_count=self.theta_count,
            steps=self.steps,
        )

    def curve(self, name: str) -> FigureCurve:
        for item in self.curves:
            if item.name == name:
                return item
        raise ConfigurationError(f"Dataset {self.name} has no curve '{name}'")


def load_figure_datasets(data: Optional[Dict[str, Any]] = None) -> List[FigureDataset]:
    """Build the figure datasets from figures.yml (or an equivalent mapping)."""
    data = data if data is not None else read_packaged_yaml("figures.yml")
    try:
        omega = float(data.get('omega', 1.0))
        grid = data.get('theta_grid', {})
        theta_start = InputValidator.parse_theta(grid.get('start', '0.01pi'))
        theta_end = InputValidator.parse_theta(grid.get('end', '0.99pi'))
        theta_count = int(grid.get('count', 99))
        steps = int(data.get('steps', 2000))

        datasets = []
        for entry in data['datasets']:
            curves = []
            for curve in entry['curves']:
                spec = dict(curve)
                name = str(spec.pop('name'))
                spec.setdefault('omega', omega)
                curves.append(FigureCurve(name=name, model=ModelParams.from_dict(spec)))
            datasets.append(FigureDataset(
                name=str(entry['name']),
                curves=tuple(curves),
                theta_start=theta_start,
                theta_end=theta_end,
                theta_count=theta_count,
                steps=steps,
            ))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"Malformed figure configuration: {exc}") from exc

    logger.debug("Loaded figure datasets", count=len(datasets))
    return datasets


def find_dataset(datasets: Iterable[FigureDataset], name: str) -> FigureDataset:
    for dataset in datasets:
        if dataset.name == name:
            return dataset
    raise ConfigurationError(f"Unknown figure dataset '{name}'")


# @agent:service-type data-model
# @agent:complexity low
@dataclass(frozen=True)
class ValidationSettings:
    """Tolerances and grids of the validation suite.

    Tolerances can be overridden by name; grids are fixed.
    """

    tolerances: Dict[str, float] = field(default_factory=dict)
    grids: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_yaml(cls, data: Optional[Dict[str, Any]] = None) -> 'ValidationSettings':
        data = data if data is not None else read_packaged_yaml("validation.yml")
        try:
            tolerances = {str(k): float(v) for k, v in data['tolerances'].items()}
            grids = dict(data['grids'])
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ConfigurationError(f"Malformed validation configuration: {exc}") from exc
        return cls(tolerances=tolerances, grids=grids)

    def with_overrides(self, overrides: Iterable[str]) -> 'ValidationSettings':
        """Apply ``NAME=VALUE`` strings to the tolerances.

        Raises:
            ConfigurationError: malformed override or unknown tolerance name
        """
        tolerances = dict(self.tolerances)
        for text in overrides:
            name, value = InputValidator.parse_override(text)
            if name not in tolerances:
                raise ConfigurationError(
                    f"Unknown tolerance '{name}'; known: {', '.join(sorted(tolerances))}"
                )
            logger.info("Tolerance override", name=name, value=value)
            tolerances[name] = value
        return replace(self, tolerances=tolerances)

    def tolerance(self, name: str) -> float:
        try:
            return self.tolerances[name]
        except KeyError:
            raise ConfigurationError(f"Missing tolerance '{name}'")

    def grid(self, name: str) -> Any:
        try:
            return self.grids[name]
        except KeyError:
            raise ConfigurationError(f"Missing grid setting '{name}'")

    def angles(self, name: str) -> List[float]:
        return [InputValidator.parse_theta(v) for v in self.grid(name)]

    def numbers(self, name: str) -> List[float]:
        return [float(v) for v in self.grid(name)]

    def angle(self, name: str) -> float:
        return InputValidator.parse_theta(self.grid(name))
