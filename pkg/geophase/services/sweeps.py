from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..exceptions import ConfigurationError
from ..models.results import PhaseResult, SweepSpec
from ..utils.csv_output import format_value, phase_row
from ..utils.logging_config import LoggerFactory
from .phase import phase_closed

logger = LoggerFactory.create_logger(__name__)


@dataclass(frozen=True)
class SweepRow:
    theta: float
    result: PhaseResult


# @agent:service-type computation
# @agent:scalability thread_pool
# @agent:complexity low
def run_sweep(spec: SweepSpec, threads: int = 1) -> List[SweepRow]:
    """Evaluate the closed-form phase at every theta of the sweep.

    Rows are independent; with ``threads > 1`` they run on a thread pool and
    come back in ascending theta regardless of completion order.

    Args:
        spec: model, theta grid, quadrature steps and periods
        threads: worker count (1 runs inline)

    Returns:
        one SweepRow per grid point, in grid order
    """
    if threads < 1:
        raise ConfigurationError(f"threads must be >= 1, got {threads}")

    thetas = [float(t) for t in spec.thetas]
    quadrature = spec.quadrature

    def evaluate(theta: float) -> SweepRow:
        return SweepRow(theta=theta, result=phase_closed(spec.model, theta, quadrature, spec.periods))

    logger.info("Sweep started", model=spec.model.label, points=len(thetas), threads=threads)
    if threads == 1:
        rows = [evaluate(theta) for theta in thetas]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, thetas))
    logger.info("Sweep finished", model=spec.model.label, points=len(rows))
    return rows


def sweep_table(spec: SweepSpec, rows: Sequence[SweepRow]) -> List[List[str]]:
    return [phase_row(spec.model, row.theta, row.result) for row in rows]


def figure_table(curve_names: Sequence[str], sweeps: Sequence[Sequence[SweepRow]]) -> List[List[str]]:
    """Wide rows: theta followed by (principal, unwrapped, visibility) per curve."""
    if len(curve_names) != len(sweeps):
        raise ConfigurationError("Every curve needs exactly one sweep")
    lengths = {len(rows) for rows in sweeps}
    if len(lengths) != 1:
        raise ConfigurationError("Figure curves must share the theta grid")

    table = []
    for index in range(lengths.pop()):
        theta = sweeps[0][index].theta
        line = [format_value(theta / np.pi)]
        for rows in sweeps:
            result = rows[index].result
            line.extend([
                format_value(result.principal_over_pi),
                format_value(result.unwrapped_over_pi),
                format_value(result.visibility),
            ])
        table.append(line)
    return table


def principal_column(rows: Sequence[SweepRow]) -> np.ndarray:
    """Principal phases of a sweep in units of pi."""
    return np.array([row.result.principal_over_pi for row in rows])
