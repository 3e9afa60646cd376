import csv
import math
import io
import sys
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from ..exceptions import OutputError
from ..models.params import ModelParams
from ..models.results import PhaseResult

PHASE_COLUMNS = (
    "model",
    "params",
    "theta_over_pi",
    "gp_principal_over_pi",
    "gp_unwrapped_over_pi",
    "visibility",
)


def format_value(value: float) -> str:
    """12 significant digits; -0 is written as 0."""
    number = float(value)
    if number == 0.0:
        number = 0.0
    return format(number, '.12g')


def phase_row(model: ModelParams, theta: float, result: PhaseResult) -> List[str]:
    return [
        model.kind.value,
        model.params_string(),
        format_value(theta / math.pi),
        format_value(result.principal_over_pi),
        format_value(result.unwrapped_over_pi),
        format_value(result.visibility),
    ]


def figure_header(curves: Sequence[str]) -> List[str]:
    header = ["theta_over_pi"]
    for name in curves:
        header.extend([f"{name}_principal_over_pi", f"{name}_unwrapped_over_pi", f"{name}_visibility"])
    return header


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_csv(destination: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    """Write CSV to a file, or to stdout when ``destination`` is '-'.

    Raises:
        OutputError: the file cannot be written
    """
    text = render_csv(header, rows)
    if str(destination) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(destination, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as exc:
        raise OutputError(f"Cannot write {destination}: {exc}") from exc
