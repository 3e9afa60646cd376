import math
import re
from typing import Any, Tuple

from ..exceptions import ConfigurationError, ValidationError

# e.g. "0.5pi", "pi", "-pi/6", "2pi/3", "1e-1 pi", or plain radians "1.047"
_ANGLE_PATTERN = re.compile(
    r'^(?P<coef>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi(?:\s*/\s*(?P<div>\d+\.?\d*|\.\d+))?$'
)
_SIGN_ONLY_PATTERN = re.compile(r'^(?P<sign>[+-])pi(?:/(?P<div>\d+\.?\d*))?$')
_OVERRIDE_PATTERN = re.compile(r'^(?P<name>[a-z][a-z0-9_]*)=(?P<value>.+)$')


# @agent:service-type utility
# @agent:scalability stateless
# @agent:persistence none
# @agent:priority critical
class InputValidator:
    """Parsing and validation of command-line inputs.

    Turns flag strings into checked numbers: angle literals with an optional
    ``pi`` factor, nonnegative rates and ``NAME=VALUE`` overrides.

    Architecture: Stateless utility class with static validation methods
    Failure Mode: Fail-fast ValidationError / ConfigurationError naming the bad input

    Example:
        >>> InputValidator.parse_angle("0.5pi")
        1.5707963267948966
        >>> InputValidator.parse_override("fig3_spread=0.2")
        ('fig3_spread', 0.2)
    """

    # @agent:complexity low
    # @agent:side-effects none
    @staticmethod
    def parse_angle(text: Any) -> float:
        """Parse an angle given in radians or as a multiple of pi.

        Accepted forms: ``1.2`` (radians), ``pi``, ``0.5pi``, ``0.5*pi``,
        ``pi/6``, ``2pi/3``, ``-pi/2``.

        Raises:
            ValidationError: unparseable or non-finite input
        """
        if isinstance(text, (int, float)):
            value = float(text)
        else:
            if text is None:
                raise ValidationError("Angle must be given")
            literal = str(text).strip().lower().replace(" ", "")
            if not literal:
                raise ValidationError("Angle must be a non-empty string")
            value = InputValidator._parse_literal(literal)
        if not math.isfinite(value):
            raise ValidationError(f"Angle must be finite, got {text!r}")
        return value

    @staticmethod
    def _parse_literal(literal: str) -> float:
        if "pi" not in literal:
            try:
                return float(literal)
            except ValueError:
                raise ValidationError(f"Invalid angle literal: {literal!r}")

        sign_only = _SIGN_ONLY_PATTERN.match(literal)
        if sign_only:
            coefficient = -1.0 if sign_only.group('sign') == '-' else 1.0
            divisor = sign_only.group('div')
        else:
            match = _ANGLE_PATTERN.match(literal)
            if not match:
                raise ValidationError(f"Invalid angle literal: {literal!r}")
            coefficient = float(match.group('coef')) if match.group('coef') else 1.0
            divisor = match.group('div')

        value = coefficient * math.pi
        if divisor is not None:
            denominator = float(divisor)
            if denominator == 0:
                raise ValidationError(f"Division by zero in angle literal: {literal!r}")
            value /= denominator
        return value

    @staticmethod
    def parse_theta(text: Any) -> float:
        """Polar angle in [0, pi]; a rounding overshoot of 1e-12 is clamped."""
        value = InputValidator.parse_angle(text)
        if value < -1e-12 or value > math.pi + 1e-12:
            raise ValidationError(f"theta must lie in [0, pi], got {text!r}")
        return min(max(value, 0.0), math.pi)

    @staticmethod
    def validate_rate(name: str, value: Any, strictly_positive: bool = False) -> float:
        try:
            rate = float(value)
        except (TypeError, ValueError):
            raise ValidationError(f"{name} must be a number, got {value!r}")
        if not math.isfinite(rate):
            raise ValidationError(f"{name} must be finite, got {value!r}")
        if rate < 0 or (strictly_positive and rate == 0):
            bound = "> 0" if strictly_positive else ">= 0"
            raise ValidationError(f"{name} must be {bound}, got {value!r}")
        return rate

    @staticmethod
    def parse_override(text: str) -> Tuple[str, float]:
        """Split a ``NAME=VALUE`` override into its name and float value."""
        match = _OVERRIDE_PATTERN.match(text.strip())
        if not match:
            raise ConfigurationError(f"Override must look like NAME=VALUE, got {text!r}")
        try:
            value = float(match.group('value'))
        except ValueError:
            raise ConfigurationError(f"Override value must be a number, got {text!r}")
        return match.group('name'), value
