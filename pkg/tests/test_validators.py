import math

import pytest

from geophase.exceptions import ConfigurationError, ValidationError
from geophase.utils.validators import InputValidator


class TestParseAngle:
    @pytest.mark.parametrize("text, expected", [
        ("1.2", 1.2),
        ("pi", math.pi),
        ("0.5pi", 0.5 * math.pi),
        ("0.5*pi", 0.5 * math.pi),
        ("0.5 pi", 0.5 * math.pi),
        ("pi/6", math.pi / 6),
        ("2pi/3", 2 * math.pi / 3),
        ("-pi/2", -math.pi / 2),
        ("1e-1pi", 0.1 * math.pi),
        ("0.333333pi", 0.333333 * math.pi),
        (0.25, 0.25),
    ])
    def test_accepted(self, text, expected):
        assert InputValidator.parse_angle(text) == pytest.approx(expected)

    @pytest.mark.parametrize("text", ["", "abc", "pie", "pi/0", "nan", "inf", None, "0.5pi/"])
    def test_rejected(self, text):
        with pytest.raises(ValidationError):
            InputValidator.parse_angle(text)


class TestParseTheta:
    def test_clamps_rounding(self):
        assert InputValidator.parse_theta(math.pi + 1e-13) == math.pi
        assert InputValidator.parse_theta("0") == 0.0

    @pytest.mark.parametrize("text", ["1.1pi", "-0.1", "4"])
    def test_range(self, text):
        with pytest.raises(ValidationError, match=r"\[0, pi\]"):
            InputValidator.parse_theta(text)


class TestValidateRate:
    def test_values(self):
        assert InputValidator.validate_rate("gamma", "0.5") == 0.5
        assert InputValidator.validate_rate("gamma", 0) == 0.0

    @pytest.mark.parametrize("value, strict", [(-1.0, False), (0.0, True), ("x", False), (float("inf"), False)])
    def test_rejected(self, value, strict):
        with pytest.raises(ValidationError, match="gamma"):
            InputValidator.validate_rate("gamma", value, strictly_positive=strict)


class TestParseOverride:
    def test_split(self):
        assert InputValidator.parse_override("fig3_spread=0.2") == ("fig3_spread", 0.2)
        assert InputValidator.parse_override(" path_agreement=1e-5 ") == ("path_agreement", 1e-5)

    @pytest.mark.parametrize("text", ["fig3_spread", "=0.2", "fig3_spread=abc", "Fig3=1"])
    def test_malformed(self, text):
        with pytest.raises(ConfigurationError):
            InputValidator.parse_override(text)
