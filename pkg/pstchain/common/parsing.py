"""Parsing and formatting of the symbolic quantities accepted on the command line.

Times may be written as rational multiples of pi ("pi", "pi/2", "3pi/4",
"2*pi", "0.5pi") or as plain decimals. Coefficients alpha and beta may be exact
rationals ("1", "3/2") or decimals ("0.75", "1.618").
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exceptions import UsageError

_PI_TIME = re.compile(
    r"^\s*(?P<coef>\d+(?:\.\d+)?(?:/\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?:(?P<den>\d+)))?\s*$"
)
_EXACT = re.compile(r"^\s*(?P<num>\d+)\s*(?:/\s*(?P<den>\d+))?\s*$")

Coefficient = Union[Fraction, float]


@dataclass(frozen=True)
class TimeValue:
    value: float
    over_pi: Optional[Fraction] = None

    def __str__(self) -> str:
        if self.over_pi is not None:
            return format_pi_multiple(self.over_pi)
        return repr(self.value)


def parse_time(text: Union[str, float, int]) -> TimeValue:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        if text < 0:
            raise UsageError(f"time must be nonnegative, got {text}")
        return TimeValue(float(text))
    raw = str(text).strip().lower()
    match = _PI_TIME.match(raw)
    if match:
        coef = Fraction(match.group("coef")) if match.group("coef") else Fraction(1)
        if match.group("den"):
            den = int(match.group("den"))
            if den == 0:
                raise UsageError(f"division by zero in time {text!r}")
            coef /= den
        return TimeValue(float(coef) * math.pi, coef)
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"cannot parse time {text!r}")
    if value < 0 or not math.isfinite(value):
        raise UsageError(f"time must be finite and nonnegative, got {text!r}")
    return TimeValue(value)


def parse_coefficient(text: Union[str, float, int, Fraction]) -> Coefficient:
    """Exact strings ("2", "1/3") become Fractions, decimals stay floats."""
    if isinstance(text, Fraction):
        value: Coefficient = text
    elif isinstance(text, int) and not isinstance(text, bool):
        value = Fraction(text)
    elif isinstance(text, float):
        value = text
    else:
        raw = str(text).strip()
        match = _EXACT.match(raw)
        if match:
            den = int(match.group("den") or 1)
            if den == 0:
                raise UsageError(f"zero denominator in {text!r}")
            value = Fraction(int(match.group("num")), den)
        else:
            try:
                value = float(raw)
            except ValueError:
                raise UsageError(f"cannot parse coefficient {text!r}")
    if value < 0 or not math.isfinite(float(value)):
        raise UsageError(f"coefficients must be finite and nonnegative, got {text!r}")
    return value


def format_pi_multiple(coef: Fraction) -> str:
    if coef == 0:
        return "0"
    num = "" if coef.numerator == 1 else str(coef.numerator)
    if coef.denominator == 1:
        return f"{num}pi"
    return f"{num}pi/{coef.denominator}"
