import math
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..common.enums import Regime
from ..vo.band import BandMatrix

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


class Rational(BaseModel):
    """Exact rational num/den, reduced, den >= 1, 64-bit components."""
    model_config = ConfigDict(frozen=True)

    num: int = Field(ge=INT64_MIN, le=INT64_MAX)
    den: int = Field(default=1, ge=1, le=INT64_MAX)

    @model_validator(mode="after")
    def check_reduced(self) -> "Rational":
        if math.gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not in lowest terms")
        return self

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Rational":
        return cls(num=value.numerator, den=value.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"


class ChainSpec(BaseModel):
    """Krawtchouk chain of N+1 sites driven by Q_2(J) = alpha*J^2 + beta*J.

    ``ratio`` optionally pins alpha/beta to an exact rational; it is only
    meaningful for beta > 0 (beta = 0 is the pure-quadratic regime).
    """
    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1)
    beta: float = Field(ge=0)
    alpha: float = Field(default=0.0, ge=0)
    ratio: Optional[Rational] = None

    @field_validator("alpha", "beta")
    @classmethod
    def check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("coupling strengths must be finite")
        return value

    @model_validator(mode="after")
    def check_consistency(self) -> "ChainSpec":
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("alpha and beta cannot both vanish")
        if self.ratio is not None:
            if self.beta == 0:
                raise ValueError("an exact ratio alpha/beta needs beta > 0")
            if self.ratio.num < 0:
                raise ValueError("alpha/beta must be nonnegative")
            if abs(self.alpha / self.beta - float(self.ratio.as_fraction())) >= 1e-12:
                raise ValueError(
                    f"ratio {self.ratio} does not match alpha/beta = {self.alpha / self.beta!r}"
                )
        return self

    @property
    def regime(self) -> Regime:
        if self.beta == 0:
            return Regime.PURE_QUADRATIC
        if self.alpha == 0:
            return Regime.NEAREST_NEIGHBOUR
        return Regime.MIXED

    @property
    def q_coeffs(self) -> Tuple[float, float]:
        return self.alpha, self.beta


class BandMatrixOut(BaseModel):
    """JSON form of a BandMatrix."""
    n_sites: int
    bandwidth: int
    diag: List[float]
    band1: List[float]
    band2: List[float] = Field(default_factory=list)
    higher_bands: List[List[float]] = Field(default_factory=list)

    @classmethod
    def from_band(cls, band: BandMatrix) -> "BandMatrixOut":
        return cls(
            n_sites=band.size,
            bandwidth=band.bandwidth,
            diag=band.diag.tolist(),
            band1=band.band(1).tolist(),
            band2=band.band(2).tolist(),
            higher_bands=[band.band(k).tolist() for k in range(3, band.bandwidth + 1)],
        )

    def to_band(self) -> BandMatrix:
        bands = [self.band1]
        if self.bandwidth >= 2:
            bands.append(self.band2)
        bands.extend(self.higher_bands)
        return BandMatrix(diag=self.diag, bands=tuple(bands))
