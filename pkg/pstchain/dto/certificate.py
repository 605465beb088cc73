from typing import Optional

from pydantic import BaseModel

from ..common.enums import Obstruction, Regime, ThetaClass
from .chain import Rational


class PSTCertificate(BaseModel):
    """Integer witness (xi, eta) that the PST phase conditions hold.

    xi, eta are simultaneously integers or half-integers. T_over_pi is the
    exact value of T/pi when the energy scale was given exactly.
    """
    regime: Regime
    N: int
    ratio: Optional[Rational] = None
    xi: Rational
    eta: Rational
    multiplier: int = 1
    T: float
    T_over_pi: Optional[Rational] = None
    parity_note: str


class FRCertificate(BaseModel):
    """Integer witness (xi0, eta0) for revival at the two chain ends.

    xi1 = xi0 and eta1 = eta0 + xi0 are implied. theta_over_pi is the signed
    representative of theta/pi in (-1/2, 1/2] obtained with the integer
    delta_zeta = zeta0 - zeta1.
    """
    regime: Regime
    N: int
    ratio: Optional[Rational] = None
    xi0: int
    eta0: int
    delta_zeta: int
    multiplier: int = 1
    tau: float
    tau_over_pi: Optional[Rational] = None
    theta_class: ThetaClass
    theta_over_pi: Rational
    predicted_rel_phase: Optional[float] = None
    note: Optional[str] = None

    @property
    def xi1(self) -> int:
        return self.xi0

    @property
    def eta1(self) -> int:
        return self.eta0 + self.xi0


class Refusal(BaseModel):
    """Why a predictor returned no certificate."""
    kind: str
    N: int
    ratio: Optional[Rational] = None
    regime: Regime
    reason: Obstruction
    message: str
