from dataclasses import dataclass
from typing import Optional

import numpy as np

from .base import frozen_array


@dataclass(frozen=True)
class AmplitudeVector:
    """amps[k] = <k| exp(-iHt) |source>."""
    t: float
    amps: np.ndarray
    source: int

    def __post_init__(self):
        object.__setattr__(self, "amps", frozen_array(self.amps, dtype=complex))

    @property
    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True)
class EndpointState:
    """exp(-iHt)|0> projected on the chain ends: mu|0> + nu|N> + leakage."""
    t: float
    mu: complex
    nu: complex
    leakage: float
    theta: float
    phi: float
    rel_phase: Optional[float] = None

    @property
    def endpoint_prob(self) -> float:
        return abs(self.mu) ** 2 + abs(self.nu) ** 2

    def is_localized(self, tol: float) -> bool:
        return self.leakage < tol
