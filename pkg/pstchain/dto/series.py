from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from ..vo.state import AmplitudeVector


class FidelitySeries(BaseModel):
    """Transfer fidelity |<N|U(t)|0>|^2 and endpoint probability on a time grid."""
    times: List[float]
    fidelity: List[float]
    endpoint_prob: List[float]

    @model_validator(mode="after")
    def check_lengths(self) -> "FidelitySeries":
        if not (len(self.times) == len(self.fidelity) == len(self.endpoint_prob)):
            raise ValueError("times, fidelity and endpoint_prob must have equal length")
        return self

    def max_fidelity(self) -> float:
        return max(self.fidelity) if self.fidelity else 0.0

    def argmax_time(self) -> float:
        return self.times[int(np.argmax(self.fidelity))]


class AmplitudeOut(BaseModel):
    t: float
    source: int
    amps: List[Tuple[float, float]]

    @classmethod
    def from_vector(cls, vector: AmplitudeVector) -> "AmplitudeOut":
        return cls(
            t=vector.t,
            source=vector.source,
            amps=[(float(a.real), float(a.imag)) for a in vector.amps],
        )

    def to_vector(self) -> AmplitudeVector:
        return AmplitudeVector(
            t=self.t, source=self.source, amps=[complex(re, im) for re, im in self.amps]
        )
