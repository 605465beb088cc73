from dataclasses import dataclass

import numpy as np

from .base import frozen_array


@dataclass(frozen=True)
class KrawtchoukTable:
    """values[n, s] = K_n(s) for the normalized symmetric Krawtchouk family,
    weights[s] the binomial weights they are orthonormal against."""
    N: int
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", frozen_array(self.values))
        object.__setattr__(self, "weights", frozen_array(self.weights))

    @property
    def size(self) -> int:
        return self.N + 1

    def gram(self) -> np.ndarray:
        """sum_s w_s K_m(s) K_n(s); the identity for an orthonormal table."""
        return (self.values * self.weights) @ self.values.T
