from dataclasses import dataclass

import numpy as np

from .base import frozen_array


@dataclass(frozen=True)
class SpectralData:
    """Eigen-decomposition of a one-excitation Hamiltonian or of J itself.

    eigenvectors[s, n] is the coefficient of |n> in |x_s>, so the rows are
    eigenvectors and ``eigenvectors @ eigenvectors.T`` is the identity.
    weights[s] = eigenvectors[s, 0]**2 and parities[s] is the reflection
    eigenvalue of |x_s> (+1 or -1; 0 when undetermined).
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    weights: np.ndarray
    parities: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", frozen_array(self.eigenvalues))
        object.__setattr__(self, "eigenvectors", frozen_array(self.eigenvectors))
        object.__setattr__(self, "weights", frozen_array(self.weights))
        object.__setattr__(self, "parities", frozen_array(self.parities, dtype=int))

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def N(self) -> int:
        return self.size - 1

    def orthogonality_defect(self) -> float:
        W = self.eigenvectors
        return float(np.max(np.abs(W @ W.T - np.eye(self.size))))


@dataclass(frozen=True)
class OrthoPolyTable:
    """chi[n, s] = chi_n(x_s) for the polynomials of a Jacobi matrix."""
    eigenvalues: np.ndarray
    chi: np.ndarray
    sqrt_hN: float
    char_deriv: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", frozen_array(self.eigenvalues))
        object.__setattr__(self, "chi", frozen_array(self.chi))
        object.__setattr__(self, "char_deriv", frozen_array(self.char_deriv))

    @property
    def N(self) -> int:
        return self.chi.shape[0] - 1
