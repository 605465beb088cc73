from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .base import frozen_array
from ..common.exceptions import InvalidParameterError


@dataclass(frozen=True)
class BandMatrix:
    """Real symmetric band matrix on the one-excitation sites 0..N.

    Only the diagonal and the upper bands are stored. ``bands[k-1][i]`` is the
    coupling J^(k)_{i+k} between sites i and i+k, so band k has N+1-k entries.
    """
    diag: np.ndarray
    bands: Tuple[np.ndarray, ...]

    def __post_init__(self):
        diag = frozen_array(self.diag)
        size = diag.shape[0]
        if size < 2:
            raise InvalidParameterError("a chain needs at least two sites")
        bands = tuple(frozen_array(band) for band in self.bands)
        if not bands:
            raise InvalidParameterError("bandwidth must be at least 1")
        for k, band in enumerate(bands, start=1):
            if band.shape != (max(size - k, 0),):
                raise InvalidParameterError(
                    f"band {k} must hold {size - k} couplings, got {band.shape[0]}"
                )
            if np.any(band < 0):
                raise InvalidParameterError(f"band {k} has negative couplings")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "bands", bands)

    @property
    def size(self) -> int:
        return self.diag.shape[0]

    @property
    def N(self) -> int:
        return self.size - 1

    @property
    def bandwidth(self) -> int:
        return len(self.bands)

    def band(self, k: int) -> np.ndarray:
        """Couplings of band k, or an empty array beyond the bandwidth."""
        if k < 1:
            raise InvalidParameterError(f"band index must be >= 1, got {k}")
        if k > self.bandwidth:
            return np.zeros(0)
        return self.bands[k - 1]

    def to_dense(self) -> np.ndarray:
        dense = np.diag(np.asarray(self.diag, dtype=float))
        for k, band in enumerate(self.bands, start=1):
            if band.size:
                dense += np.diag(band, k) + np.diag(band, -k)
        return dense

    def with_diag(self, diag) -> "BandMatrix":
        return BandMatrix(diag=diag, bands=self.bands)

    def scaled(self, factor: float) -> "BandMatrix":
        return BandMatrix(diag=self.diag * factor, bands=tuple(b * factor for b in self.bands))

    @classmethod
    def from_dense(cls, dense: np.ndarray, bandwidth: int, tol: float = 1e-12) -> "BandMatrix":
        """Read the band structure off a dense symmetric matrix; anything
        outside the requested bandwidth must vanish within ``tol``."""
        dense = np.asarray(dense, dtype=float)
        size = dense.shape[0]
        if dense.shape != (size, size) or not np.allclose(dense, dense.T, atol=tol, rtol=0):
            raise InvalidParameterError("dense matrix must be square and symmetric")
        outside = np.triu(dense, bandwidth + 1)
        if np.max(np.abs(outside), initial=0.0) > tol:
            raise InvalidParameterError(f"matrix has entries beyond bandwidth {bandwidth}")
        bands = []
        for k in range(1, bandwidth + 1):
            band = np.diag(dense, k).copy()
            # clip float dust so nonnegativity holds for exactly-zero couplings
            band[np.abs(band) <= tol] = 0.0
            bands.append(band)
        return cls(diag=np.diag(dense).copy(), bands=tuple(bands))
