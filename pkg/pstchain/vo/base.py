import numpy as np


def frozen_array(values, dtype=float) -> np.ndarray:
    """Copy into a read-only array so value objects stay immutable once built."""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array
