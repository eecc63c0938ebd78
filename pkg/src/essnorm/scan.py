"""Backend dispatch for the grid-scan inner loops.

Importing this module selects the compiled Cython core when it was built and
falls back to the numpy implementation otherwise; ``BACKEND`` records the
choice.  Both backends implement the same functions with identical
candidate-ordering semantics.
"""

from __future__ import annotations

import numpy as np

try:
    from . import _scan as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build host
    from . import _scan_py as _impl

    BACKEND = "python"

min_abs_on_points = _impl.min_abs_on_points
max_abs_on_points = _impl.max_abs_on_points
subdisk_maximin = _impl.subdisk_maximin


def poly_arrays(bucket: dict[tuple[int, int], complex]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flatten an exponent->coefficient map into scan-ready arrays.

    Keys are (power of the variable, power of its conjugate); ordering is
    lexicographic so repeated runs scan terms identically.
    """
    keys = sorted(k for k, v in bucket.items() if v != 0)
    coeffs = np.array([bucket[k] for k in keys], dtype=np.complex128)
    za = np.array([k[0] for k in keys], dtype=np.int64)
    zb = np.array([k[1] for k in keys], dtype=np.int64)
    return coeffs, za, zb
