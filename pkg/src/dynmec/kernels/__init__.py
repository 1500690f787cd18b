"""Dense-evaluation kernels used by the brute-force oracles.

The compiled extension is used when it was built; otherwise, or when
``DYNMEC_PURE_PYTHON`` is set to a non-empty value, the numpy versions are
used.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

_FORCE_PURE = bool(os.environ.get("DYNMEC_PURE_PYTHON"))

try:
    if _FORCE_PURE:
        raise ImportError
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

max_distances = _impl.max_distances
objective_values = _impl.objective_values
grid_max = _impl.grid_max
rigid_scan = _impl.rigid_scan


def backends() -> dict:
    """All importable kernel modules keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
