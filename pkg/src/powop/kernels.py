"""Backend selection for the hot coefficient kernels.

The compiled extension is used when it was built; ``POWOP_PURE_PYTHON=1``
forces the fallback.
"""

import os

from powop import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("POWOP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from powop import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

convolve_mod = _impl.convolve_mod
axpy_mod = _impl.axpy_mod


def backends():
    """Mapping of available backend name to kernel module."""
    found = {"python": _kernels_py}
    try:
        from powop import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
