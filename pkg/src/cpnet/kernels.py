"""Hot loops, compiled when the extension is built.

BACKEND is "cython" or "python".  Set CPNET_PURE_PYTHON=1 to force the
fallback.
"""
import os

from . import _kernels_py

if os.environ.get("CPNET_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

enumerate_groves = _impl.enumerate_groves
grove_partitions = _impl.grove_partitions
