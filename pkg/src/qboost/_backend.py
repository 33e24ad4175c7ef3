"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_kernels_py`` module. Setting ``QBOOST_PURE_PYTHON=1`` forces
the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("QBOOST_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = "cython" if kernels is not _kernels_py else "python"


def get_kernels(name=None):
    """Return the kernel module called ``name`` (``"cython"`` or ``"python"``)."""
    if name is None:
        return kernels
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
