"""Rewrite-kernel backend selection.

The compiled kernel is used when it was built; otherwise the pure-Python
one.  Setting ``LJC_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernel

BACKEND = "python"
reducts = _pykernel.reducts

if not os.environ.get("LJC_PURE_PYTHON"):
    try:
        from . import _ckernel
    except ImportError:
        _ckernel = None
    else:
        BACKEND = "cython"
        reducts = _ckernel.reducts
else:
    _ckernel = None


def backends() -> dict:
    """Every importable kernel by name."""
    out = {"python": _pykernel.reducts}
    try:
        from . import _ckernel as ck
    except ImportError:
        pass
    else:
        out["cython"] = ck.reducts
    return out
