"""Backend selection for the search kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twin is used.  Set ``ROTABRACE_PURE_PYTHON=1`` to force the fallback.
"""

import importlib
import os

from . import _pykernels

NAMES = (
    "associativity_witness",
    "rb_witness",
    "enumerate_rb",
    "enumerate_homs",
    "braid_witness",
    "find_conjugating_bijection",
)


def _load_compiled():
    if os.environ.get("ROTABRACE_PURE_PYTHON", "") not in ("", "0"):
        return None
    try:
        return importlib.import_module("rotabrace._ckernels")
    except ImportError:
        return None


_compiled = _load_compiled()
_active = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"

associativity_witness = _active.associativity_witness
rb_witness = _active.rb_witness
enumerate_rb = _active.enumerate_rb
enumerate_homs = _active.enumerate_homs
braid_witness = _active.braid_witness
find_conjugating_bijection = _active.find_conjugating_bijection


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        out["cython"] = importlib.import_module("rotabrace._ckernels")
    except ImportError:
        pass
    return out
