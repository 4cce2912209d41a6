"""Backend selection for the evaluation kernels.

The compiled extension is used when it was built; otherwise, or when
``RELMOD_PURE_PYTHON`` is set to a non-empty value, the pure-Python module is
used. Both expose ``eval_matrix``, ``check_prefix`` and ``first_violation``.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not os.environ.get("RELMOD_PURE_PYTHON"):
    backend = _ckernels
    BACKEND = "cython"
else:
    backend = _pykernels
    BACKEND = "python"

eval_matrix = backend.eval_matrix
check_prefix = backend.check_prefix
first_violation = backend.first_violation


def available_backends() -> dict:
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
