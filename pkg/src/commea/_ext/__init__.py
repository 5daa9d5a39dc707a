"""Kernel backend selection.

The compiled module ``_ckernels`` is used when it was built; otherwise the
numpy fallback ``_pykernels`` is loaded. Setting ``COMMEA_PURE_PYTHON=1``
forces the fallback. Both backends produce bit-identical results.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

if os.environ.get("COMMEA_PURE_PYTHON", "") not in ("", "0") or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

kernels = BACKENDS[BACKEND]

__all__ = ["BACKEND", "BACKENDS", "kernels"]
