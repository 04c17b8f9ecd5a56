"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred when importable; set the environment
variable ``CONEFILT_PURE_KERNELS=1`` to force the pure-Python backend
(used by the benchmark and the backend-equivalence tests).  Both backends
produce bit-identical results.
"""

from __future__ import annotations

import os

if os.environ.get("CONEFILT_PURE_KERNELS"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

dot_int = _impl.dot_int
matvec_int = _impl.matvec_int
scan_entering = _impl.scan_entering
pivot_update = _impl.pivot_update
ffgj = _impl.ffgj

__all__ = [
    "BACKEND",
    "dot_int",
    "matvec_int",
    "scan_entering",
    "pivot_update",
    "ffgj",
]
