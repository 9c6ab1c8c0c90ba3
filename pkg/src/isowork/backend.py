"""Kernel backend selection: compiled extension if available, numpy fallback.

Set ISOWORK_PURE_PYTHON=1 to force the fallback (useful for benchmarking and
for testing backend parity).
"""

import os

if os.environ.get("ISOWORK_PURE_PYTHON") == "1":
    from . import _tape_py as _impl
else:
    try:
        from . import _tape as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _tape_py as _impl

BACKEND = _impl.BACKEND_NAME
eval_batch = _impl.eval_batch
eval_dual_batch = _impl.eval_dual_batch
