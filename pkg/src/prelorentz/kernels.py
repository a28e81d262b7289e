"""Hot kernels, compiled when available.

The Cython extension ``prelorentz._kernels`` is used if it imports; otherwise
the pure-Python ``_kernels_py`` is used.  Set ``PRELORENTZ_PURE_PYTHON=1`` to
force the fallback.  ``BACKEND`` names the active implementation.
"""

import os

from . import _kernels_py

if os.environ.get("PRELORENTZ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

indep_counts = _impl.indep_counts
charpoly = _impl.charpoly
sign_changes = _impl.sign_changes
positive_root_count = _impl.positive_root_count
hessian_at = _impl.hessian_at
sweep_hessians = _impl.sweep_hessians

__all__ = [
    "BACKEND",
    "indep_counts",
    "charpoly",
    "sign_changes",
    "positive_root_count",
    "hessian_at",
    "sweep_hessians",
]
