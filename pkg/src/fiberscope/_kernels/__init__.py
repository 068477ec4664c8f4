"""Hot kernels for order-complex homology.

The compiled extension is used when it imports cleanly; otherwise the
pure-Python fallback is selected.  Setting ``FIBERSCOPE_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("FIBERSCOPE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # noqa: F811
        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback

chains_from_below = _impl.chains_from_below
boundary_ranks = _impl.boundary_ranks

__all__ = ["BACKEND", "chains_from_below", "boundary_ranks", "_fallback"]
