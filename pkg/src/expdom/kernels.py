"""Kernel selection: the compiled extension when built, else the Python fallback.

Set ``EXPDOM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("EXPDOM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _kernels_py

exchange_float = _impl.exchange_float
exchange_object = _impl.exchange_object
search_dominating = _impl.search_dominating
