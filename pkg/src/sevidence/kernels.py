"""Selects the compiled kernels when available, else the pure-Python fallback.

Set ``SEVIDENCE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SEVIDENCE_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
OP_BOT, OP_IMP, OP_BOX = _kernels_py.OP_BOT, _kernels_py.OP_IMP, _kernels_py.OP_BOX
taut_check = _impl.taut_check
kripke_first_failure = _impl.kripke_first_failure
