"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used.  Set ``GHZLBC_BACKEND=python`` or ``=compiled`` to force a
choice (forcing ``compiled`` fails loudly if the extension is missing).
"""

import os

from . import _kernels_py

_choice = os.environ.get("GHZLBC_BACKEND", "").strip().lower()

if _choice == "python":
    _impl = _kernels_py
elif _choice == "compiled":
    from . import _kernels_cy as _impl
elif _choice == "":
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py
else:
    raise ValueError(f"GHZLBC_BACKEND must be 'python' or 'compiled', got {_choice!r}")

apply_kraus_single = _impl.apply_kraus_single
pair_singular_values = _impl.pair_singular_values


def backend_name() -> str:
    """Active kernel backend: ``'compiled'`` or ``'python'``."""
    return "python" if _impl is _kernels_py else "compiled"
