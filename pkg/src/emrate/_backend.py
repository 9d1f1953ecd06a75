"""Ladder-kernel backend selection.

The compiled extension (``emrate._kernels``) is preferred when it was
built; otherwise the pure-python twin is used.  ``EMRATE_BACKEND`` forces
the choice: ``compiled`` (or ``cy``/``ext``) and ``python`` (or ``py``/
``pure``); anything else, including ``auto``, keeps the default.
"""

from __future__ import annotations

import os

_choice = os.environ.get("EMRATE_BACKEND", "auto").strip().lower()

if _choice in ("py", "python", "pure"):
    from . import _kernels_py as _impl

    BACKEND = "python"
elif _choice in ("cy", "compiled", "ext"):
    from . import _kernels as _impl  # type: ignore[no-redef]

    BACKEND = "compiled"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

jn_ladder = _impl.jn_ladder
h1n_ladder = _impl.h1n_ladder
IM_Z_LIMIT = _impl.IM_Z_LIMIT
LMAX_LIMIT = _impl.LMAX_LIMIT
