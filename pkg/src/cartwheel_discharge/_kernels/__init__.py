"""Kernel selection: compiled extension when available, else pure Python.

Set CARTWHEEL_KERNEL=py to force the fallback, CARTWHEEL_KERNEL=c to
insist on the compiled extension (ImportError if it was not built).
"""

from __future__ import annotations

import os

_choice = os.environ.get("CARTWHEEL_KERNEL", "").strip().lower()

if _choice in ("py", "python"):
    from . import _py as _impl

    KERNEL = "python"
elif _choice in ("c", "compiled"):
    from . import _speed as _impl  # type: ignore[attr-defined]

    KERNEL = "compiled"
else:
    try:
        from . import _speed as _impl  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:
        from . import _py as _impl

        KERNEL = "python"

outlet_enforced = _impl.outlet_enforced
outlet_permitted = _impl.outlet_permitted
outlet_wedge = _impl.outlet_wedge
