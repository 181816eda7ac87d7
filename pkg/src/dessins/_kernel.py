"""Kernel selection: compiled extension if available, Python fallback otherwise.

Set DESSINS_PURE=1 to force the Python kernel (used by the benchmark and by
the kernel-equivalence tests).
"""

import os

if os.environ.get("DESSINS_PURE") == "1":
    from dessins import _pykernel as _impl

    BACKEND = "python"
else:
    try:
        from dessins import _ckernel as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        from dessins import _pykernel as _impl

        BACKEND = "python"

compose = _impl.compose
compose3 = _impl.compose3
inverse = _impl.inverse
power = _impl.power
sift = _impl.sift
extend_orbit = _impl.extend_orbit
process_pending = _impl.process_pending
