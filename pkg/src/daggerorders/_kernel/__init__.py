"""Hot integer-matrix kernels with backend selection.

Set DAGGERORDERS_PURE_PYTHON=1 to force the pure-Python backend even when
the compiled extension is available.
"""

import os

if os.environ.get("DAGGERORDERS_PURE_PYTHON"):
    from ._hnf_py import hnf, kernel

    BACKEND = "python"
else:
    try:
        from ._hnf_c import hnf, kernel

        BACKEND = "c"
    except ImportError:
        from ._hnf_py import hnf, kernel

        BACKEND = "python"

__all__ = ["hnf", "kernel", "BACKEND"]
