"""Discrepancy sweep backends.

The compiled extension is preferred when it built; setting the environment
variable RB_QMC_DISABLE_EXT (to anything non-empty) forces the numpy
fallback, which implements the identical contract.  ``BACKEND`` records
which one is live.
"""

import os

if os.environ.get("RB_QMC_DISABLE_EXT"):
    from .fallback import corner_max_2d

    BACKEND = "fallback"
else:
    try:
        from ._disc2d import corner_max_2d

        BACKEND = "compiled"
    except ImportError:
        from .fallback import corner_max_2d

        BACKEND = "fallback"

__all__ = ["corner_max_2d", "BACKEND"]
