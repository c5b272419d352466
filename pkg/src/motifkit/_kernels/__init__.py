"""Hot mask-sweep kernels with a compiled core and a numpy fallback.

The compiled extension (_fast, built from _fast.pyx) is preferred; when it
is missing or fails to import, the numpy implementations in _slow take over
with identical contracts.  `BACKEND` reports which one is active.
"""

try:
    from ._fast import (  # type: ignore[attr-defined]
        BACKEND,
        orbit_min_labels,
        popcount_signed_sum,
        subset_sign_transform,
    )
except ImportError:
    from ._slow import (
        BACKEND,
        orbit_min_labels,
        popcount_signed_sum,
        subset_sign_transform,
    )

__all__ = [
    "BACKEND",
    "orbit_min_labels",
    "popcount_signed_sum",
    "subset_sign_transform",
]
