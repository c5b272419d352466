"""motifkit: exact k-vertex induced-subgraph counting via the homomorphism
basis, with gadget reductions and a hereditary-property classifier."""

from ._kernels import BACKEND as kernel_backend
from .errors import (
    CapacityError,
    InputError,
    InternalConsistencyError,
    MotifkitError,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "MotifkitError",
    "InputError",
    "CapacityError",
    "InternalConsistencyError",
    "__version__",
]
