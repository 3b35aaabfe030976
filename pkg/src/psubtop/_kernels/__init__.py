"""Hot-loop kernels: compiled extension when available, numpy fallback otherwise.

Set ``PSUBTOP_PURE=1`` in the environment to force the pure backend.
"""

import os

from . import pure
from .pure import DOWN, UP, POLICY_FIRST, POLICY_LAST

impl = pure
BACKEND = "pure"
if not os.environ.get("PSUBTOP_PURE"):
    try:
        from . import _speedups

        impl = _speedups
        BACKEND = "compiled"
    except ImportError:
        pass

mul_closure = impl.mul_closure
strict_subset_matrix = impl.strict_subset_matrix
core_reduce = impl.core_reduce


def backends():
    """Importable backends by name, for equivalence tests and benchmarks."""
    found = {"pure": pure}
    try:
        from . import _speedups as compiled

        found["compiled"] = compiled
    except ImportError:
        pass
    return found
