"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``QSPECIES_PURE_PYTHON`` is set to a non-empty value,
the pure-Python reference kernels are used.  ``BACKEND`` names the choice.
"""
import os

from . import _kernels_py

if os.environ.get("QSPECIES_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

graded_mul = _impl.graded_mul
word_mul = _impl.word_mul
perfect_matchings = _impl.perfect_matchings
set_partitions = _impl.set_partitions
inversions = _impl.inversions

__all__ = [
    "BACKEND",
    "graded_mul",
    "word_mul",
    "perfect_matchings",
    "set_partitions",
    "inversions",
]
