"""Hot inner loops with two interchangeable backends.

The numba backend is used when numba imports cleanly. Setting the
environment variable ``DIRACHAM_BACKEND=numpy`` before import forces the
pure-numpy path; ``DIRACHAM_BACKEND=numba`` makes a missing numba an error.
Both backends return identical results; :mod:`benchmarks` compares speed.
"""
import logging
import os

from . import _numpy

logger = logging.getLogger(__name__)

_requested = os.environ.get("DIRACHAM_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ImportError(f"DIRACHAM_BACKEND must be auto, numba or numpy, not {_requested!r}")

_impl = _numpy
BACKEND = "numpy"
if _requested in ("auto", "numba"):
    try:
        from . import _numba as _impl  # noqa: F811
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        logger.warning("numba unavailable; using the numpy kernels")

closure_sweep = _impl.closure_sweep
lift_rotations = _impl.lift_rotations
held_karp_table = _impl.held_karp_table
ie_signed_walks = _impl.ie_signed_walks
min_path_cover_table = _impl.min_path_cover_table
color_coding_trials = _impl.color_coding_trials
color_coding_table = _impl.color_coding_table

INF8 = _numpy.INF8
INF16 = _numpy.INF16


def implementation(name: str):
    """Return the kernel module for ``name`` ("numba" or "numpy") regardless of the env flag."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba
        return _numba
    raise ValueError(name)
