"""Backend selection for the hot loops.

The compiled extension ``_kernels`` is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used. Setting the environment variable
``TOEPLITZ_SPURIOUS_PURE=1`` forces the fallback.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("TOEPLITZ_SPURIOUS_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


class ConvergenceError(RuntimeError):
    """The tridiagonal QL iteration hit its sweep cap."""


def available_backends():
    return ["cython", "python"] if _compiled is not None else ["python"]


def _module(backend):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def series_partial_sums(n, tail, phases, backend=None):
    """Residual matrix of the unimodular symbol, summed over ``|m|`` up to ``tail`` past the section."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _module(backend).series_partial_sums(int(n), int(tail), np.asarray(phases, dtype=np.complex128))


def tridiagonal_eigenvalues(diag, offdiag, max_sweeps=50, backend=None):
    """Ascending eigenvalues of the real symmetric tridiagonal matrix (diag, offdiag).

    Raises ConvergenceError if any eigenvalue needs more than ``max_sweeps``
    QL sweeps.
    """
    diag = np.asarray(diag, dtype=np.float64)
    offdiag = np.asarray(offdiag, dtype=np.float64)
    if len(offdiag) < max(len(diag) - 1, 0):
        raise ValueError("offdiag must have len(diag) - 1 entries")
    # absolute deflation floor: without it clusters of near-zero eigenvalues never split
    scale = np.max(np.abs(diag), initial=0.0) + 2.0 * np.max(np.abs(offdiag), initial=0.0)
    abstol = np.finfo(float).eps * scale
    values, failed = _module(backend).tridiagonal_ql(diag, offdiag, int(max_sweeps), float(abstol))
    if failed >= 0:
        raise ConvergenceError(f"QL iteration did not converge for eigenvalue {failed} within {max_sweeps} sweeps")
    return np.asarray(values)
