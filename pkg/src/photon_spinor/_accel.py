"""Backend selection for the grid kernels.

The finite-difference kernels exist twice: a numba ``@njit`` version and a
pure-numpy version.  ``PHOTON_SPINOR_BACKEND`` picks one of them at import
time (``numba`` or ``numpy``); when unset, numba is used if it imports.
``PHOTON_SPINOR_THREADS`` caps the numba thread pool.
"""

from __future__ import annotations

import os

BACKEND_ENV = "PHOTON_SPINOR_BACKEND"
THREADS_ENV = "PHOTON_SPINOR_THREADS"

try:
    import numba

    HAVE_NUMBA = True
    # Prefer OpenMP / workqueue over TBB: an outdated system TBB only produces
    # a warning and is skipped anyway.  An explicit user choice wins.
    if "NUMBA_THREADING_LAYER" not in os.environ and "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def requested_backend() -> str:
    """Return the backend named by the environment, defaulting sensibly.

    Returns
    -------
    str
        ``"numba"`` or ``"numpy"``.  An explicit ``numba`` request falls back
        to ``numpy`` when numba is not importable.
    """
    value = os.environ.get(BACKEND_ENV, "").strip().lower()
    if value == "numpy":
        return "numpy"
    if value not in ("", "numba"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {value!r}")
    return "numba" if HAVE_NUMBA else "numpy"


def thread_cap() -> int | None:
    """Parse ``PHOTON_SPINOR_THREADS``; ``None`` when unset."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return None
    n = int(raw)
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def apply_thread_cap() -> None:
    """Limit numba's worker pool according to the environment, if requested."""
    cap = thread_cap()
    if cap is None or not HAVE_NUMBA:
        return
    numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))


if HAVE_NUMBA:
    njit = numba.njit
    prange = numba.prange
else:  # pragma: no cover

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

    prange = range
