"""Finite-difference kernels on uniform Cartesian grids.

Every kernel exists as a numba ``@njit(parallel=True)`` loop and as a
vectorized numpy expression.  :data:`BACKEND` is fixed at import time from
``PHOTON_SPINOR_BACKEND``; each public function also takes an explicit
``backend=`` override so the two paths can be compared directly.

Stencils are second-order central differences.  Boundary handling:

``periodic``
    wrap-around indices;
``open``
    second-order one-sided stencils on the first and last node;
``zero``
    nodes outside the box are treated as zero.

Arrays are laid out ``(nx, ny, nz, ncomp)``.  The numba loops parallelize
over the first axis only and write disjoint output slices, so results are
bitwise identical for any thread count.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, apply_thread_cap, njit, prange, requested_backend
from .errors import BoundaryUnsupported

__all__ = ["BACKEND", "BOUNDARIES", "boundary_code", "gradient", "dirac_residual_field", "backends"]

BOUNDARIES = ("periodic", "open", "zero")
BACKEND = requested_backend()
apply_thread_cap()


def boundary_code(boundary: str) -> int:
    try:
        return BOUNDARIES.index(str(boundary).lower())
    except ValueError:
        raise BoundaryUnsupported(f"boundary {boundary!r} not supported; use one of {BOUNDARIES}") from None


def backends() -> tuple[str, ...]:
    """Backends usable in this interpreter."""
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


# --------------------------------------------------------------------------
# numpy backend


def _diff_numpy(values: np.ndarray, axis: int, h: float, bc: int) -> np.ndarray:
    n = values.shape[axis]
    if bc == 0:
        return (np.roll(values, -1, axis) - np.roll(values, 1, axis)) / (2.0 * h)
    out = np.empty_like(values)
    sl = [slice(None)] * values.ndim

    def take(s):
        sl[axis] = s
        return values[tuple(sl)]

    def put(s, v):
        sl[axis] = s
        out[tuple(sl)] = v

    put(slice(1, n - 1), (take(slice(2, n)) - take(slice(0, n - 2))) / (2.0 * h))
    if bc == 1:
        put(0, (-3.0 * take(0) + 4.0 * take(1) - take(2)) / (2.0 * h))
        put(n - 1, (3.0 * take(n - 1) - 4.0 * take(n - 2) + take(n - 3)) / (2.0 * h))
    else:
        put(0, take(1) / (2.0 * h))
        put(n - 1, -take(n - 2) / (2.0 * h))
    return out


def _gradient_numpy(values, spacing, bc):
    return np.stack([_diff_numpy(values, a, spacing[a], bc) for a in range(3)])


def _dirac_numpy(values, dt, alpha, spacing, bc):
    grad = _gradient_numpy(values, spacing, bc)
    acc = dt.copy()
    for a in range(3):
        acc += grad[a] @ alpha[a].T
    return 1j * acc


# --------------------------------------------------------------------------
# numba backend


@njit(cache=True)
def _neighbor_table(n, bc):
    """Neighbour indices and weights for the central difference along one axis.

    Out-of-range neighbours (``zero`` boundary) get weight 0; ``open``
    edges are overwritten afterwards by the one-sided formulas.
    """
    up = np.empty(n, dtype=np.int64)
    dn = np.empty(n, dtype=np.int64)
    wu = np.ones(n)
    wd = np.ones(n)
    for i in range(n):
        up[i] = i + 1
        dn[i] = i - 1
    if bc == 0:
        up[n - 1] = 0
        dn[0] = n - 1
    else:
        up[n - 1] = n - 1
        dn[0] = 0
        wu[n - 1] = 0.0
        wd[0] = 0.0
    return up, dn, wu, wd


@njit(cache=True)
def _open_edges(values, out, a, h):
    # one-sided second-order differences on the two faces normal to axis a
    nx, ny, nz, nc = values.shape
    n = values.shape[a]
    s = 1.0 / (2.0 * h)
    for p in range(values.shape[(a + 1) % 3]):
        for q in range(values.shape[(a + 2) % 3]):
            for c in range(nc):
                if a == 0:
                    j, k = p, q
                    out[0, j, k, c] = (-3.0 * values[0, j, k, c] + 4.0 * values[1, j, k, c] - values[2, j, k, c]) * s
                    out[n - 1, j, k, c] = (3.0 * values[n - 1, j, k, c] - 4.0 * values[n - 2, j, k, c] + values[n - 3, j, k, c]) * s
                elif a == 1:
                    k, i = p, q
                    out[i, 0, k, c] = (-3.0 * values[i, 0, k, c] + 4.0 * values[i, 1, k, c] - values[i, 2, k, c]) * s
                    out[i, n - 1, k, c] = (3.0 * values[i, n - 1, k, c] - 4.0 * values[i, n - 2, k, c] + values[i, n - 3, k, c]) * s
                else:
                    i, j = p, q
                    out[i, j, 0, c] = (-3.0 * values[i, j, 0, c] + 4.0 * values[i, j, 1, c] - values[i, j, 2, c]) * s
                    out[i, j, n - 1, c] = (3.0 * values[i, j, n - 1, c] - 4.0 * values[i, j, n - 2, c] + values[i, j, n - 3, c]) * s


@njit(parallel=True, cache=True)
def _gradient_numba(values, spacing, bc):
    nx, ny, nz, nc = values.shape
    out = np.empty((3, nx, ny, nz, nc), dtype=values.dtype)
    ux, dx, wux, wdx = _neighbor_table(nx, bc)
    uy, dy, wuy, wdy = _neighbor_table(ny, bc)
    uz, dz, wuz, wdz = _neighbor_table(nz, bc)
    sx = 1.0 / (2.0 * spacing[0])
    sy = 1.0 / (2.0 * spacing[1])
    sz = 1.0 / (2.0 * spacing[2])
    for i in prange(nx):
        for j in range(ny):
            for k in range(nz):
                for c in range(nc):
                    out[0, i, j, k, c] = (wux[i] * values[ux[i], j, k, c] - wdx[i] * values[dx[i], j, k, c]) * sx
                    out[1, i, j, k, c] = (wuy[j] * values[i, uy[j], k, c] - wdy[j] * values[i, dy[j], k, c]) * sy
                    out[2, i, j, k, c] = (wuz[k] * values[i, j, uz[k], c] - wdz[k] * values[i, j, dz[k], c]) * sz
    if bc == 1:
        for a in range(3):
            _open_edges(values, out[a], a, spacing[a])
    return out


@njit(cache=True)
def _apply_alpha(grad, dt, alpha):
    nx, ny, nz, nc = dt.shape
    out = np.empty_like(dt)
    for i in range(nx):
        for j in range(ny):
            for k in range(nz):
                for r in range(nc):
                    acc = dt[i, j, k, r]
                    for a in range(3):
                        for c in range(nc):
                            acc += alpha[a, r, c] * grad[a, i, j, k, c]
                    out[i, j, k, r] = 1j * acc
    return out


def _dirac_numba(values, dt, alpha, spacing, bc):
    return _apply_alpha(_gradient_numba(values, spacing, bc), dt, alpha)


# --------------------------------------------------------------------------
# public dispatch


def _resolve(backend: str | None) -> str:
    backend = BACKEND if backend is None else backend
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        return "numpy"
    return backend


def gradient(values, spacing, boundary: str = "periodic", backend: str | None = None) -> np.ndarray:
    """Central-difference gradient of a component field.

    Parameters
    ----------
    values : ndarray, shape (nx, ny, nz, ncomp)
    spacing : sequence of 3 floats
    boundary : {"periodic", "open", "zero"}

    Returns
    -------
    ndarray, shape (3, nx, ny, nz, ncomp)
    """
    bc = boundary_code(boundary)
    values = np.ascontiguousarray(values, dtype=complex)
    spacing = np.asarray(spacing, dtype=float)
    if _resolve(backend) == "numba":
        return _gradient_numba(values, spacing, bc)
    return _gradient_numpy(values, spacing, bc)


def dirac_residual_field(values, dt, alpha, spacing, boundary: str = "periodic", backend: str | None = None) -> np.ndarray:
    """Pointwise ``i (d_t psi + alpha . grad psi)`` with central differences."""
    bc = boundary_code(boundary)
    values = np.ascontiguousarray(values, dtype=complex)
    dt = np.ascontiguousarray(dt, dtype=complex)
    alpha = np.ascontiguousarray(alpha, dtype=complex)
    spacing = np.asarray(spacing, dtype=float)
    if _resolve(backend) == "numba":
        return _dirac_numba(values, dt, alpha, spacing, bc)
    return _dirac_numpy(values, dt, alpha, spacing, bc)
