"""Six-component spinor fields on uniform grids.

Layouts (per node, ``E`` and ``H`` real 3-vectors)::

    standard  psi = (E, iH) / sqrt(2)
    chiral    psi = ((E + iH)/2, (E - iH)/2)

The source-free Maxwell equations become ``i d_t psi + i alpha . grad psi = 0``
in either layout.  This module builds such fields from E/H samples or from
plane-wave amplitudes, evaluates the equation residual with the
finite-difference kernels, factors the dispersion determinant and computes
the conserved quantities by box quadrature.
"""

from __future__ import annotations

import csv
import io
import struct
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .algebra import LEVI_CIVITA, Representation, build_matrices, change_rep
from .errors import ConfigError, GridMismatch, IncommensurateMode
from .polarization import WaveVector, mode_spinors
from .reports import max_abs

__all__ = [
    "Grid",
    "SpinorSample",
    "SpinorGridField",
    "ModeCoefficients",
    "DispersionResult",
    "Observables",
    "spinor_from_eh",
    "eh_from_spinor",
    "assemble_spinor",
    "extract_eh",
    "dirac_residual",
    "dirac_residual_array",
    "node_norm_max",
    "divergence",
    "spectral_divergence",
    "dispersion_roots",
    "synthesize_field",
    "observables",
    "write_binary",
    "read_binary",
    "write_csv",
    "read_csv",
    "parse_csv",
    "to_bytes",
    "from_bytes",
]

_SQRT2 = np.sqrt(2.0)
MIN_DIM = 5


@dataclass(frozen=True)
class Grid:
    """Uniform Cartesian box.

    Parameters
    ----------
    dims : tuple of 3 int
        Node counts, each at least 5 so every stencil has support.
    spacing : tuple of 3 float
        Node spacing per axis, strictly positive.
    origin : tuple of 3 float
        Coordinates of node ``(0, 0, 0)``.
    boundary : {"periodic", "open", "zero"}
    """

    dims: tuple[int, int, int]
    spacing: tuple[float, float, float]
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)
    boundary: str = "periodic"

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        spacing = tuple(float(h) for h in self.spacing)
        origin = tuple(float(o) for o in self.origin)
        if len(dims) != 3 or len(spacing) != 3 or len(origin) != 3:
            raise ConfigError("grid dims, spacing and origin need three entries each")
        if min(dims) < MIN_DIM:
            raise ConfigError(f"grid needs at least {MIN_DIM} nodes per axis, got {dims}")
        if not all(np.isfinite(spacing)) or min(spacing) <= 0:
            raise ConfigError(f"grid spacing must be positive, got {spacing}")
        kernels.boundary_code(self.boundary)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "boundary", str(self.boundary).lower())

    @classmethod
    def periodic_box(cls, n: int | Iterable[int], length: float | Iterable[float], centered: bool = False) -> "Grid":
        """Periodic grid with ``n`` nodes covering ``[0, length)`` per axis.

        With ``centered`` the box is shifted so the node set is symmetric
        about the origin (requires odd ``n``).
        """
        n = np.broadcast_to(np.asarray(n, dtype=int), (3,))
        length = np.broadcast_to(np.asarray(length, dtype=float), (3,))
        h = length / n
        origin = -(n - 1) / 2 * h if centered else np.zeros(3)
        return cls(tuple(n), tuple(h), tuple(origin), "periodic")

    @property
    def lengths(self) -> np.ndarray:
        """Box period ``n h`` per axis."""
        return np.array(self.dims) * np.array(self.spacing)

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    def axes(self) -> list[np.ndarray]:
        return [self.origin[a] + self.spacing[a] * np.arange(self.dims[a]) for a in range(3)]

    def coordinates(self) -> np.ndarray:
        """Node coordinates, shape ``(nx, ny, nz, 3)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def weights(self) -> np.ndarray:
        """Trapezoid quadrature weights (rectangle rule when periodic)."""
        ws = []
        for a in range(3):
            w = np.full(self.dims[a], self.spacing[a])
            if self.boundary != "periodic":
                w[0] = w[-1] = 0.5 * self.spacing[a]
            ws.append(w)
        return ws[0][:, None, None] * ws[1][None, :, None] * ws[2][None, None, :]

    def is_symmetric(self, rtol: float = 1e-12) -> bool:
        """True when the node set maps onto itself under ``x -> -x``."""
        for a in range(3):
            far = self.origin[a] + self.spacing[a] * (self.dims[a] - 1)
            if self.dims[a] % 2 == 0 or abs(self.origin[a] + far) > rtol * max(1.0, abs(far)):
                return False
        return True

    def with_spacing_scale(self, factor: int) -> "Grid":
        """Same box with ``factor`` times more nodes per axis (periodic only)."""
        if self.boundary != "periodic":
            raise ConfigError("grid refinement keeps the box only for periodic grids")
        dims = tuple(d * factor for d in self.dims)
        spacing = tuple(h / factor for h in self.spacing)
        return Grid(dims, spacing, self.origin, self.boundary)


@dataclass(frozen=True)
class SpinorSample:
    """Six components at one point in a named layout."""

    psi: np.ndarray
    rep: Representation = Representation.STANDARD

    def __post_init__(self):
        object.__setattr__(self, "psi", np.asarray(self.psi, dtype=complex).reshape(6))
        object.__setattr__(self, "rep", Representation.parse(self.rep))

    def to(self, rep: Representation | str) -> "SpinorSample":
        rep = Representation.parse(rep)
        if rep is self.rep:
            return self
        return SpinorSample(build_matrices(rep).U @ self.psi, rep)


def spinor_from_eh(E, H, rep: Representation | str) -> np.ndarray:
    """Stack ``(..., 3)`` E and H samples into ``(..., 6)`` spinors."""
    E = np.asarray(E)
    H = np.asarray(H)
    if E.shape != H.shape or E.shape[-1:] != (3,):
        raise GridMismatch(f"E and H must share a (..., 3) shape, got {E.shape} and {H.shape}")
    if Representation.parse(rep) is Representation.STANDARD:
        return np.concatenate([E, 1j * H], axis=-1) / _SQRT2
    return np.concatenate([(E + 1j * H) / 2, (E - 1j * H) / 2], axis=-1)


def eh_from_spinor(psi, rep: Representation | str) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`spinor_from_eh` (complex output)."""
    psi = np.asarray(psi)
    up, lo = psi[..., :3], psi[..., 3:]
    if Representation.parse(rep) is Representation.STANDARD:
        return _SQRT2 * up, -1j * _SQRT2 * lo
    return up + lo, -1j * (up - lo)


@dataclass
class SpinorGridField:
    """Spinor samples on a :class:`Grid`.

    Attributes
    ----------
    grid : Grid
    values : ndarray, shape (nx, ny, nz, 6), complex
    rep : Representation
    time : float
    """

    grid: Grid
    values: np.ndarray
    rep: Representation = Representation.STANDARD
    time: float = 0.0

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=complex)
        self.rep = Representation.parse(self.rep)
        want = tuple(self.grid.dims) + (6,)
        if self.values.shape != want:
            raise GridMismatch(f"values have shape {self.values.shape}, grid needs {want}")

    def to(self, rep: Representation | str) -> "SpinorGridField":
        rep = Representation.parse(rep)
        if rep is self.rep:
            return self
        return replace(self, values=self.values @ build_matrices(rep).U.T, rep=rep)

    def with_values(self, values: np.ndarray) -> "SpinorGridField":
        return replace(self, values=values)

    def eh(self) -> tuple[np.ndarray, np.ndarray]:
        return eh_from_spinor(self.values, self.rep)

    def energy_density(self) -> np.ndarray:
        return np.einsum("...i,...i->...", self.values.conj(), self.values).real

    def same_grid(self, other: "SpinorGridField") -> None:
        if self.grid != other.grid:
            raise GridMismatch("fields live on different grids")
        if self.rep is not other.rep:
            raise GridMismatch(f"representation mismatch: {self.rep.value} vs {other.rep.value}")


def assemble_spinor(E, H, rep: Representation | str, grid: Grid, time: float = 0.0) -> SpinorGridField:
    """Build a grid field from sampled E and H, each ``(nx, ny, nz, 3)``."""
    E = np.asarray(E)
    H = np.asarray(H)
    want = tuple(grid.dims) + (3,)
    if E.shape != want or H.shape != want:
        raise GridMismatch(f"E {E.shape} and H {H.shape} must both have shape {want}")
    return SpinorGridField(grid, spinor_from_eh(E, H, rep), rep, time)


def extract_eh(field: SpinorGridField) -> tuple[np.ndarray, np.ndarray]:
    """Recover ``(E, H)`` from a grid field (complex arrays)."""
    return field.eh()


def dirac_residual_array(field: SpinorGridField, dt_field: SpinorGridField, backend: str | None = None) -> np.ndarray:
    """Pointwise ``i d_t psi + i alpha . grad psi`` (central differences)."""
    field.same_grid(dt_field)
    alpha = build_matrices(field.rep).alpha
    return kernels.dirac_residual_field(
        field.values, dt_field.values, alpha, field.grid.spacing, field.grid.boundary, backend
    )


def dirac_residual(field: SpinorGridField, dt_field: SpinorGridField, backend: str | None = None) -> float:
    """Max over nodes of the Euclidean norm of the vacuum residual.

    The per-node 2-norm makes the measure independent of the layout and
    of any unitary acting on the six components.  The time derivative is
    supplied (usually analytically from synthesis); only space derivatives
    are discretized, so the error is ``O(h^2)``.
    """
    return node_norm_max(dirac_residual_array(field, dt_field, backend))


def node_norm_max(values) -> float:
    """``max_nodes sqrt(sum_c |v_c|^2)`` for a ``(..., ncomp)`` array."""
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    return float(np.sqrt(np.max(np.sum(np.abs(values) ** 2, axis=-1))))


def divergence(vectors, grid: Grid, backend: str | None = None) -> np.ndarray:
    """Central-difference divergence of a ``(nx, ny, nz, 3)`` vector field."""
    g = kernels.gradient(vectors, grid.spacing, grid.boundary, backend)
    return g[0, ..., 0] + g[1, ..., 1] + g[2, ..., 2]


def spectral_divergence(vectors, grid: Grid) -> np.ndarray:
    """FFT divergence on a periodic grid; exact for lattice plane waves."""
    if grid.boundary != "periodic":
        raise ConfigError("spectral divergence needs a periodic grid")
    vectors = np.asarray(vectors)
    out = np.zeros(vectors.shape[:3], dtype=complex)
    for a in range(3):
        freq = 2 * np.pi * np.fft.fftfreq(grid.dims[a], d=grid.spacing[a])
        shape = [1, 1, 1]
        shape[a] = -1
        out += np.fft.ifftn(1j * freq.reshape(shape) * np.fft.fftn(vectors[..., a]))
    return out if np.iscomplexobj(vectors) else out.real


# --------------------------------------------------------------------------
# dispersion


@dataclass(frozen=True)
class DispersionResult:
    """Factorization of ``det(omega I - alpha . k)``.

    Attributes
    ----------
    coefficients : ndarray
        Polynomial coefficients in ``omega``, highest degree first.
    omega_roots : list of (float, int)
        Distinct roots in ``omega`` with multiplicities.
    omega_sq : dict
        Distinct values of ``omega^2`` mapped to multiplicity counted in
        ``omega`` (so ``|k|^2 -> 4`` for the double pair ``+/-|k|``).
    closed_form_deviation : float
        Max deviation of the sampled determinant from
        ``omega^2 (omega^2 - k^2)^2`` on the sample nodes.
    """

    coefficients: np.ndarray
    omega_roots: list[tuple[float, int]]
    omega_sq: dict[float, int]
    closed_form_deviation: float


def _refine_root(poly: np.poly1d, x0: float, mult: int) -> float:
    """Newton on the ``(mult-1)``-th derivative, which has a simple root."""
    q = poly.deriv(mult - 1) if mult > 1 else poly
    dq = q.deriv()
    x = x0
    for _ in range(50):
        d = dq(x)
        if d == 0:
            break
        step = q(x) / d
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return float(x)


def dispersion_roots(k, rep: Representation | str = Representation.STANDARD, cluster_tol: float = 0.05) -> DispersionResult:
    """Sample and factor the determinant ``det(omega - alpha . k)``.

    The determinant is evaluated with LU at seven Chebyshev nodes in the
    scaled variable ``w = omega / scale`` (``scale = |k|``, or 1 when
    ``k = 0``) and interpolated exactly by a degree-6 polynomial.  Its roots
    are clustered (roots closer than ``cluster_tol`` in ``w`` are one
    multiple root) and each cluster is polished by Newton on the
    appropriate derivative.
    """
    kv = WaveVector.of(k)
    alpha = build_matrices(rep).alpha
    a_k = np.tensordot(kv.k, alpha, axes=1)
    scale = kv.omega if kv.omega > 0 else 1.0
    nodes = 2.0 * np.cos(np.pi * (np.arange(7) + 0.5) / 7)
    dets = np.array([np.linalg.det(w * scale * np.eye(6) - a_k) for w in nodes])
    closed = np.array([(w * scale) ** 2 * ((w * scale) ** 2 - kv.omega**2) ** 2 for w in nodes])
    deviation = max_abs(dets - closed) / scale**6
    coeffs_w = np.polyfit(nodes, dets.real / scale**6, 6)
    poly = np.poly1d(coeffs_w)
    raw = np.sort(np.roots(coeffs_w).real)
    clusters: list[list[float]] = []
    for r in raw:
        if clusters and abs(r - clusters[-1][-1]) < cluster_tol:
            clusters[-1].append(r)
        else:
            clusters.append([r])
    roots = []
    for c in clusters:
        x = _refine_root(poly, float(np.mean(c)), len(c))
        roots.append((0.0 if abs(x) < 1e-12 else x * scale, len(c)))
    omega_sq: dict[float, int] = {}
    for value, mult in roots:
        key = value * value
        match = next((s for s in omega_sq if abs(s - key) <= 1e-12 * max(1.0, key)), None)
        if match is None:
            omega_sq[key] = mult
        else:
            omega_sq[match] += mult
    coeffs = coeffs_w * scale ** (6 - np.arange(7))
    return DispersionResult(coeffs, roots, omega_sq, deviation)


# --------------------------------------------------------------------------
# plane-wave synthesis


def _key(k) -> tuple[float, float, float]:
    return tuple(float(v) for v in np.asarray(k, dtype=float).reshape(3))


@dataclass
class ModeCoefficients:
    """Classical plane-wave amplitudes ``b(k, i)`` for ``i = 1, 2``.

    Attributes
    ----------
    entries : dict
        ``(k_tuple, i) -> complex``.
    circular : dict or None
        Optional helicity amplitudes ``(k_tuple, lam) -> complex`` with
        ``lam = +1, -1``; when present they must satisfy
        ``a_{+/-1} = (b1 -/+ i b2)/sqrt(2)``.
    """

    entries: dict[tuple[tuple[float, float, float], int], complex] = field(default_factory=dict)
    circular: dict[tuple[tuple[float, float, float], int], complex] | None = None

    def __post_init__(self):
        clean = {}
        for (k, i), b in self.entries.items():
            if int(i) not in (1, 2):
                raise ConfigError(f"polarization index must be 1 or 2, got {i}")
            b = complex(b)
            if not np.isfinite(b):
                raise ConfigError("mode amplitudes must be finite")
            clean[(_key(k), int(i))] = b
        self.entries = clean

    def add(self, k, i: int, b: complex) -> "ModeCoefficients":
        key = (_key(k), int(i))
        self.entries[key] = self.entries.get(key, 0j) + complex(b)
        return self

    def wave_vectors(self) -> list[tuple[float, float, float]]:
        return sorted({k for k, _ in self.entries})

    def get(self, k, i: int) -> complex:
        return self.entries.get((_key(k), int(i)), 0j)

    @classmethod
    def from_circular(cls, amplitudes: Mapping) -> "ModeCoefficients":
        """Build linear amplitudes from helicity ones (inverse map)."""
        out = cls()
        for k in sorted({_key(k) for k, _ in amplitudes}):
            ap = complex(amplitudes.get((k, 1), 0j))
            am = complex(amplitudes.get((k, -1), 0j))
            out.entries[(k, 1)] = (ap + am) / _SQRT2
            out.entries[(k, 2)] = 1j * (ap - am) / _SQRT2
        out.circular = {(_key(k), int(l)): complex(a) for (k, l), a in amplitudes.items()}
        return out

    def to_circular(self) -> dict[tuple[tuple[float, float, float], int], complex]:
        out = {}
        for k in self.wave_vectors():
            b1, b2 = self.get(k, 1), self.get(k, 2)
            out[(k, 1)] = (b1 - 1j * b2) / _SQRT2
            out[(k, -1)] = (b1 + 1j * b2) / _SQRT2
        return out

    def circular_consistency(self) -> float:
        """Max deviation between stored and derived helicity amplitudes."""
        if self.circular is None:
            return 0.0
        derived = self.to_circular()
        keys = set(derived) | set(self.circular)
        return max((abs(derived.get(q, 0j) - self.circular.get(q, 0j)) for q in keys), default=0.0)

    def energy(self) -> float:
        """Coefficient-space ``sum omega |b|^2``."""
        return float(sum(np.linalg.norm(k) * abs(b) ** 2 for (k, _), b in self.entries.items()))

    def momentum(self) -> np.ndarray:
        """Coefficient-space ``sum k |b|^2``."""
        out = np.zeros(3)
        for (k, _), b in self.entries.items():
            out += np.asarray(k) * abs(b) ** 2
        return out

    def to_json(self) -> dict:
        return {"modes": [{"k": list(k), "i": i, "b": [b.real, b.imag]} for (k, i), b in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ModeCoefficients":
        try:
            out = cls()
            for m in data["modes"]:
                b = m["b"]
                b = complex(b[0], b[1]) if isinstance(b, (list, tuple)) else complex(b)
                out.add(m["k"], int(m["i"]), b)
            return out
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ConfigError(f"malformed mode coefficient data: {exc}") from None


def _check_lattice(k, grid: Grid) -> None:
    n = np.asarray(k) * grid.lengths / (2 * np.pi)
    if np.max(np.abs(n - np.round(n))) > 1e-9 * max(1.0, float(np.max(np.abs(n)))):
        raise IncommensurateMode(f"k = {list(k)} is not a lattice vector of the periodic box {grid.lengths.tolist()}")


def synthesize_field(
    coeffs: ModeCoefficients,
    rep: Representation | str,
    grid: Grid,
    time: float = 0.0,
    rotated: bool = False,
) -> tuple[SpinorGridField, SpinorGridField]:
    """Real-field plane-wave synthesis and its exact time derivative.

    ``psi = sum sqrt(omega / 2V) f(k, i) [b e^{i(k.x - omega t)} + b* e^{-i(k.x - omega t)}]``
    with ``V`` the box volume, so that the box energy equals
    ``sum omega |b|^2``.  On periodic grids every ``k`` must be a lattice
    vector.

    Returns
    -------
    (field, dt_field)
    """
    rep = Representation.parse(rep)
    values = np.zeros(tuple(grid.dims) + (6,), dtype=complex)
    dt = np.zeros_like(values)
    if not coeffs.entries:
        return SpinorGridField(grid, values, rep, time), SpinorGridField(grid, dt, rep, time)
    x = grid.coordinates()
    vol = grid.volume
    for (k, i), b in sorted(coeffs.entries.items()):
        wv = WaveVector.of(k)
        wv.require_nonzero()
        if grid.boundary == "periodic":
            _check_lattice(k, grid)
        col = mode_spinors(wv, rep, rotated=rotated).columns(rep)[i - 1]
        phase = np.exp(1j * (x @ wv.k - wv.omega * time))
        amp = np.sqrt(wv.omega / (2 * vol))
        wave = b * phase + np.conj(b) * np.conj(phase)
        dwave = -1j * wv.omega * (b * phase - np.conj(b) * np.conj(phase))
        values += amp * wave[..., None] * col
        dt += amp * dwave[..., None] * col
    return SpinorGridField(grid, values, rep, time), SpinorGridField(grid, dt, rep, time)


# --------------------------------------------------------------------------
# observables


@dataclass(frozen=True)
class Observables:
    """Box integrals and the pointwise stress field.

    ``energy``, ``momentum`` and ``angular_momentum`` come from the spinor
    bilinears; the ``*_eh`` twins are the same integrals written in E and H,
    kept as an independent route.
    """

    energy: float
    momentum: np.ndarray
    angular_momentum: np.ndarray
    stress: np.ndarray
    energy_eh: float
    momentum_eh: np.ndarray
    angular_momentum_eh: np.ndarray
    stress_eh: np.ndarray

    def to_json(self) -> dict:
        return {
            "J0": self.energy,
            "J": self.momentum.tolist(),
            "Jang": self.angular_momentum.tolist(),
        }


def observables(field: SpinorGridField) -> Observables:
    """Energy, momentum, angular momentum and ``T_ij`` of a grid field.

    Quadrature uses :meth:`Grid.weights` summed in C order, which keeps
    the result bitwise reproducible.
    """
    m = build_matrices(field.rep)
    psi = field.values
    w = field.grid.weights()
    x = field.grid.coordinates()
    conj = psi.conj()

    def integrate(density):
        return np.sum(w[..., None] * density.reshape(w.shape + (-1,)), axis=(0, 1, 2))

    rho = np.einsum("...i,...i->...", conj, psi).real
    flux = np.einsum("...i,lij,...j->...l", conj, m.alpha, psi).real
    x_cross_alpha = np.einsum("lmn,...m,nij->...lij", LEVI_CIVITA, x, m.alpha)
    ang = np.einsum("...i,...lij,...j->...l", conj, x_cross_alpha, psi).real
    aa = 2 * np.einsum("aij,bjk->abik", m.alpha, m.alpha) - np.eye(3)[:, :, None, None] * np.eye(6)
    stress = np.einsum("...i,abij,...j->...ab", conj, aa, psi)

    E, H = field.eh()
    rho_eh = (np.sum(np.abs(E) ** 2, -1) + np.sum(np.abs(H) ** 2, -1)) / 2
    flux_eh = np.cross(E, H).real
    ang_eh = np.cross(x, flux_eh)
    stress_eh = (
        np.eye(3) * rho_eh[..., None, None]
        - np.einsum("...j,...i->...ij", E.conj(), E)
        - np.einsum("...j,...i->...ij", H.conj(), H)
    )
    return Observables(
        float(integrate(rho)[0]),
        integrate(flux),
        integrate(ang),
        stress,
        float(integrate(rho_eh)[0]),
        integrate(flux_eh),
        integrate(ang_eh),
        stress_eh,
    )


# --------------------------------------------------------------------------
# serialization

_MAGIC = b"PSF1"
_HEADER = struct.Struct("<4s3I3d3ddBB2x")
_REP_CODES = {Representation.CHIRAL: 0, Representation.STANDARD: 1}


def to_bytes(field: SpinorGridField) -> bytes:
    """Binary layout: fixed little-endian header, then complex128 payload.

    Header fields: magic ``PSF1``, dims (3 x u32), origin (3 x f64),
    spacing (3 x f64), time (f64), representation (u8: 0 chiral,
    1 standard), boundary (u8: index into ``kernels.BOUNDARIES``), two pad
    bytes.  The payload is C-ordered ``(nx, ny, nz, 6)`` with interleaved
    real/imaginary float64 parts.
    """
    g = field.grid
    head = _HEADER.pack(
        _MAGIC, *g.dims, *g.origin, *g.spacing, float(field.time), _REP_CODES[field.rep], kernels.boundary_code(g.boundary)
    )
    return head + field.values.astype("<c16").tobytes(order="C")


def from_bytes(data: bytes) -> SpinorGridField:
    if len(data) < _HEADER.size:
        raise ConfigError("field file is shorter than its header")
    magic, nx, ny, nz, ox, oy, oz, hx, hy, hz, t, rep, bc = _HEADER.unpack_from(data)
    if magic != _MAGIC:
        raise ConfigError(f"bad magic {magic!r}; not a spinor field file")
    if rep not in (0, 1) or bc >= len(kernels.BOUNDARIES):
        raise ConfigError("corrupt representation or boundary tag")
    count = nx * ny * nz * 6
    payload = data[_HEADER.size :]
    if len(payload) != 16 * count:
        raise ConfigError(f"payload holds {len(payload)} bytes, expected {16 * count}")
    grid = Grid((nx, ny, nz), (hx, hy, hz), (ox, oy, oz), kernels.BOUNDARIES[bc])
    values = np.frombuffer(payload, dtype="<c16").reshape(nx, ny, nz, 6).astype(complex)
    return SpinorGridField(grid, values, Representation.CHIRAL if rep == 0 else Representation.STANDARD, t)


def write_binary(field: SpinorGridField, path: str | Path) -> None:
    Path(path).write_bytes(to_bytes(field))


def read_binary(path: str | Path) -> SpinorGridField:
    return from_bytes(Path(path).read_bytes())


_CSV_HEAD = ["i", "j", "k", "x1", "x2", "x3"] + [f"{p}{c}" for c in range(1, 7) for p in ("re", "im")]


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(field: SpinorGridField, path: str | Path | None = None) -> str:
    """CSV export for small grids.

    Row 1 names the metadata columns ``rep,boundary,time,hx,hy,hz`` and
    row 2 holds their values; row 3 is the node-table header, followed by
    one row per node with 17 significant digits.
    """
    g = field.grid
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["rep", "boundary", "time", "hx", "hy", "hz"])
    w.writerow([field.rep.value, g.boundary, _fmt(field.time)] + [_fmt(h) for h in g.spacing])
    w.writerow(_CSV_HEAD)
    x = g.coordinates()
    for idx in np.ndindex(*g.dims):
        row = list(idx) + [_fmt(v) for v in x[idx]]
        for z in field.values[idx]:
            row += [_fmt(z.real), _fmt(z.imag)]
        w.writerow(row)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, newline="")
    return text


def read_csv(path: str | Path) -> SpinorGridField:
    return parse_csv(Path(path).read_text())


def parse_csv(text: str) -> SpinorGridField:
    """Inverse of :func:`write_csv`."""
    rows = list(csv.reader(io.StringIO(text)))
    try:
        meta = dict(zip(rows[0], rows[1]))
        if rows[2] != _CSV_HEAD:
            raise ValueError("unexpected node table header")
        table = np.array([[float(v) for v in r] for r in rows[3:] if r])
        idx = table[:, :3].astype(int)
        dims = tuple(int(d) for d in idx.max(axis=0) + 1)
        spacing = (float(meta["hx"]), float(meta["hy"]), float(meta["hz"]))
        origin_row = table[np.all(idx == 0, axis=1)][0]
        grid = Grid(dims, spacing, tuple(origin_row[3:6]), meta["boundary"])
        values = np.zeros(dims + (6,), dtype=complex)
        values[idx[:, 0], idx[:, 1], idx[:, 2]] = table[:, 6::2] + 1j * table[:, 7::2]
        return SpinorGridField(grid, values, meta["rep"], float(meta["time"]))
    except (KeyError, ValueError, IndexError) as exc:
        raise ConfigError(f"malformed field CSV: {exc}") from None
