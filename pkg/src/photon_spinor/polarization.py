"""Polarization bases and plane-wave mode spinors.

For a wave vector ``k`` the linear basis ``eps1, eps2, eps3 = k/|k|`` is a
right-handed orthonormal triad (``eps1 x eps2 = eps3``).  The circular vectors
are ``e_{+1} = (eps1 + i eps2)/sqrt(2)``, ``e_{-1} = conj(e_{+1})`` and
``e_0 = eps3``; they are eigenvectors of the helicity operator
``tau . k/|k|`` with eigenvalues ``+1, -1, 0``.

When ``k`` lies on the third axis the closed-form triad is 0/0.  It is then
replaced by its limit along ``k2 = 0, k1 -> 0+``, which gives
``eps1 = (s, 0, 0)``, ``eps2 = (0, 1, 0)`` and ``eps3 = (0, 0, s)`` with
``s = sign(k3)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Representation, build_matrices, build_tau
from .errors import ZeroWaveVector
from .reports import CheckRecord, max_abs

__all__ = [
    "DEGENERACY_TOL",
    "WaveVector",
    "PolBasis",
    "ModeSpinor",
    "linear_basis",
    "circular_basis",
    "circular_explicit",
    "rotation_phase",
    "rotated_circular_basis",
    "mode_spinors",
    "identity_suite",
]

DEGENERACY_TOL = 1e-24
_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class WaveVector:
    """Wave vector with cached frequency ``omega = |k|``.

    Parameters
    ----------
    k : array_like, shape (3,)
        Real components.
    """

    k: np.ndarray
    omega: float = field(init=False)
    axis_degenerate: bool = field(init=False)

    def __post_init__(self):
        k = np.array(self.k, dtype=float).reshape(3)
        if not np.all(np.isfinite(k)):
            raise ValueError("wave vector components must be finite")
        k.setflags(write=False)
        object.__setattr__(self, "k", k)
        omega = float(np.sqrt(k @ k))
        object.__setattr__(self, "omega", omega)
        transverse = k[0] ** 2 + k[1] ** 2
        object.__setattr__(self, "axis_degenerate", bool(transverse <= DEGENERACY_TOL * omega**2))

    @classmethod
    def of(cls, k) -> "WaveVector":
        return k if isinstance(k, cls) else cls(k)

    def __neg__(self) -> "WaveVector":
        return WaveVector(-self.k)

    @property
    def unit(self) -> np.ndarray:
        self.require_nonzero()
        return self.k / self.omega

    def require_nonzero(self) -> None:
        if self.omega == 0.0:
            raise ZeroWaveVector("polarization basis is undefined for k = 0")


@dataclass(frozen=True)
class PolBasis:
    """Linear and circular polarization vectors of one wave vector.

    Attributes
    ----------
    eps : ndarray, shape (3, 3)
        Row ``i`` holds the linear vector ``eps(k, i+1)``.
    e_plus, e_minus, e_zero : ndarray, shape (3,), complex
    """

    k: WaveVector
    eps: np.ndarray
    e_plus: np.ndarray
    e_minus: np.ndarray
    e_zero: np.ndarray

    def circular(self, helicity: int) -> np.ndarray:
        return {1: self.e_plus, -1: self.e_minus, 0: self.e_zero}[helicity]


def linear_basis(k) -> np.ndarray:
    """Real orthonormal triad ``eps(k, 1..3)`` as rows of a (3, 3) array.

    Raises
    ------
    ZeroWaveVector
        When ``|k| = 0``.
    """
    kv = WaveVector.of(k)
    kv.require_nonzero()
    k1, k2, k3 = kv.k
    w = kv.omega
    if kv.axis_degenerate:
        s = 1.0 if k3 > 0 else -1.0
        return np.array([[s, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, s]])
    rho2 = k1 * k1 + k2 * k2
    eps1 = np.array([(k1 * k1 * k3 + k2 * k2 * w) / rho2, k1 * k2 * (k3 - w) / rho2, -k1]) / w
    eps2 = np.array([k1 * k2 * (k3 - w) / rho2, (k1 * k1 * w + k2 * k2 * k3) / rho2, -k2]) / w
    eps3 = kv.k / w
    return np.stack([eps1, eps2, eps3])


def circular_explicit(k) -> np.ndarray:
    """Component formula for ``e_{+1}(k)`` written directly in terms of k.

    Used as an independent cross-check of ``(eps1 + i eps2)/sqrt(2)``; for
    axis-degenerate ``k`` it returns the same directional limit.
    """
    kv = WaveVector.of(k)
    kv.require_nonzero()
    k1, k2, k3 = kv.k
    w = kv.omega
    if kv.axis_degenerate:
        s = 1.0 if k3 > 0 else -1.0
        return np.array([s, 1j, 0.0]) / _SQRT2
    den = k1 - 1j * k2
    return np.array([(k1 * k3 - 1j * k2 * w) / den, (k2 * k3 + 1j * k1 * w) / den, -(k1 + 1j * k2)]) / (_SQRT2 * w)


def circular_basis(k) -> PolBasis:
    """Both bases of ``k``: linear rows plus ``e_{+1}, e_{-1}, e_0``."""
    kv = WaveVector.of(k)
    eps = linear_basis(kv)
    e_plus = (eps[0] + 1j * eps[1]) / _SQRT2
    return PolBasis(kv, eps, e_plus, e_plus.conj(), eps[2].astype(complex))


def rotation_phase(k) -> complex:
    """``exp(i phi)`` with ``phi = -atan2(k2, k1)``, i.e. ``(k1 - i k2)/sqrt(k1^2 + k2^2)``.

    Returns 1 for axis-degenerate ``k``, where the angle is undefined.
    """
    kv = WaveVector.of(k)
    if kv.axis_degenerate:
        return 1.0 + 0.0j
    k1, k2 = kv.k[0], kv.k[1]
    return complex(k1 - 1j * k2) / np.hypot(k1, k2)


def rotated_circular_basis(k) -> tuple[np.ndarray, np.ndarray]:
    """Circular vectors rotated about ``k`` so that ``e'_{+-1}(-k) = e'_{-+1}(k)``.

    ``e'_{+-1} = exp(+-i phi) e_{+-1}`` with ``phi = -atan2(k2, k1)``.  For
    axis-degenerate ``k`` the unrotated pair is returned.
    """
    basis = circular_basis(k)
    ph = rotation_phase(basis.k)
    return ph * basis.e_plus, np.conj(ph) * basis.e_minus


@dataclass(frozen=True)
class ModeSpinor:
    """Transverse plane-wave spinors of one wave vector.

    ``f1 = (eps1, i eps2)/sqrt(2)`` and ``f2 = (eps2, -i eps1)/sqrt(2)`` are
    standard-layout columns; ``g1 = (e_{+1}, e_{-1})/sqrt(2)`` and
    ``g2 = (-i e_{+1}, i e_{-1})/sqrt(2)`` are the chiral ones, so that
    ``g_i = U f_i``.  With ``rotated=True`` the circular vectors are the
    rotated pair and ``f_i`` is defined as ``U g_i``.
    """

    k: WaveVector
    f1: np.ndarray
    f2: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    rep: Representation = Representation.STANDARD
    rotated: bool = False

    def columns(self, rep: Representation | str | None = None) -> tuple[np.ndarray, np.ndarray]:
        """The two transverse columns in the requested (default: own) layout."""
        rep = self.rep if rep is None else Representation.parse(rep)
        return (self.f1, self.f2) if rep is Representation.STANDARD else (self.g1, self.g2)


def mode_spinors(k, rep: Representation | str = Representation.STANDARD, rotated: bool = False) -> ModeSpinor:
    """Build the two transverse mode spinors of ``k`` in both layouts.

    Parameters
    ----------
    k : array_like or WaveVector
    rep : Representation or str
        Layout returned by :meth:`ModeSpinor.columns` by default.
    rotated : bool
        Use the rotated circular pair (parity-friendly phases).
    """
    rep = Representation.parse(rep)
    basis = circular_basis(k)
    U = build_matrices(rep).U
    if rotated:
        ep, em = rotated_circular_basis(basis.k)
        g1 = np.concatenate([ep, em]) / _SQRT2
        g2 = np.concatenate([-1j * ep, 1j * em]) / _SQRT2
        f1, f2 = U @ g1, U @ g2
    else:
        e1, e2 = basis.eps[0], basis.eps[1]
        f1 = np.concatenate([e1, 1j * e2]) / _SQRT2
        f2 = np.concatenate([e2, -1j * e1]) / _SQRT2
        g1 = np.concatenate([basis.e_plus, basis.e_minus]) / _SQRT2
        g2 = np.concatenate([-1j * basis.e_plus, 1j * basis.e_minus]) / _SQRT2
    return ModeSpinor(basis.k, f1, f2, g1, g2, rep, rotated)


def _vec_bilinear(u, v, tau) -> np.ndarray:
    """``u^dagger tau v`` as a 3-vector."""
    return np.einsum("i,lij,j->l", u.conj(), tau, v)


def identity_suite(k) -> list[CheckRecord]:
    """Evaluate the orthonormality, helicity and parity relations at ``k``.

    Relations that contain ``k1^2 + k2^2`` in a denominator (and the parity
    relations built from them) are skipped for axis-degenerate ``k``.

    Returns
    -------
    list of CheckRecord
        Absolute deviations; vector identities use the max component.
    """
    kv = WaveVector.of(k)
    kv.require_nonzero()
    tau = np.stack(build_tau())
    khat = kv.unit
    w = kv.omega
    k1, k2, _ = kv.k
    b = circular_basis(kv)
    eps = b.eps
    recs: list[CheckRecord] = []

    # cross-product form of eps_i^dagger tau eps_j
    dev = 0.0
    for i in range(3):
        for j in range(3):
            dev = max(dev, max_abs(_vec_bilinear(eps[i], eps[j], tau) + 1j * np.cross(eps[i], eps[j])))
    recs.append(CheckRecord("eps_tau_cross", dev))
    recs.append(CheckRecord("linear_orthonormal", max(
        max_abs(eps @ eps.T - np.eye(3)), max_abs(eps.T @ eps - np.eye(3))
    )))
    recs.append(CheckRecord("linear_right_handed", max(
        max_abs(np.cross(eps[0], eps[1]) - eps[2]), max_abs(eps[2] - khat)
    )))
    recs.append(CheckRecord("eps_tau_eps_12", max(
        max_abs(_vec_bilinear(eps[0], eps[1], tau) + 1j * khat),
        max_abs(_vec_bilinear(eps[1], eps[0], tau) - 1j * khat),
    )))
    recs.append(CheckRecord("eps_tau_eps_diag", max(
        max_abs(_vec_bilinear(eps[0], eps[0], tau)), max_abs(_vec_bilinear(eps[1], eps[1], tau))
    )))

    circ = np.stack([b.e_plus, b.e_minus, b.e_zero])
    recs.append(CheckRecord("circular_orthonormal", max(
        max_abs(circ.conj() @ circ.T - np.eye(3)),
        max_abs(np.einsum("li,lj->ij", circ, circ.conj()) - np.eye(3)),
    )))
    recs.append(CheckRecord("circular_explicit_form", max_abs(b.e_plus - circular_explicit(kv))))
    recs.append(CheckRecord("circular_conjugate_pair", max_abs(b.e_minus - b.e_plus.conj())))
    heli = np.tensordot(khat, tau, axes=1)
    recs.append(CheckRecord("helicity_eigen", max(
        max_abs(heli @ b.e_plus - b.e_plus),
        max_abs(heli @ b.e_minus + b.e_minus),
        max_abs(heli @ b.e_zero),
    )))
    recs.append(CheckRecord("circular_spin_density", max(
        max_abs(_vec_bilinear(b.e_plus, b.e_plus, tau) - khat),
        max_abs(_vec_bilinear(b.e_minus, b.e_minus, tau) + khat),
    )))

    bm = circular_basis(-kv)
    recs.append(CheckRecord("circular_opposite_k_orthogonal", max(
        abs(bm.e_plus.conj() @ b.e_plus), abs(bm.e_minus.conj() @ b.e_minus),
        max_abs(_vec_bilinear(b.e_plus, bm.e_plus, tau)), max_abs(_vec_bilinear(b.e_minus, bm.e_minus, tau)),
    )))

    ms, msm = mode_spinors(kv), mode_spinors(-kv)
    S, C = build_matrices("standard"), build_matrices("chiral")
    for tag, cols, cols_m, alpha in (
        ("standard", (ms.f1, ms.f2), (msm.f1, msm.f2), S.alpha),
        ("chiral", (ms.g1, ms.g2), (msm.g1, msm.g2), C.alpha),
    ):
        gram = max(abs(cols[i].conj() @ cols[j] - (i == j)) for i in range(2) for j in range(2))
        cross = max(abs(cols[i].conj() @ cols_m[j]) for i in range(2) for j in range(2))
        flux = max(
            max_abs(np.einsum("i,lij,j->l", cols[i].conj(), alpha, cols[j]) - (i == j) * khat)
            for i in range(2) for j in range(2)
        )
        flux_m = max(
            max_abs(np.einsum("i,lij,j->l", cols[i].conj(), alpha, cols_m[j]))
            for i in range(2) for j in range(2)
        )
        recs.append(CheckRecord(f"mode_orthonormal_{tag}", gram))
        recs.append(CheckRecord(f"mode_opposite_k_orthogonal_{tag}", cross))
        recs.append(CheckRecord(f"mode_flux_{tag}", flux))
        recs.append(CheckRecord(f"mode_opposite_k_flux_{tag}", flux_m))
    recs.append(CheckRecord("mode_basis_change", max(
        max_abs(S.U @ ms.f1 - ms.g1), max_abs(S.U @ ms.f2 - ms.g2)
    )))

    if kv.axis_degenerate:
        return recs

    rho2 = k1 * k1 + k2 * k2
    em = linear_basis(-kv)
    c = (k2 * k2 - k1 * k1) / rho2
    s = -2 * k1 * k2 / rho2
    recs.append(CheckRecord("linear_opposite_k_overlap", max(
        abs(eps[0] @ em[0] - c), abs(eps[1] @ em[1] + c), abs(eps[0] @ em[1] - s), abs(eps[1] @ em[0] - s)
    )))
    vc = 1j * khat * (k2 * k2 - k1 * k1) / rho2
    vs = 2j * khat * k1 * k2 / rho2
    recs.append(CheckRecord("linear_opposite_k_spin", max(
        max_abs(_vec_bilinear(eps[0], em[1], tau) - vc),
        max_abs(_vec_bilinear(eps[1], em[0], tau) - vc),
        max_abs(_vec_bilinear(eps[0], em[0], tau) - vs),
        max_abs(_vec_bilinear(eps[1], em[1], tau) + vs),
    )))
    phase = (k1 + 1j * k2) / (k1 - 1j * k2)
    recs.append(CheckRecord("parity_phase_unimodular", abs(abs(phase) - 1)))
    recs.append(CheckRecord("circular_parity_pair", max(
        max_abs(bm.e_plus + phase * b.e_minus), max_abs(bm.e_minus + np.conj(phase) * b.e_plus)
    )))
    ph = rotation_phase(kv)
    recs.append(CheckRecord("rotation_phase_unimodular", abs(abs(ph) - 1)))
    rp, rm = rotated_circular_basis(kv)
    rpm, rmm = rotated_circular_basis(-kv)
    recs.append(CheckRecord("rotated_parity_pair", max(max_abs(rpm - rm), max_abs(rmm - rp))))
    rot, rot_m = mode_spinors(kv, rotated=True), mode_spinors(-kv, rotated=True)
    b0 = C.beta[0]
    # beta^0 g(-k, i) = (-1)^(i+1) g(k, i) in the rotated basis.
    recs.append(CheckRecord("rotated_mode_parity", max(
        max_abs(b0 @ rot_m.g1 - rot.g1), max_abs(b0 @ rot_m.g2 + rot.g2)
    )))
    recs.append(CheckRecord(
        "rotated_mode_parity_uniform_sign",
        max(max_abs(b0 @ rot_m.g1 - rot.g1), max_abs(b0 @ rot_m.g2 - rot.g2)),
        notes="same-sign form for both modes; expected to fail for the second mode",
    ))
    return recs
