"""Fixed matrices of the six-component photon spinor and Lorentz maps.

All matrices are built from integer literals so that the chiral and standard
sets are exact.  The metric signature is ``diag(-1, 1, 1, 1)`` throughout and
4-vectors passed to this module are contravariant, ``a = (a^0, a^1, a^2, a^3)``.

Representation matrices
-----------------------
Chiral layout ``psi = (F_R, F_L)`` with ``F_R/L = (E +/- iH)/2``::

    beta^0 = [[0, I], [I, 0]]       beta^l = [[0, -tau_l], [tau_l, 0]]
    alpha_l = [[tau_l, 0], [0, -tau_l]]    beta5 = [[I, 0], [0, -I]]

Standard layout ``psi = (E, iH)/sqrt(2)``::

    beta^0 = [[I, 0], [0, -I]]      beta^l = [[0, tau_l], [-tau_l, 0]]
    alpha_l = [[0, tau_l], [tau_l, 0]]     beta5 = [[0, I], [I, 0]]

``Sigma_l = diag(tau_l, tau_l)`` in both, and every standard matrix is
``U M_chiral U`` with the real symmetric involution
``U = [[I, I], [I, -I]] / sqrt(2)``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Representation",
    "METRIC",
    "LEVI_CIVITA",
    "build_tau",
    "RepMatrices",
    "build_matrices",
    "change_rep",
    "exp_tau",
    "LorentzParams",
    "lorentz_rep",
    "lorentz_rep_expm",
    "spin_generators",
    "slash",
]


class Representation(str, enum.Enum):
    """Spinor layout tag."""

    CHIRAL = "chiral"
    STANDARD = "standard"

    @classmethod
    def parse(cls, value: "Representation | str") -> "Representation":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown representation {value!r}; use 'chiral' or 'standard'") from None


METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0
LEVI_CIVITA.setflags(write=False)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


_TAU = _frozen(
    np.array(
        [
            [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
            [[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]],
            [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
        ],
        dtype=complex,
    )
)


def build_tau() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the spin-1 matrices ``(tau_1, tau_2, tau_3)``.

    ``(tau_l)_{mn} = -i eps_{lmn}``; they are Hermitian, purely imaginary
    and satisfy ``[tau_l, tau_m] = i eps_{lmn} tau_n``.  The returned arrays
    are read-only views of module constants.
    """
    return _TAU[0], _TAU[1], _TAU[2]


def _block(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]])


@dataclass(frozen=True)
class RepMatrices:
    """Fixed 6x6 matrices of one representation.

    Attributes
    ----------
    rep : Representation
    beta : ndarray, shape (4, 6, 6)
        Contravariant ``beta^mu``.
    alpha, sigma : ndarray, shape (3, 6, 6)
        ``alpha_l = beta^0 beta^l`` and the spin matrices ``Sigma_l``.
    beta5 : ndarray, shape (6, 6)
        Chirality matrix.
    U : ndarray, shape (6, 6)
        Chiral-to-standard basis change (same array for both reps).
    """

    rep: Representation
    beta: np.ndarray
    alpha: np.ndarray
    sigma: np.ndarray
    beta5: np.ndarray
    U: np.ndarray

    @property
    def beta_lower(self) -> np.ndarray:
        """Covariant ``beta_mu = eta_{mu mu} beta^mu``."""
        out = self.beta.copy()
        out[0] *= -1
        return out

    def as_dict(self) -> dict[str, np.ndarray]:
        d = {"beta0": self.beta[0], "beta5": self.beta5, "U": self.U}
        for l in range(3):
            d[f"beta{l + 1}"] = self.beta[l + 1]
            d[f"alpha{l + 1}"] = self.alpha[l]
            d[f"sigma{l + 1}"] = self.sigma[l]
        return d


_I3 = np.eye(3, dtype=complex)
_Z3 = np.zeros((3, 3), dtype=complex)
_U = _frozen(_block(_I3, _I3, _I3, -_I3) / np.sqrt(2.0))


@functools.lru_cache(maxsize=None)
def build_matrices(rep: Representation | str) -> RepMatrices:
    """Construct ``beta^mu``, ``alpha``, ``Sigma``, ``beta5`` and ``U``.

    Parameters
    ----------
    rep : Representation or str

    Returns
    -------
    RepMatrices
        Read-only arrays; cached per representation.
    """
    rep = Representation.parse(rep)
    sigma = np.stack([_block(t, _Z3, _Z3, t) for t in _TAU])
    if rep is Representation.CHIRAL:
        b0 = _block(_Z3, _I3, _I3, _Z3)
        bl = [_block(_Z3, -t, t, _Z3) for t in _TAU]
        alpha = np.stack([_block(t, _Z3, _Z3, -t) for t in _TAU])
        beta5 = _block(_I3, _Z3, _Z3, -_I3)
    else:
        b0 = _block(_I3, _Z3, _Z3, -_I3)
        bl = [_block(_Z3, t, -t, _Z3) for t in _TAU]
        alpha = np.stack([_block(_Z3, t, t, _Z3) for t in _TAU])
        beta5 = _block(_Z3, _I3, _I3, _Z3)
    beta = np.stack([b0, *bl])
    return RepMatrices(rep, _frozen(beta), _frozen(alpha), _frozen(sigma), _frozen(beta5), _U)


def change_rep(m: np.ndarray, source: Representation | str, target: Representation | str) -> np.ndarray:
    """Conjugate a 6x6 matrix (or stack of them) between representations.

    Since ``U = U^{-1}``, both directions are ``U @ m @ U``.
    """
    if Representation.parse(source) is Representation.parse(target):
        return np.array(m, dtype=complex)
    return _U @ np.asarray(m) @ _U


_SMALL_SQ = 1e-16  # |a|^2 below which the Taylor branch of exp_tau is used


def exp_tau(a) -> np.ndarray:
    """Closed-form ``exp(i a . tau)`` for a complex 3-vector ``a``.

    Uses ``cos(a) + i (a.tau) sin(a)/a + a a^T (1 - cos a)/a^2`` with the
    bilinear square ``a^2 = a . a`` (no conjugation).  The three scalar
    factors are even functions of ``a``, so the result does not depend on the
    branch of the square root.  For ``|a^2| < 1e-16`` the factors switch to
    their 4th-order Taylor polynomials, which also covers null vectors
    (``a . a = 0`` with ``a != 0``) exactly.

    Parameters
    ----------
    a : array_like, shape (3,)

    Returns
    -------
    ndarray, shape (3, 3), complex
    """
    a = np.asarray(a, dtype=complex).reshape(3)
    a2 = a @ a
    if abs(a2) < _SMALL_SQ:
        cos_a = 1 - a2 / 2 + a2 * a2 / 24
        sinc = 1 - a2 / 6 + a2 * a2 / 120
        vers = 0.5 - a2 / 24 + a2 * a2 / 720
    else:
        root = np.sqrt(a2)
        cos_a = np.cos(root)
        sinc = np.sin(root) / root
        vers = (1 - cos_a) / a2
    a_tau = np.tensordot(a, _TAU, axes=1)
    return cos_a * _I3 + 1j * sinc * a_tau + vers * np.outer(a, a)


@dataclass(frozen=True)
class LorentzParams:
    """Rotation angles ``theta`` and rapidities ``zeta`` (both real 3-vectors)."""

    theta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    zeta: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=float).reshape(3)
        ze = np.asarray(self.zeta, dtype=float).reshape(3)
        if not (np.all(np.isfinite(th)) and np.all(np.isfinite(ze))):
            raise ValueError("Lorentz parameters must be finite")
        object.__setattr__(self, "theta", tuple(th.tolist()))
        object.__setattr__(self, "zeta", tuple(ze.tolist()))

    def omega_upper(self) -> np.ndarray:
        """Antisymmetric ``omega^{mu nu}`` with ``omega^{i0} = zeta^i`` and
        ``omega^{lm} = -eps^{lmn} theta_n``."""
        w = np.zeros((4, 4))
        th, ze = np.array(self.theta), np.array(self.zeta)
        w[1:, 0] = ze
        w[0, 1:] = -ze
        w[1:, 1:] = -np.tensordot(LEVI_CIVITA, th, axes=([2], [0]))
        return w


def lorentz_rep(rep: Representation | str, params: LorentzParams) -> np.ndarray:
    """Closed-form representation matrix of a proper Lorentz transformation.

    In the chiral layout this is ``diag(exp_tau(theta - i zeta),
    exp_tau(theta + i zeta))``; the standard one is its ``U``-conjugate.
    Both equal ``expm(i theta.Sigma + zeta.alpha)`` of the same layout.
    """
    rep = Representation.parse(rep)
    th = np.array(params.theta)
    ze = np.array(params.zeta)
    out = np.zeros((6, 6), dtype=complex)
    out[:3, :3] = exp_tau(th - 1j * ze)
    out[3:, 3:] = exp_tau(th + 1j * ze)
    if rep is Representation.STANDARD:
        out = _U @ out @ _U
    return out


def lorentz_rep_expm(rep: Representation | str, params: LorentzParams) -> np.ndarray:
    """Reference ``expm(-i omega_{mu nu} S^{mu nu} / 2)`` via scipy's Pade expm."""
    from scipy.linalg import expm

    s_up = spin_generators(rep, lower=False)
    w_up = params.omega_upper()
    w_low = METRIC @ w_up @ METRIC
    gen = -0.5j * np.einsum("mn,mnij->ij", w_low, s_up)
    return expm(gen)


@functools.lru_cache(maxsize=None)
def _spin_generators(rep: Representation, lower: bool) -> np.ndarray:
    m = build_matrices(rep)
    s = np.zeros((4, 4, 6, 6), dtype=complex)
    for l in range(3):
        s[0, l + 1] = -1j * m.alpha[l]
        s[l + 1, 0] = 1j * m.alpha[l]
        for k in range(3):
            s[l + 1, k + 1] = np.tensordot(LEVI_CIVITA[l, k], m.sigma, axes=1)
    if not lower:
        g = np.diag(METRIC)
        s = s * g[:, None, None, None] * g[None, :, None, None]
    return _frozen(s)


def spin_generators(rep: Representation | str, lower: bool = True) -> np.ndarray:
    """Spin generators ``S_{mu nu}`` (or ``S^{mu nu}``), shape (4, 4, 6, 6).

    ``S_{lm} = eps_{lmn} Sigma_n`` and ``S_{0l} = -i alpha_l``.
    """
    return _spin_generators(Representation.parse(rep), bool(lower))


def slash(v, rep: Representation | str) -> np.ndarray:
    """``beta^mu v_mu`` for a contravariant 4-vector ``v`` (complex allowed)."""
    m = build_matrices(rep)
    v = np.asarray(v, dtype=complex).reshape(4)
    v_low = v * np.diag(METRIC)
    return np.tensordot(v_low, m.beta, axes=1)
