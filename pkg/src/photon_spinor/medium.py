"""Six-component spinor fields in a linear, isotropic, inhomogeneous medium.

Units are ``hbar = c = eps0 = mu0 = 1``.  A medium is described by the
relative permittivity ``eps_r(t, x)`` and permeability ``mu_r(t, x)``;
the weighted spinor is built from ``sqrt(eps_r) E`` and ``sqrt(mu_r) H``
exactly like the vacuum one, and satisfies
``i beta^nu (d_nu - phi_nu) psi = 0`` with the scaled time derivative
``d_0 = n d/dt`` (``n = sqrt(eps_r mu_r)``) and the connection
``phi_nu = diag(chi_nu I3, eta_nu I3)`` (standard layout), where
``chi^nu = d_nu ln sqrt(eps_r)`` and ``eta^nu = d_nu ln sqrt(mu_r)``.
Lower time components carry the metric sign, ``chi_0 = -chi^0``.

In the chiral layout the connection is ``U phi U``, which is not block
diagonal; it mixes the right- and left-handed parts whenever
``chi != eta``.

Profiles are analytic: they are evaluated on
:class:`~photon_spinor.jets.Jet` objects so that every derivative entering
an operator identity is exact up to round-off.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .algebra import LEVI_CIVITA, Representation, build_matrices
from .errors import ConfigError, DegenerateMass, GridMismatch, NonPositiveMedium, SVEAViolated
from .exprparse import Expression, parse_expression
from .field import Grid, SpinorGridField, eh_from_spinor, node_norm_max
from .jets import Jet, variables
from . import kernels
from .reports import CheckRecord, max_abs

__all__ = [
    "SVEA_THRESHOLD",
    "MediumProfile",
    "MediumConnection",
    "MediumJets",
    "medium_connection",
    "medium_dirac_residual",
    "MediumResidual",
    "maxwell_medium_residual",
    "TestField",
    "second_order_check",
    "spin_orbit_magnitude",
    "default_sample_points",
    "assemble_medium_spinor",
    "envelope_reduction",
    "EnvelopeResult",
]

SVEA_THRESHOLD = 0.01

ProfileFn = Callable[..., object]


def _as_callable(spec) -> tuple[ProfileFn, str]:
    if isinstance(spec, Expression):
        return spec, spec.source
    if isinstance(spec, str):
        expr = parse_expression(spec)
        return expr, spec
    if isinstance(spec, (int, float)):
        value = float(spec)
        return (lambda **_: value), repr(value)
    if callable(spec):
        return spec, getattr(spec, "__name__", "callable")
    raise ConfigError(f"cannot interpret medium profile entry {spec!r}")


@dataclass(frozen=True)
class MediumProfile:
    """Relative permittivity and permeability as analytic functions.

    Each entry is an expression string, a number or a callable accepting
    keyword arguments ``t, x1, x2, x3`` that works on floats, arrays and
    :class:`~photon_spinor.jets.Jet` objects.
    """

    eps_r: object
    mu_r: object = 1.0
    eps_label: str = dc_field(init=False, default="")
    mu_label: str = dc_field(init=False, default="")

    def __post_init__(self):
        eps, eps_label = _as_callable(self.eps_r)
        mu, mu_label = _as_callable(self.mu_r)
        object.__setattr__(self, "eps_r", eps)
        object.__setattr__(self, "mu_r", mu)
        object.__setattr__(self, "eps_label", eps_label)
        object.__setattr__(self, "mu_label", mu_label)

    @classmethod
    def from_mapping(cls, data: Mapping) -> "MediumProfile":
        """Build from ``{"eps_r": "...", "mu_r": "..."}`` (``mu_r`` optional)."""
        if not isinstance(data, Mapping) or "eps_r" not in data:
            raise ConfigError("medium profile needs an 'eps_r' entry")
        extra = set(data) - {"eps_r", "mu_r", "description"}
        if extra:
            raise ConfigError(f"unknown medium profile keys {sorted(extra)}")
        return cls(data["eps_r"], data.get("mu_r", 1.0))

    @classmethod
    def from_json(cls, path: str | Path) -> "MediumProfile":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"profile file {path} is not valid JSON: {exc}") from None
        return cls.from_mapping(data)

    def _call(self, fn, t, x1, x2, x3):
        return fn(t=t, x1=x1, x2=x2, x3=x3)

    def values(self, points) -> tuple[np.ndarray, np.ndarray]:
        """Plain ``(eps_r, mu_r)`` at ``(..., 4)`` spacetime points."""
        pts = np.asarray(points, dtype=float)
        coords = [pts[..., i] for i in range(4)]
        eps = np.broadcast_to(np.asarray(self._call(self.eps_r, *coords), dtype=float), pts.shape[:-1])
        mu = np.broadcast_to(np.asarray(self._call(self.mu_r, *coords), dtype=float), pts.shape[:-1])
        self._check_positive(eps, mu)
        return eps, mu

    def jets(self, points, order: int = 2) -> tuple[Jet, Jet]:
        """Order-``order`` jets of ``(eps_r, mu_r)`` at ``(npts, 4)`` points."""
        coords = variables(points, order)
        out = []
        for fn in (self.eps_r, self.mu_r):
            value = self._call(fn, *coords)
            if not isinstance(value, Jet):
                value = Jet.constant(np.broadcast_to(np.asarray(value, dtype=float), coords[0].shape).copy(), order)
            out.append(value.broadcast(coords[0].shape))
        self._check_positive(out[0].c0, out[1].c0)
        return out[0], out[1]

    @staticmethod
    def _check_positive(eps, mu) -> None:
        eps = np.asarray(eps)
        mu = np.asarray(mu)
        if np.iscomplexobj(eps) or np.iscomplexobj(mu):
            raise NonPositiveMedium("medium profile evaluated to complex values")
        if not (np.all(np.isfinite(eps)) and np.all(np.isfinite(mu))):
            raise NonPositiveMedium("medium profile is not finite at the sampled points")
        if np.any(eps <= 0) or np.any(mu <= 0):
            raise NonPositiveMedium(
                f"medium must be positive: min eps_r = {float(np.min(eps)):.6g}, min mu_r = {float(np.min(mu)):.6g}"
            )

    def to_json(self) -> dict:
        return {"eps_r": self.eps_label, "mu_r": self.mu_label}


class MediumJets:
    """Connection data and first-order operators at a set of points.

    Parameters
    ----------
    profile : MediumProfile
    points : array_like, shape (npts, 4)
    rep : Representation or str

    Attributes
    ----------
    n : Jet (order 2)
        Refractive index.
    chi_up, eta_up : list of 4 Jet (order 1)
        ``d_nu ln sqrt(eps_r)`` and ``d_nu ln sqrt(mu_r)`` with ``d_0 = n d_t``.
    chi_low, eta_low : list of 4 Jet
        Same with the lower-index sign on the time component.
    grad_ln_n : list of 3 Jet (order 1)
    """

    def __init__(self, profile: MediumProfile, points, rep: Representation | str = Representation.STANDARD):
        self.rep = Representation.parse(rep)
        self.points = np.atleast_2d(np.asarray(points, dtype=float))
        eps, mu = profile.jets(self.points, order=2)
        self.eps, self.mu = eps, mu
        self.n = (eps * mu).sqrt()
        half_ln_eps = eps.log() * 0.5
        half_ln_mu = mu.log() * 0.5
        self.ln_n = half_ln_eps + half_ln_mu
        self.chi_up = [self.n * half_ln_eps.d(0)] + half_ln_eps.grad()
        self.eta_up = [self.n * half_ln_mu.d(0)] + half_ln_mu.grad()
        self.chi_low = [-self.chi_up[0]] + self.chi_up[1:]
        self.eta_low = [-self.eta_up[0]] + self.eta_up[1:]
        self.grad_ln_n = self.ln_n.grad()
        m = build_matrices(self.rep)
        self.matrices = m
        pe = np.diag([1.0, 1, 1, 0, 0, 0]).astype(complex)
        ph = np.eye(6) - pe
        if self.rep is Representation.CHIRAL:
            pe, ph = m.U @ pe @ m.U, m.U @ ph @ m.U
        self.proj_e, self.proj_h = pe, ph

    # scalar (npts,) jets times spinor (npts, 6) jets
    @staticmethod
    def scale(s: Jet, spinor: Jet) -> Jet:
        return s.expand(-1) * spinor

    def partial(self, nu: int, spinor: Jet) -> Jet:
        """``d_nu`` with the scaled time derivative ``d_0 = n d_t``."""
        if nu == 0:
            return self.scale(self.n, spinor.d(0))
        return spinor.d(nu)

    def phi(self, nu: int, spinor: Jet) -> Jet:
        """``phi_nu psi`` (lower index)."""
        return self.scale(self.chi_low[nu], spinor.apply(self.proj_e)) + self.scale(
            self.eta_low[nu], spinor.apply(self.proj_h)
        )

    def phi_matrix(self, nu: int) -> np.ndarray:
        """``phi_nu`` as ``(npts, 6, 6)`` matrices (values only)."""
        return self.chi_low[nu].c0[:, None, None] * self.proj_e + self.eta_low[nu].c0[:, None, None] * self.proj_h

    def covariant(self, nu: int, spinor: Jet) -> Jet:
        """``D_nu psi = (d_nu - phi_nu) psi``."""
        return self.partial(nu, spinor) - self.phi(nu, spinor)

    def dirac(self, spinor: Jet) -> Jet:
        """``beta^nu D_nu psi`` (matrix applied after the derivative)."""
        out = None
        for nu in range(4):
            term = self.covariant(nu, spinor).apply(self.matrices.beta[nu])
            out = term if out is None else out + term
        return out

    def dirac_left(self, spinor: Jet) -> Jet:
        """``D_nu (beta^nu psi)`` (derivative acting on the matrix product)."""
        out = None
        for nu in range(4):
            term = self.covariant(nu, spinor.apply(self.matrices.beta[nu]))
            out = term if out is None else out + term
        return out


def _connection_identity(mj: MediumJets) -> float:
    return max(max_abs(mj.grad_ln_n[l].c0 - (mj.chi_up[l + 1].c0 + mj.eta_up[l + 1].c0)) for l in range(3))


@dataclass(frozen=True)
class MediumConnection:
    """Connection sample at one spacetime point.

    Attributes
    ----------
    chi, eta : ndarray, shape (4,)
        Contravariant ``chi^nu`` and ``eta^nu``.
    phi : ndarray, shape (4, 6, 6)
        Lower-index ``phi_nu`` in the requested layout.
    n : float
    grad_ln_n : ndarray, shape (3,)
    identity_deviation : float
        ``max |grad ln n - (chi + eta)|``.
    """

    chi: np.ndarray
    eta: np.ndarray
    phi: np.ndarray
    n: float
    grad_ln_n: np.ndarray
    identity_deviation: float
    rep: Representation

    @property
    def effective_mass(self) -> float:
        """``|chi|`` (spatial part)."""
        return float(np.linalg.norm(self.chi[1:]))


def medium_connection(profile: MediumProfile, at, rep: Representation | str = Representation.STANDARD) -> MediumConnection:
    """Evaluate ``chi^nu``, ``eta^nu`` and ``phi_nu`` at one point ``(t, x1, x2, x3)``.

    Raises
    ------
    NonPositiveMedium
    """
    point = np.asarray(at, dtype=float).reshape(1, 4)
    mj = MediumJets(profile, point, rep)
    chi = np.array([j.c0[0] for j in mj.chi_up])
    eta = np.array([j.c0[0] for j in mj.eta_up])
    phi = np.stack([mj.phi_matrix(nu)[0] for nu in range(4)])
    grad = np.array([j.c0[0] for j in mj.grad_ln_n])
    return MediumConnection(chi, eta, phi, float(mj.n.c0[0]), grad, _connection_identity(mj), mj.rep)


# --------------------------------------------------------------------------
# first-order equation on grids


def _profile_on_grid(profile: MediumProfile, grid: Grid, time: float, rep) -> MediumJets:
    coords = grid.coordinates().reshape(-1, 3)
    points = np.column_stack([np.full(len(coords), float(time)), coords])
    return MediumJets(profile, points, rep)


def assemble_medium_spinor(E, H, profile: MediumProfile, rep, grid: Grid, time: float = 0.0) -> SpinorGridField:
    """Weighted spinor built from ``sqrt(eps_r) E`` and ``sqrt(mu_r) H`` on ``grid``."""
    from .field import assemble_spinor

    coords = grid.coordinates()
    t = np.full(coords.shape[:-1], float(time))
    eps, mu = profile.values(np.concatenate([t[..., None], coords], axis=-1))
    E = np.asarray(E) * np.sqrt(eps)[..., None]
    H = np.asarray(H) * np.sqrt(mu)[..., None]
    return assemble_spinor(E, H, rep, grid, time)


@dataclass(frozen=True)
class MediumResidual:
    """First-order medium equation evaluated on a grid.

    Attributes
    ----------
    dirac : float
        Max over nodes of the per-node norm of ``i beta^nu D_nu psi``.
    constraint_e, constraint_h : float
        Max of ``|(grad + chi) . (sqrt(eps) E)|`` and ``|(grad + eta) . (sqrt(mu) H)|``.
    residual : ndarray, shape (nx, ny, nz, 6)
        The pointwise residual, in the field's layout.
    """

    dirac: float
    constraint_e: float
    constraint_h: float
    residual: np.ndarray

    def to_json(self) -> dict:
        return {"dirac": self.dirac, "constraint_e": self.constraint_e, "constraint_h": self.constraint_h}


def medium_dirac_residual(
    field: SpinorGridField,
    dt_field: SpinorGridField,
    profile: MediumProfile,
    backend: str | None = None,
) -> MediumResidual:
    """Residual of ``i beta^nu (d_nu - phi_nu) psi = 0`` and of the two constraints.

    Parameters
    ----------
    field : SpinorGridField
        Medium-weighted spinor at ``field.time``.
    dt_field : SpinorGridField
        Its plain time derivative ``d psi / dt`` on the same grid; the
        operator applies the ``n`` factor itself.
    profile : MediumProfile
    backend : {"numba", "numpy"}, optional

    Notes
    -----
    Since ``beta^0 beta^0 = 1`` and ``beta^0 beta^l = alpha_l`` in both
    layouts, ``beta^nu d_nu psi = beta^0 (n d_t psi + alpha . grad psi)``,
    so the vacuum kernel is reused with ``n d_t psi`` in place of
    ``d_t psi``.  For a homogeneous medium the residual is ``beta^0``
    times the vacuum residual of the rescaled field and has identical
    per-node norms.

    Raises
    ------
    GridMismatch, NonPositiveMedium
    """
    field.same_grid(dt_field)
    if dt_field.rep is not field.rep:
        dt_field = dt_field.to(field.rep)
    grid = field.grid
    mj = _profile_on_grid(profile, grid, field.time, field.rep)
    shape = field.values.shape
    n = mj.n.c0.reshape(shape[:-1])
    m = mj.matrices
    scaled_dt = dt_field.values * n[..., None]
    vacuum_like = kernels.dirac_residual_field(
        field.values, scaled_dt, m.alpha, grid.spacing, grid.boundary, backend
    )
    flat = field.values.reshape(-1, 6)
    connection = np.zeros_like(flat)
    for nu in range(4):
        connection += np.einsum("ij,pj->pi", m.beta[nu], np.einsum("pij,pj->pi", mj.phi_matrix(nu), flat))
    residual = vacuum_like @ m.beta[0].T - 1j * connection.reshape(shape)

    F, G = eh_from_spinor(field.values, field.rep)  # sqrt(eps) E and sqrt(mu) H
    grad_f = kernels.gradient(F, grid.spacing, grid.boundary, backend)
    grad_g = kernels.gradient(G, grid.spacing, grid.boundary, backend)
    chi = np.stack([mj.chi_up[l].c0 for l in (1, 2, 3)], axis=-1).reshape(shape[:-1] + (3,))
    eta = np.stack([mj.eta_up[l].c0 for l in (1, 2, 3)], axis=-1).reshape(shape[:-1] + (3,))
    div_f = sum(grad_f[a][..., a] for a in range(3)) + np.sum(chi * F, axis=-1)
    div_g = sum(grad_g[a][..., a] for a in range(3)) + np.sum(eta * G, axis=-1)
    return MediumResidual(node_norm_max(residual), max_abs(div_f), max_abs(div_g), residual)


def _curl_direct(v: np.ndarray, grid: Grid) -> np.ndarray:
    """Curl by second-order differences written out with numpy primitives."""
    d = np.empty((3,) + v.shape, dtype=complex)
    for a in range(3):
        h = grid.spacing[a]
        if grid.boundary == "periodic":
            d[a] = (np.roll(v, -1, axis=a) - np.roll(v, 1, axis=a)) / (2 * h)
        elif grid.boundary == "open":
            d[a] = np.gradient(v, h, axis=a, edge_order=2)
        else:
            pad = [(0, 0)] * v.ndim
            pad[a] = (1, 1)
            p = np.pad(v, pad)
            n = v.shape[a]
            d[a] = (np.take(p, range(2, n + 2), axis=a) - np.take(p, range(0, n), axis=a)) / (2 * h)
    out = np.zeros(v.shape, dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                if LEVI_CIVITA[i, j, k]:
                    out[..., i] += LEVI_CIVITA[i, j, k] * d[j][..., k]
    return out


def maxwell_medium_residual(field: SpinorGridField, dt_field: SpinorGridField, profile: MediumProfile) -> np.ndarray:
    """Pointwise residual of the medium curl equations written in field variables.

    With ``F = sqrt(eps) E`` and ``G = sqrt(mu) H`` the two curl equations
    read ``(grad - eta) x G = n (d_t + d_t ln sqrt(eps)) F`` and
    ``(grad - chi) x F = -n (d_t + d_t ln sqrt(mu)) G``.  The residuals of
    both are packed into the spinor layout of ``field`` so that the result
    is directly comparable with :func:`medium_dirac_residual`; the curls
    are computed independently of the spinor kernels.
    """
    field.same_grid(dt_field)
    grid = field.grid
    shape = field.values.shape
    mj = _profile_on_grid(profile, grid, field.time, Representation.STANDARD)
    F, G = eh_from_spinor(field.values, field.rep)
    dF, dG = eh_from_spinor(dt_field.to(field.rep).values, field.rep)
    n = mj.n.c0.reshape(shape[:-1])[..., None]
    chi = np.stack([mj.chi_up[l].c0 for l in (1, 2, 3)], axis=-1).reshape(shape[:-1] + (3,))
    eta = np.stack([mj.eta_up[l].c0 for l in (1, 2, 3)], axis=-1).reshape(shape[:-1] + (3,))
    # chi^0 = n d_t ln sqrt(eps), so n d_t ln sqrt(eps) is chi^0 itself
    chi0 = mj.chi_up[0].c0.reshape(shape[:-1])[..., None]
    eta0 = mj.eta_up[0].c0.reshape(shape[:-1])[..., None]
    lhs1 = _curl_direct(G, grid) - np.cross(eta, G)
    rhs1 = n * dF + chi0 * F
    lhs2 = _curl_direct(F, grid) - np.cross(chi, F)
    rhs2 = -(n * dG + eta0 * G)
    up = 1j * (rhs1 - lhs1) / np.sqrt(2.0)
    lo = (lhs2 - rhs2) / np.sqrt(2.0)
    out = np.concatenate([up, lo], axis=-1)
    if field.rep is Representation.CHIRAL:
        out = out @ build_matrices(Representation.CHIRAL).U.T
    return out


# --------------------------------------------------------------------------
# second-order operator identities


@dataclass(frozen=True)
class TestField:
    """Smooth complex spinor field with exact derivatives.

    ``f(t, x) = (1 + a sin(q . (t, x))) * sum_j c_j exp(i (k_j . x - w_j t))``

    Attributes
    ----------
    waves : tuple of (k, w, c)
        ``k`` a 3-vector, ``w`` a frequency, ``c`` six complex amplitudes.
    modulation : float
        Envelope depth ``a``.
    mod_vector : 4-tuple
        ``q`` with the time component first.
    """

    __test__ = False  # keep pytest from collecting the class

    waves: tuple
    modulation: float = 0.3
    mod_vector: tuple = (0.5, 1.0, 0.7, -0.4)

    @classmethod
    def random(cls, seed: int = 0, nwaves: int = 3, modulation: float = 0.3) -> "TestField":
        rng = np.random.default_rng(seed)
        waves = tuple(
            (tuple(rng.normal(size=3)), float(rng.normal()), tuple(rng.normal(size=6) + 1j * rng.normal(size=6)))
            for _ in range(nwaves)
        )
        return cls(waves, modulation, tuple(rng.normal(size=4)))

    def jet(self, points, order: int = 2) -> Jet:
        """Spinor jet of shape ``(npts, 6)`` at ``(npts, 4)`` points."""
        t, x1, x2, x3 = variables(points, order)
        q = self.mod_vector
        envelope = (t * q[0] + x1 * q[1] + x2 * q[2] + x3 * q[3]).sin() * self.modulation + 1.0
        total = None
        for k, w, c in self.waves:
            phase = ((x1 * k[0] + x2 * k[1] + x3 * k[2] - t * w) * 1j).exp() * envelope
            term = phase.expand(-1) * np.asarray(c, dtype=complex)
            total = term if total is None else total + term
        return total


def _sum(terms) -> Jet:
    out = None
    for t in terms:
        out = t if out is None else out + t
    return out


class _SecondOrderTerms:
    """Every operator appearing in the second-order expansions, applied to one field.

    ``(D . beta) g`` is read as ``sum_l D_l (beta^l g)``: the covariant
    derivative acts on the product, which is what squaring the first-order
    operator produces.
    """

    def __init__(self, mj: MediumJets, f: Jet):
        self.mj, self.f = mj, f
        S, P, D, phi = mj.scale, mj.partial, mj.covariant, mj.phi
        m = mj.matrices
        beta = m.beta
        self.direct = mj.dirac_left(mj.dirac(f))

        self.lap = _sum(f.d(l).d(l) for l in (1, 2, 3))
        self.d0d0_plain = P(0, P(0, f))
        self.box = self.lap - self.d0d0_plain
        self.phi_phi = _sum(phi(l, phi(l, f)) for l in (1, 2, 3))
        self.phi_grad = _sum(phi(l, f.d(l)) for l in (1, 2, 3))
        self.div_phi = _sum(phi(l, f).d(l) for l in (1, 2, 3))
        self.phi_phi_4 = self.phi_phi - phi(0, phi(0, f))
        self.phi_grad_4 = self.phi_grad - phi(0, P(0, f))
        self.div_phi_4 = self.div_phi - P(0, phi(0, f))

        sigma = None
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    if LEVI_CIVITA[a, b, c]:
                        t = phi(b + 1, f.d(c + 1)).apply(m.sigma[a]) * (2j * LEVI_CIVITA[a, b, c])
                        sigma = t if sigma is None else sigma + t
        self.sigma_term = sigma
        self.omega = self._omega()

        self.d0d0 = D(0, D(0, f))
        beta_d = _sum(D(l, f).apply(beta[l]) for l in (1, 2, 3))
        self.spatial_square = _sum(D(l, beta_d.apply(beta[l])) for l in (1, 2, 3))
        self.commutators = [D(l, D(0, f)) - D(0, D(l, f)) for l in (1, 2, 3)]
        self.alpha_commutator = _sum(c.apply(m.alpha[l]) for l, c in enumerate(self.commutators))
        d0f = D(0, f)
        mix_space = _sum(S(mj.chi_low[mu] - mj.eta_low[mu], d0f.apply(beta[mu])) for mu in (1, 2, 3))
        self.mix_printed = mix_space + S(mj.chi_low[0] - mj.eta_low[0], d0f.apply(beta[0]))
        self.mix_corrected = mix_space - S(mj.chi_low[0] - mj.eta_low[0], beta_d)

        self.bracket = [
            S(mj.grad_ln_n[l - 1], P(0, f)) + self.dphi(0, l, f) * 2.0 - S(mj.grad_ln_n[l - 1], phi(0, f))
            for l in (1, 2, 3)
        ]
        self.alpha_bracket = _sum(b.apply(m.alpha[l]) for l, b in enumerate(self.bracket))

    def dphi(self, nu: int, l: int, g: Jet) -> Jet:
        """``(d_nu phi_l) g`` with the derivative acting on the connection only."""
        mj = self.mj
        a, b = mj.chi_low[l], mj.eta_low[l]
        da = mj.n * a.d(0) if nu == 0 else a.d(nu)
        db = mj.n * b.d(0) if nu == 0 else b.d(nu)
        return mj.scale(da, g.apply(mj.proj_e)) + mj.scale(db, g.apply(mj.proj_h))

    def _omega(self) -> Jet:
        # diag(X X^T, Y Y^T) acts on the E-like and H-like triplets of the
        # standard layout; in the chiral layout conjugate with U.
        mj, f = self.mj, self.f
        chiral = mj.rep is Representation.CHIRAL
        fs = f.apply(mj.matrices.U) if chiral else f
        comps = []
        for start, conn in ((0, mj.chi_low), (3, mj.eta_low)):
            div = _sum(fs[:, start + b].d(b + 1) - conn[b + 1] * fs[:, start + b] for b in range(3))
            comps += [div.d(a + 1) - conn[a + 1] * div for a in range(3)]
        out = Jet(np.stack([c.c0 for c in comps], axis=-1))
        return out.apply(mj.matrices.U) if chiral else out

    # assembled right-hand sides --------------------------------------------
    def spatial_square_printed(self) -> Jet:
        return -self.lap - self.phi_phi + self.phi_grad + self.div_phi + self.sigma_term + self.omega

    def spatial_square_corrected(self) -> Jet:
        return -self.lap - self.phi_phi + self.phi_grad + self.div_phi + self.omega

    def split_printed(self) -> Jet:
        return self.d0d0 + self.spatial_square - self.alpha_commutator + self.mix_printed

    def split_corrected(self) -> Jet:
        return self.d0d0 + self.spatial_square - self.alpha_commutator + self.mix_corrected

    def spin_orbit_printed(self) -> Jet:
        return self.sigma_term - self.alpha_bracket

    def spin_orbit_corrected(self) -> Jet:
        return -self.alpha_bracket

    def expanded_printed(self) -> Jet:
        rest = self.box - self.phi_phi_4 + self.phi_grad_4 - self.div_phi_4 + self.mix_printed + self.omega
        return rest + self.spin_orbit_printed()

    def expanded_corrected(self) -> Jet:
        rest = -self.box - self.phi_phi_4 + self.phi_grad_4 + self.div_phi_4 + self.mix_corrected + self.omega
        return rest + self.spin_orbit_corrected()


def _dev(a: Jet, b: Jet) -> float:
    return max_abs(a.c0 - b.c0)


def _is_matched_static(mj: MediumJets, tol: float = 1e-12) -> bool:
    scale = max(1.0, max(max_abs(j.c0) for j in mj.chi_up))
    same = all(max_abs(mj.chi_up[nu].c0 - mj.eta_up[nu].c0) <= tol * scale for nu in range(4))
    static = max_abs(mj.chi_up[0].c0) <= tol * scale and max_abs(mj.n.d(0).c0) <= tol * scale
    return same and static


def _matched_reduced(mj: MediumJets, f: Jet) -> tuple[Jet, Jet, Jet]:
    """Printed and corrected reduced operators for ``chi = eta`` in a static medium, plus the direct square."""
    T = _SecondOrderTerms(mj, f)
    S = mj.scale
    chi = mj.chi_up
    chi_sq = _sum(chi[l] * chi[l] for l in (1, 2, 3))
    chi_grad = _sum(S(chi[l], f.d(l)) for l in (1, 2, 3))
    div_chi = _sum(chi[l].d(l) for l in (1, 2, 3))
    n = mj.n
    n2_dtt = S(n * n, f.d(0).d(0))
    alpha_chi_dt = _sum(S(chi[l] * n, f.d(0)).apply(mj.matrices.alpha[l - 1]) for l in (1, 2, 3))
    printed = (
        -n2_dtt + T.lap - S(chi_sq, f) + chi_grad - S(div_chi, f) + T.omega + T.sigma_term - alpha_chi_dt * 2.0
    )
    corrected = n2_dtt - T.lap - S(chi_sq, f) + chi_grad * 2.0 + S(div_chi, f) + T.omega - alpha_chi_dt * 2.0
    return printed, corrected, T.direct


def default_sample_points(seed: int = 0, count: int = 16, half_width: float = 0.5) -> np.ndarray:
    """Reproducible spacetime sample points in ``[-w, w]^4``."""
    return np.random.default_rng(seed).uniform(-half_width, half_width, size=(count, 4))


def second_order_check(
    profile: MediumProfile,
    rep: Representation | str = Representation.STANDARD,
    points=None,
    fields=None,
    tol: float = 1e-11,
    seed: int = 0,
) -> "SuiteReport":
    """Check the commutator and squared-operator identities with exact derivatives.

    Every identity is evaluated on each test field at each sample point and
    reported as its worst absolute deviation.  Printed expansions and their
    corrected counterparts are reported as separate records so that a
    failing printed form is visible next to the form that holds.

    Parameters
    ----------
    profile : MediumProfile
    rep : Representation or str
    points : array_like, shape (npts, 4), optional
        Defaults to :func:`default_sample_points`.
    fields : sequence of TestField, optional
        Defaults to three random fields derived from ``seed``.
    tol : float
        Absolute tolerance applied to every identity record.

    Returns
    -------
    SuiteReport
        Records (``*_printed`` forms as stated in the source derivation,
        ``*_corrected`` forms as derived here):

        ``mixed_partial_commutator``
            ``(grad d0 - d0 grad) f = (grad ln n) d0 f``.
        ``connection_derivative_identity``
            ``(d0 phi - grad phi0) f`` rewritten with ``2 (d0 phi)``.
        ``covariant_commutator``
            ``D D0 - D0 D = (grad ln n) d0 + 2 (d0 phi) - (grad ln n) phi0``.
        ``spatial_square_printed`` / ``spatial_square_corrected``
            ``(D . beta)(beta . D)``; the corrected form has no ``Sigma`` term.
        ``square_split_printed`` / ``square_split_corrected``
            ``D0 D0 + (D . beta)(beta . D) - alpha . [D, D0] + mixing``.
        ``square_expanded_printed`` / ``square_expanded_corrected``
            The fully expanded square with the spin-orbit line separated.
        ``reduced_printed`` / ``reduced_corrected``
            Only for ``chi = eta`` static media.
        ``spin_orbit_printed_magnitude`` / ``spin_orbit_corrected_magnitude``
            Informational; both vanish for homogeneous media.
    """
    from .reports import SuiteReport

    rep = Representation.parse(rep)
    pts = default_sample_points(seed) if points is None else np.atleast_2d(np.asarray(points, dtype=float))
    if fields is None:
        fields = [TestField.random(seed * 97 + j) for j in range(3)]
    mj = MediumJets(profile, pts, rep)
    matched = _is_matched_static(mj)
    worst: dict[str, float] = {}

    def note(name, value):
        worst[name] = max(worst.get(name, 0.0), float(value))

    for tf in fields:
        f = tf.jet(pts) if isinstance(tf, TestField) else tf
        T = _SecondOrderTerms(mj, f)
        S, P, phi = mj.scale, mj.partial, mj.phi
        for l in (1, 2, 3):
            g = mj.grad_ln_n[l - 1]
            note("mixed_partial_commutator", _dev(P(l, P(0, f)) - P(0, P(l, f)), S(g, P(0, f))))
            lhs = P(0, phi(l, f)) - P(l, phi(0, f))
            rhs = T.dphi(0, l, f) * 2.0 - phi(0, P(l, f)) + phi(l, P(0, f)) - S(g, phi(0, f))
            note("connection_derivative_identity", _dev(lhs, rhs))
            note("covariant_commutator", _dev(T.commutators[l - 1], T.bracket[l - 1]))
        note("spatial_square_printed", _dev(T.spatial_square, T.spatial_square_printed()))
        note("spatial_square_corrected", _dev(T.spatial_square, T.spatial_square_corrected()))
        note("square_split_printed", _dev(T.direct, T.split_printed()))
        note("square_split_corrected", _dev(T.direct, T.split_corrected()))
        note("square_expanded_printed", _dev(T.direct, T.expanded_printed()))
        note("square_expanded_corrected", _dev(T.direct, T.expanded_corrected()))
        if matched:
            printed, corrected, direct = _matched_reduced(mj, f)
            note("reduced_printed", _dev(direct, printed))
            note("reduced_corrected", _dev(direct, corrected))
        note("spin_orbit_printed_magnitude", max_abs(T.spin_orbit_printed().c0))
        note("spin_orbit_corrected_magnitude", max_abs(T.spin_orbit_corrected().c0))

    report = SuiteReport(f"medium-second-order[{rep.value}]")
    for name, value in worst.items():
        informational = name.endswith("_magnitude")
        report.add(CheckRecord(name, value, None if informational else tol))
    return report


def spin_orbit_magnitude(profile: MediumProfile, rep="standard", points=None, fields=None, seed: int = 0) -> dict:
    """Largest value of the spin-orbit operator line over test fields, printed and corrected."""
    rep = Representation.parse(rep)
    pts = default_sample_points(seed) if points is None else np.atleast_2d(np.asarray(points, dtype=float))
    fields = fields or [TestField.random(seed * 97 + j) for j in range(3)]
    mj = MediumJets(profile, pts, rep)
    out = {"printed": 0.0, "corrected": 0.0}
    for tf in fields:
        T = _SecondOrderTerms(mj, tf.jet(pts))
        out["printed"] = max(out["printed"], max_abs(T.spin_orbit_printed().c0))
        out["corrected"] = max(out["corrected"], max_abs(T.spin_orbit_corrected().c0))
    return out


# --------------------------------------------------------------------------
# envelope (Schroedinger-like) reduction


@dataclass(frozen=True)
class EnvelopeResult:
    """Outcome of :func:`envelope_reduction`.

    Attributes
    ----------
    m_eff : ndarray
        ``|chi|`` at each sample point.
    svea_ratios : tuple of float
        ``max |d_t psi'| / |psi' m/n|`` and ``max |d_t^2 psi'| / |psi' m/n|``.
    schrodinger_residual : float
        Max per-point norm of ``i n d_t psi' - H psi'``, with ``H`` the
        envelope Hamiltonian including the spin-orbit line.
    dropped_terms : float
        Max of ``|n^2 d_t^2 psi' + 2 n (alpha . chi) d_t psi'| / (2 m_eff)``,
        the terms the slowly-varying envelope approximation discards.
    substitution_deviation : float
        Exactness of the reduction algebra: ``L psi / e - 2 m R - dropped``
        where ``L`` is the reduced second-order operator, ``e`` the carrier
        ``exp(-i m t / n)`` and ``R`` the Schroedinger residual.
    spin_orbit : float
        Max per-point norm of the spin-orbit line.
    mass_over_n_rate : float
        ``max |d_t (m_eff / n)|``; zero under the preconditions.
    """

    m_eff: np.ndarray
    svea_ratios: tuple[float, float]
    schrodinger_residual: float
    dropped_terms: float
    substitution_deviation: float
    spin_orbit: float
    mass_over_n_rate: float
    svea_threshold: float = SVEA_THRESHOLD

    def to_json(self) -> dict:
        return {
            "m_eff_min": float(np.min(self.m_eff)),
            "m_eff_max": float(np.max(self.m_eff)),
            "svea_ratios": list(self.svea_ratios),
            "svea_threshold": self.svea_threshold,
            "schrodinger_residual": self.schrodinger_residual,
            "dropped_terms": self.dropped_terms,
            "substitution_deviation": self.substitution_deviation,
            "spin_orbit": self.spin_orbit,
            "mass_over_n_rate": self.mass_over_n_rate,
        }


def _node_norms(values: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(values) ** 2, axis=-1))


def envelope_reduction(
    profile: MediumProfile,
    envelope: TestField | Callable[[np.ndarray], Jet],
    points,
    rep: Representation | str = Representation.STANDARD,
    svea_threshold: float = SVEA_THRESHOLD,
    precondition_tol: float = 1e-10,
    mass_floor: float = 1e-12,
) -> EnvelopeResult:
    """Reduce the matched-medium second-order equation to an envelope equation.

    Requires ``chi = eta`` and ``chi^0 = eta^0 = 0`` at every sample point.
    The envelope ``psi'`` is related to the full field by
    ``psi = psi' exp(-i m_eff t / n)``; the carrier rate ``m_eff / n`` is
    frozen at each sample point.

    Parameters
    ----------
    profile : MediumProfile
    envelope : TestField or callable
        The envelope ``psi'``; a callable receives the ``(npts, 4)`` points
        and returns a ``(npts, 6)`` :class:`Jet` of order 2.
    points : array_like, shape (npts, 4)
    rep : Representation or str
    svea_threshold : float
        Upper bound on both slowly-varying-envelope ratios.

    Raises
    ------
    ConfigError
        When the medium is not matched (``chi != eta``) or not static.
    DegenerateMass
        When ``m_eff`` vanishes at a sample point.
    SVEAViolated
        When a slowly-varying-envelope ratio exceeds ``svea_threshold``.
    """
    rep = Representation.parse(rep)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    mj = MediumJets(profile, pts, rep)
    chi = mj.chi_up
    scale = max(1.0, max(max_abs(j.c0) for j in chi))
    if any(max_abs(chi[nu].c0 - mj.eta_up[nu].c0) > precondition_tol * scale for nu in range(4)):
        raise ConfigError("envelope reduction needs eps_r and mu_r with equal log-gradients (chi = eta)")
    if max_abs(chi[0].c0) > precondition_tol * scale:
        raise ConfigError("envelope reduction needs a static medium (chi^0 = eta^0 = 0)")

    m_jet = _sum(chi[l] * chi[l] for l in (1, 2, 3))
    m_eff = np.sqrt(m_jet.c0)
    if np.min(m_eff) <= mass_floor:
        raise DegenerateMass(
            f"effective mass |chi| vanishes (min {float(np.min(m_eff)):.3g}); the envelope equation divides by it"
        )
    m_jet = m_jet.sqrt()
    mass_over_n_rate = max_abs((m_jet / mj.n.truncate(1)).d(0).c0)

    psi_p = envelope.jet(pts) if isinstance(envelope, TestField) else envelope(pts)
    n = mj.n.c0
    rate = m_eff / n
    amp = _node_norms(psi_p.c0) * rate
    dt1 = _node_norms(psi_p.d(0).c0)
    dt2 = _node_norms(psi_p.d(0).d(0).c0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = (float(np.max(np.where(amp > 0, dt1 / amp, 0.0))), float(np.max(np.where(amp > 0, dt2 / amp, 0.0))))
    if max(ratios) > svea_threshold:
        raise SVEAViolated(
            f"slowly-varying envelope ratios {ratios[0]:.3g}, {ratios[1]:.3g} exceed {svea_threshold:g}"
        )

    # envelope Hamiltonian H psi' (matched static medium, standard reduction)
    S = mj.scale
    alpha = mj.matrices.alpha
    m_const = Jet.constant(m_eff, psi_p.order)
    chi_grad = _sum(S(chi[l], psi_p.d(l)) for l in (1, 2, 3))
    div_chi = _sum(chi[l].d(l) for l in (1, 2, 3))
    T = _SecondOrderTerms(mj, psi_p)
    lap = T.lap
    sigma_cross = T.sigma_term * 0.5  # i Sigma . (chi x grad); phi = chi here
    alpha_chi = _sum(psi_p.apply(alpha[l - 1]) * chi[l].c0[:, None] for l in (1, 2, 3))
    inv2m = (1.0 / (2.0 * m_eff))[:, None]
    spin_orbit = -(sigma_cross.c0 + 1j * alpha_chi.c0 * m_eff[:, None]) / m_eff[:, None]
    hamiltonian = -lap.c0 * inv2m + (S(div_chi, psi_p) - chi_grad - T.omega).c0 * inv2m + spin_orbit
    lhs = 1j * n[:, None] * psi_p.d(0).c0
    residual = lhs - hamiltonian

    dropped = -(n**2)[:, None] * psi_p.d(0).d(0).c0 - 2.0 * n[:, None] * _sum(
        psi_p.d(0).apply(alpha[l - 1]) * chi[l].c0[:, None] for l in (1, 2, 3)
    ).c0

    # full reduced operator on psi = psi' exp(-i rate t), rate frozen per point
    t = variables(pts, psi_p.order)[0]
    carrier = (t * Jet.constant(rate, psi_p.order) * (-1j)).exp()
    psi = S(carrier, psi_p)
    printed, _, _ = _matched_reduced(mj, psi)
    reduced_over_carrier = printed.c0 / carrier.c0[:, None]
    substitution = reduced_over_carrier - (2.0 * m_eff[:, None] * residual + dropped)

    return EnvelopeResult(
        m_eff=m_eff,
        svea_ratios=ratios,
        schrodinger_residual=float(np.max(_node_norms(residual))),
        dropped_terms=float(np.max(_node_norms(dropped) / (2.0 * m_eff))),
        substitution_deviation=float(np.max(_node_norms(substitution))),
        spin_orbit=float(np.max(_node_norms(spin_orbit))),
        mass_over_n_rate=mass_over_n_rate,
        svea_threshold=svea_threshold,
    )
