"""Diagonal metrics, tetrad connection coefficients and circular photon orbits.

Geometrized units ``c = G = hbar = 1``.  A diagonal metric
``ds^2 = -a0^2 dt^2 + a1^2 dx1^2 + a2^2 dx2^2 + a3^2 dx3^2`` has the
orthonormal tetrad ``e_mu = a_mu^{-1} d_mu`` whose commutators define the
structure constants ``C_{kappa lambda nu}``; the spin-connection
coefficients follow as
``Gamma_{kappa lambda mu} = -(C_{kappa lambda mu} + C_{lambda mu kappa} - C_{mu kappa lambda}) / 2``.

Two Schwarzschild charts are built in: the standard one with coordinates
``(t, r, theta, phi)`` and the isotropic one with Cartesian
``(t, rho_1, rho_2, rho_3)``, ``r = rho (1 + rs / 4 rho)^2``.

Coefficient functions are written so that they accept floats, complex
numbers (for complex-step differentiation) and
:class:`~photon_spinor.jets.Jet` objects.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import METRIC, Representation, build_matrices, spin_generators
from .errors import DomainViolation, InvalidAngularMomentum, RootNotBracketed
from .jets import Jet, variables
from .reports import CheckRecord, SuiteReport, max_abs
from .rootfind import RootResult, find_roots

__all__ = [
    "Chart",
    "DiagonalMetric",
    "SchwarzschildParams",
    "ConnectionData",
    "OrbitResult",
    "minkowski",
    "schwarzschild_standard",
    "schwarzschild_isotropic",
    "connection_coefficients",
    "brute_force_connection",
    "random_domain_points",
    "CurvedDiracOperator",
    "curved_dirac_operator",
    "curved_dirac_check",
    "classical_orbit",
    "shape_equation_rhs",
    "circular_orbit_standard",
    "standard_frequency_roots",
    "averaged_extremal_radius",
    "circular_orbit_isotropic",
    "isotropic_constants",
    "helicity_split_radii",
    "HelicitySplit",
    "connection_oracle_check",
    "photon_sphere_rho",
    "effective_potential",
    "helicity_branch_omega_sq",
    "scan_potential",
    "radius_from_rho",
    "rho_from_radius",
]

COMPLEX_STEP = 1e-30
ETA = np.diag(METRIC)
DOMAIN_EPS = 1e-9
SCAN_OUTER = 20.0


def _sqrt(x):
    return x.sqrt() if isinstance(x, Jet) else np.sqrt(x)


def _sin(x):
    return x.sin() if isinstance(x, Jet) else np.sin(x)


def _cos(x):
    return x.cos() if isinstance(x, Jet) else np.cos(x)


def _real(x) -> float:
    return float(np.real(x.c0 if isinstance(x, Jet) else x))


class Chart(str, enum.Enum):
    STANDARD = "standard"
    ISOTROPIC = "isotropic"

    @classmethod
    def parse(cls, value: "Chart | str") -> "Chart":
        if isinstance(value, Chart):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown chart {value!r}; use 'standard' or 'isotropic'") from None


@dataclass(frozen=True)
class DiagonalMetric:
    """``ds^2 = -a0^2 dt^2 + sum_l a_l^2 dx_l^2``.

    Parameters
    ----------
    name : str
    coefficients : callable
        ``coefficients(x) -> (a0, a1, a2, a3)`` for a 4-sequence ``x``;
        must work on floats, complex numbers and jets.
    partials : callable, optional
        ``partials(x) -> ndarray (4, 4)`` with entry ``[nu, mu] = d_nu a_mu``.
        When omitted, complex-step differentiation of ``coefficients`` is used.
    domain : callable, optional
        ``domain(x)`` raises :class:`DomainViolation` outside the chart.
    labels : tuple of str
    """

    name: str
    coefficients: Callable
    partials: Callable | None = None
    domain: Callable | None = None
    labels: tuple[str, ...] = ("t", "x1", "x2", "x3")

    def check(self, x) -> None:
        if self.domain is not None:
            self.domain(x)
        a = np.array([_real(v) for v in self.coefficients(x)])
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise DomainViolation(f"{self.name}: metric coefficients must be positive, got {a.tolist()} at {list(x)}")

    def values(self, x) -> np.ndarray:
        self.check(x)
        return np.array([_real(v) for v in self.coefficients(list(map(float, x)))])

    def derivative_matrix(self, x) -> np.ndarray:
        """``[nu, mu] = d_nu a_mu`` at ``x``."""
        self.check(x)
        if self.partials is not None:
            return np.asarray(self.partials(list(map(float, x))), dtype=float)
        return complex_step_jacobian(lambda y: np.array(self.coefficients(y)), x)


def complex_step_jacobian(fn: Callable, x, h: float = COMPLEX_STEP) -> np.ndarray:
    """``[nu, ...] = d fn / d x_nu`` by complex-step differentiation."""
    x = np.asarray(x, dtype=float)
    rows = []
    for nu in range(len(x)):
        y = x.astype(complex)
        y[nu] += 1j * h
        rows.append(np.imag(np.asarray(fn(list(y)), dtype=complex)) / h)
    return np.array(rows)


def minkowski() -> DiagonalMetric:
    return DiagonalMetric(
        "minkowski",
        lambda x: (1.0, 1.0, 1.0, 1.0),
        lambda x: np.zeros((4, 4)),
    )


@dataclass(frozen=True)
class SchwarzschildParams:
    """Schwarzschild radius and chart.

    Raises
    ------
    DomainViolation
        When ``rs`` is not positive and finite.
    """

    rs: float = 1.0
    chart: Chart = Chart.STANDARD

    def __post_init__(self):
        if not (math.isfinite(self.rs) and self.rs > 0):
            raise DomainViolation(f"Schwarzschild radius must be positive, got {self.rs}")
        object.__setattr__(self, "chart", Chart.parse(self.chart))

    def metric(self) -> DiagonalMetric:
        if self.chart is Chart.STANDARD:
            return schwarzschild_standard(self.rs)
        return schwarzschild_isotropic(self.rs)


def schwarzschild_standard(rs: float = 1.0) -> DiagonalMetric:
    """Standard chart ``(t, r, theta, phi)``."""

    def coefficients(x):
        r, theta = x[1], x[2]
        s = 1.0 - rs / r
        root = _sqrt(s)
        return root, 1.0 / root, r, r * _sin(theta)

    def partials(x):
        r, theta = x[1], x[2]
        s = 1.0 - rs / r
        d = np.zeros((4, 4))
        d[1, 0] = (rs / r**2) / (2.0 * math.sqrt(s))
        d[1, 1] = -(rs / r**2) / (2.0 * s**1.5)
        d[1, 2] = 1.0
        d[1, 3] = math.sin(theta)
        d[2, 3] = r * math.cos(theta)
        return d

    def domain(x):
        r, theta = _real(x[1]), _real(x[2])
        if not r > rs:
            raise DomainViolation(f"standard chart needs r > rs = {rs}, got r = {r}")
        if not 0.0 < theta < math.pi:
            raise DomainViolation(f"standard chart needs 0 < theta < pi, got theta = {theta}")

    return DiagonalMetric(f"schwarzschild-standard(rs={rs})", coefficients, partials, domain, ("t", "r", "theta", "phi"))


def _iso_rho(x):
    return _sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3])


def schwarzschild_isotropic(rs: float = 1.0) -> DiagonalMetric:
    """Isotropic chart ``(t, rho_1, rho_2, rho_3)``."""

    def coefficients(x):
        q = rs / (_iso_rho(x) * 4.0)
        a0 = (1.0 - q) / (q + 1.0)
        a = (q + 1.0) * (q + 1.0)
        return a0, a, a, a

    def partials(x):
        rho = math.sqrt(x[1] ** 2 + x[2] ** 2 + x[3] ** 2)
        q = rs / (4.0 * rho)
        da0 = 2.0 * q / (rho * (1.0 + q) ** 2)
        da = -2.0 * q * (1.0 + q) / rho
        d = np.zeros((4, 4))
        for l in (1, 2, 3):
            unit = x[l] / rho
            d[l, 0] = da0 * unit
            d[l, 1:] = da * unit
        return d

    def domain(x):
        rho = float(np.sqrt(sum(_real(x[l]) ** 2 for l in (1, 2, 3))))
        if not rho > rs / 4.0:
            raise DomainViolation(f"isotropic chart needs rho > rs/4 = {rs / 4}, got rho = {rho}")

    return DiagonalMetric(f"schwarzschild-isotropic(rs={rs})", coefficients, partials, domain, ("t", "rho1", "rho2", "rho3"))


def radius_from_rho(rho: float, rs: float) -> float:
    """``r = rho (1 + rs / 4 rho)^2``."""
    return rho * (1.0 + rs / (4.0 * rho)) ** 2


def rho_from_radius(r: float, rs: float) -> float:
    """Inverse of :func:`radius_from_rho` on ``r > rs``."""
    if not r >= rs:
        raise DomainViolation(f"r must be at least rs = {rs}, got {r}")
    return (r - rs / 2.0 + math.sqrt(r * r - rs * r)) / 2.0


# --------------------------------------------------------------------------
# connection coefficients


@dataclass(frozen=True)
class ConnectionData:
    """Structure constants and connection coefficients at one point.

    ``C[k, l, n] = C_{k l n}`` and ``Gamma[k, l, m] = Gamma_{k l m}``,
    both with lower tetrad indices.
    """

    C: np.ndarray
    Gamma: np.ndarray
    point: tuple[float, ...]

    def antisymmetry_deviation(self) -> float:
        return max(max_abs(self.C + np.swapaxes(self.C, 0, 1)), max_abs(self.Gamma + np.swapaxes(self.Gamma, 0, 1)))


def gamma_from_structure(C: np.ndarray) -> np.ndarray:
    """``Gamma_{k l m} = -(C_{k m l} + C_{m l k} - C_{l k m}) / 2``.

    The first two indices form the antisymmetric Lorentz pair and ``m`` is
    the direction of the covariant derivative.
    """
    return -(
        np.einsum("kml->klm", C) + np.einsum("mlk->klm", C) - np.einsum("lkm->klm", C)
    ) / 2.0


def gamma_from_structure_unpaired(C: np.ndarray) -> np.ndarray:
    """``-(C_{k l m} + C_{l m k} - C_{m k l}) / 2``, kept for comparison.

    This index arrangement is not antisymmetric in its first two indices
    for the diagonal tetrads used here.
    """
    return -(C + np.einsum("lmk->klm", C) - np.einsum("mkl->klm", C)) / 2.0


def connection_coefficients(metric: DiagonalMetric, x) -> ConnectionData:
    """Closed-form structure constants of the diagonal tetrad.

    For ``k != l`` the only nonzero constants are
    ``C_{k l l} = -eta_{ll} a_k^{-1} d_k ln a_l`` and
    ``C_{k l k} = eta_{kk} a_l^{-1} d_l ln a_k``.

    Raises
    ------
    DomainViolation
    """
    a = metric.values(x)
    d = metric.derivative_matrix(x)
    dln = d / a[None, :]  # [nu, mu] = d_nu ln a_mu
    C = np.zeros((4, 4, 4))
    for k in range(4):
        for l in range(4):
            if k == l:
                continue
            C[k, l, l] = -ETA[l] * dln[k, l] / a[k]
            C[k, l, k] = ETA[k] * dln[l, k] / a[l]
    return ConnectionData(C, gamma_from_structure(C), tuple(map(float, x)))


def brute_force_connection(metric: DiagonalMetric, x, h: float = COMPLEX_STEP) -> ConnectionData:
    """Connection coefficients from the general vierbein-commutator formula.

    Builds the full vierbein matrix ``V[a, mu]`` and its inverse, takes
    derivatives of every entry by complex step, and contracts
    ``C_{ab}^d = V^d_mu (V_a^nu d_nu V_b^mu - V_b^nu d_nu V_a^mu)`` without
    using diagonality anywhere.
    """
    metric.check(x)

    def vierbein(y):
        a = metric.coefficients(y)
        return np.diag([1.0 / v for v in a]).astype(complex)

    V = np.real(vierbein(list(map(float, x))))
    W = np.linalg.inv(V)  # W[mu, d] = V^d_mu
    dV = complex_step_jacobian(lambda y: vierbein(y), x, h)  # [nu, b, mu]
    term = np.einsum("an,nbm->abm", V, dV)
    C_up = np.einsum("md,abm->abd", W, term - np.swapaxes(term, 0, 1))
    C = C_up * ETA[None, None, :]
    return ConnectionData(C, gamma_from_structure(C), tuple(map(float, x)))


def random_domain_points(params: SchwarzschildParams, count: int, seed: int = 0) -> np.ndarray:
    """Reproducible random points inside the chart (``r`` or ``rho`` up to 20 rs)."""
    rng = np.random.default_rng(seed)
    rs = params.rs
    t = rng.uniform(-5, 5, count)
    if params.chart is Chart.STANDARD:
        r = rs * rng.uniform(1.05, 20.0, count)
        theta = rng.uniform(0.1, math.pi - 0.1, count)
        phi = rng.uniform(0, 2 * math.pi, count)
        return np.column_stack([t, r, theta, phi])
    rho = rs * rng.uniform(0.25 * 1.05, 20.0, count)
    direction = rng.normal(size=(count, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    return np.column_stack([t, rho[:, None] * direction])


# --------------------------------------------------------------------------
# curved-spacetime first-order operator


@dataclass
class CurvedDiracOperator:
    """``i beta^mu (e_mu - i Gamma_{k l mu} S^{k l} / 2)`` for a diagonal metric.

    Apply it to a spinor :class:`Jet` sampled at ``points`` (one row per
    point, columns ``t, x1, x2, x3``).
    """

    metric: DiagonalMetric
    rep: Representation

    def __post_init__(self):
        self.matrices = build_matrices(self.rep)
        self.S_upper = spin_generators(self.rep, lower=False)

    def connection_matrix(self, x) -> np.ndarray:
        """``sum_{k l mu} beta^mu Gamma_{k l mu} S^{k l} / 2``."""
        G = connection_coefficients(self.metric, x).Gamma
        return np.einsum("klm,mij,kljs->is", G, self.matrices.beta, self.S_upper) / 2.0

    def apply(self, psi: Jet, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        beta = self.matrices.beta
        out = np.zeros(psi.c0.shape, dtype=complex)
        for p, x in enumerate(pts):
            a = self.metric.values(x)
            acc = sum(beta[mu] @ psi.c1[mu, p] / a[mu] for mu in range(4))
            acc = acc - 1j * (self.connection_matrix(x) @ psi.c0[p])
            out[p] = 1j * acc
        return out

    def apply_expanded(self, psi: Jet, points) -> np.ndarray:
        """The same operator written with logarithmic derivatives of the coefficients.

        ``a0^{-1} i beta^0 d_0 psi + sum_l a_l^{-1} i beta^l (d_l + d_l ln(a0 a_{l+1})) psi``
        plus the three ``beta Sigma`` terms with ``d_l ln(a_{l+1} / a_{l+2})``
        (indices cyclic in 1..3).
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        m = self.matrices
        beta, sigma = m.beta, m.sigma
        out = np.zeros(psi.c0.shape, dtype=complex)
        for p, x in enumerate(pts):
            a = self.metric.values(x)
            dln = self.metric.derivative_matrix(x) / a[None, :]
            v = psi.c0[p]
            acc = 1j * beta[0] @ psi.c1[0, p] / a[0]
            for l in (1, 2, 3):
                nxt = l % 3 + 1
                after = nxt % 3 + 1
                acc = acc + 1j * beta[l] @ (psi.c1[l, p] + (dln[l, 0] + dln[l, nxt]) * v) / a[l]
                # beta^{after} Sigma^{nxt} d_l ln(a_nxt / a_after) / a_l
                acc = acc + beta[after] @ sigma[nxt - 1] @ v * (dln[l, nxt] - dln[l, after]) / a[l]
            out[p] = acc
        return out


def curved_dirac_operator(metric: DiagonalMetric, rep: Representation | str = Representation.STANDARD) -> CurvedDiracOperator:
    return CurvedDiracOperator(metric, Representation.parse(rep))


def _random_spinor_jet(points, seed: int) -> Jet:
    from .medium import TestField

    return TestField.random(seed).jet(points, order=1)


def _standard_chart_rhs(psi: Jet, points, rs: float, matrices) -> np.ndarray:
    """Right-hand side of the standard-chart Hamiltonian form ``i d_t psi = H psi``."""
    alpha, sigma = matrices.alpha, matrices.sigma
    out = np.zeros(psi.c0.shape, dtype=complex)
    for p, (t, r, th, ph) in enumerate(np.atleast_2d(points)):
        s = 1.0 - rs / r
        v, d = psi.c0[p], psi.c1[:, p]
        cot = math.cos(th) / math.sin(th)
        out[p] = (
            -1j * s * alpha[0] @ (d[1] + v / r)
            - 1j * math.sqrt(s) / r * alpha[1] @ (d[2] + cot * v)
            - 1j * math.sqrt(s) / (r * math.sin(th)) * alpha[2] @ d[3]
            - 1j * rs / (2 * r * r) * alpha[0] @ v
            - math.sqrt(s) * cot / r * alpha[0] @ sigma[2] @ v
        )
    return out


def _isotropic_profiles(rs: float, rho: float, unit: np.ndarray) -> tuple[float, np.ndarray]:
    """Equivalent index ``eta = a0^{-1} a`` and ``Pi = grad ln sqrt(varpi)`` from their closed forms."""
    q = rs / (4.0 * rho)
    eta = (1.0 + q) ** 3 / (1.0 - q)
    pi_rho = 2.0 * q * q / (rho * (1.0 - q * q))
    return eta, pi_rho * unit


def curved_dirac_check(
    params: SchwarzschildParams,
    rep: Representation | str = Representation.STANDARD,
    points=None,
    count: int = 12,
    seed: int = 0,
    tol: float = 1e-12,
) -> SuiteReport:
    """Compare the connection form of the curved operator with its expansions.

    Records
    -------
    ``connection_vs_expanded``
        Connection form against the logarithmic-derivative form.
    ``connection_pair_antisymmetry``
        ``Gamma_{k l m} + Gamma_{l k m}``.
    ``unpaired_index_order_gap``
        Informational: size of the operator change under the alternative
        index arrangement of :func:`gamma_from_structure_unpaired`.
    ``hamiltonian_form`` (standard chart)
        ``a0 beta^0`` times the operator against ``i d_t psi - H psi``.
    ``equivalent_medium_form`` (isotropic chart)
        ``a`` times the operator against
        ``i beta^0 eta d_t psi + i beta^l (d_l + Pi_l) psi``.
    ``conformal_rescaling`` (isotropic chart)
        With ``psi = varpi^{-1/2} phi``, the operator against
        ``varpi^{-1/2} i beta^mu d'_mu phi``, ``d'_0 = eta d_t``.
    """
    rep = Representation.parse(rep)
    metric = params.metric()
    op = curved_dirac_operator(metric, rep)
    pts = random_domain_points(params, count, seed) if points is None else np.atleast_2d(np.asarray(points, float))
    m = op.matrices
    report = SuiteReport(f"curved-dirac[{params.chart.value},{rep.value}]")

    psi = _random_spinor_jet(pts, seed)
    direct = op.apply(psi, pts)
    scale = max(1.0, max_abs(direct))
    report.add(CheckRecord("connection_vs_expanded", max_abs(direct - op.apply_expanded(psi, pts)) / scale, tol, relative=True))

    antisym, unpaired_gap = 0.0, 0.0
    for p, x in enumerate(pts):
        data = connection_coefficients(metric, x)
        antisym = max(antisym, max_abs(data.Gamma + np.swapaxes(data.Gamma, 0, 1)))
        other = gamma_from_structure_unpaired(data.C)
        swapped = np.einsum("klm,mij,kljs->is", other - data.Gamma, m.beta, op.S_upper) / 2.0
        unpaired_gap = max(unpaired_gap, max_abs(swapped @ psi.c0[p]) / scale)
    report.add(CheckRecord("connection_pair_antisymmetry", antisym, tol))
    report.add(
        CheckRecord(
            "unpaired_index_order_gap",
            unpaired_gap,
            None,
            notes="operator change if the unpaired index arrangement were used; informational",
        )
    )

    if params.chart is Chart.STANDARD:
        a0 = np.array([metric.values(x)[0] for x in pts])
        lhs = a0[:, None] * (direct @ m.beta[0].T)
        rhs = 1j * psi.c1[0] - _standard_chart_rhs(psi, pts, params.rs, m)
        report.add(CheckRecord("hamiltonian_form", max_abs(lhs - rhs) / scale, tol, relative=True))
    else:
        a = np.array([metric.values(x)[1] for x in pts])
        medium = np.zeros_like(direct)
        for p, x in enumerate(pts):
            rho = float(np.linalg.norm(x[1:]))
            eta, Pi = _isotropic_profiles(params.rs, rho, x[1:] / rho)
            v, d = psi.c0[p], psi.c1[:, p]
            medium[p] = 1j * eta * m.beta[0] @ d[0] + sum(1j * m.beta[l] @ (d[l] + Pi[l - 1] * v) for l in (1, 2, 3))
        report.add(CheckRecord("equivalent_medium_form", max_abs(a[:, None] * direct - medium) / scale, tol, relative=True))

        phi = psi
        coords = variables(pts, order=1)
        a0j, aj, _, _ = metric.coefficients(coords)
        varpi_inv_sqrt = (a0j * aj).reciprocal()
        wrapped = varpi_inv_sqrt.expand(-1) * phi
        lhs = op.apply(wrapped, pts)
        rhs = np.zeros_like(lhs)
        for p, x in enumerate(pts):
            rho = float(np.linalg.norm(x[1:]))
            eta, _ = _isotropic_profiles(params.rs, rho, x[1:] / rho)
            d = phi.c1[:, p]
            rhs[p] = (1j * eta * m.beta[0] @ d[0] + sum(1j * m.beta[l] @ d[l] for l in (1, 2, 3))) * varpi_inv_sqrt.c0[p]
            rhs[p] /= metric.values(x)[1]
        lscale = max(1.0, max_abs(lhs))
        report.add(CheckRecord("conformal_rescaling", max_abs(lhs - rhs) / lscale, tol, relative=True))
    return report


def connection_oracle_check(params: SchwarzschildParams, count: int = 100, seed: int = 0, tol: float = 1e-11) -> CheckRecord:
    """Worst relative gap between closed-form and brute-force ``Gamma`` over random points."""
    metric = params.metric()
    worst, witness = 0.0, None
    for x in random_domain_points(params, count, seed):
        closed = connection_coefficients(metric, x).Gamma
        brute = brute_force_connection(metric, x).Gamma
        dev = max_abs(closed - brute) / max(max_abs(brute), np.finfo(float).tiny)
        if dev > worst:
            worst, witness = dev, {"point": [float(v) for v in x]}
    return CheckRecord(f"connection_oracle[{params.chart.value}]", worst, tol, witness, relative=True)


# --------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitResult:
    """Circular-orbit radius and frequencies.

    ``omega_sq_plus`` / ``omega_sq_minus`` follow the spin-projection
    labelling (``+`` is the larger level).  The standard-chart result has
    no helicity resolution and reports the same value twice.
    """

    radius: float
    omega_sq_plus: float
    omega_sq_minus: float
    m_or_h: float
    coordinate: str
    rs: float
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "omega_sq_plus": self.omega_sq_plus,
            "omega_sq_minus": self.omega_sq_minus,
            "m_or_h": self.m_or_h,
            "coordinate": self.coordinate,
            "rs": self.rs,
            "diagnostics": self.diagnostics,
        }


def _require_h(h: float) -> None:
    if not (math.isfinite(h) and h > 0):
        raise InvalidAngularMomentum(f"angular momentum must be positive, got h = {h}")


def _require_m(m, integer: bool = True) -> float:
    mv = float(m)
    if integer and mv != round(mv):
        raise InvalidAngularMomentum(f"m must be an integer, got {m}")
    if not mv * mv >= 4.0:
        raise InvalidAngularMomentum(f"angular momentum below threshold: m^2 = {mv * mv:g} < 4")
    return mv


def effective_potential(r, h: float, rs: float):
    """``V_eff(r) = (h^2 / r^2)(1 - rs / r)``."""
    return h * h / (r * r) * (1.0 - rs / r)


def shape_equation_rhs(u, rs: float):
    """Right-hand side ``3 rs u^2 / 2`` of the photon orbit shape equation."""
    return 1.5 * rs * u * u


def classical_orbit(params: SchwarzschildParams, h: float) -> OrbitResult:
    """Maximum of the photon effective potential in the standard chart."""
    _require_h(h)
    rs = params.rs
    dV = lambda r: h * h * (-2.0 / r**3 + 3.0 * rs / r**4)
    d2V = lambda r: h * h * (6.0 / r**4 - 12.0 * rs / r**5)
    roots = find_roots(dV, d2V, rs * (1.0 + DOMAIN_EPS), SCAN_OUTER * rs, xtol=1e-12 * rs)
    root = roots[0]
    r = root.root
    analytic = 1.5 * rs
    return OrbitResult(
        radius=r,
        omega_sq_plus=effective_potential(r, h, rs),
        omega_sq_minus=effective_potential(r, h, rs),
        m_or_h=h,
        coordinate="standard",
        rs=rs,
        diagnostics={
            "root": root.to_json(),
            "analytic_radius": analytic,
            "radius_deviation": abs(r - analytic),
            "second_derivative": d2V(r),
            "omega_sq_closed_form": 4.0 * h * h / (27.0 * rs * rs),
            "circular_shape_balance": shape_equation_rhs(1.0 / r, rs) - 1.0 / r,
        },
    )


def _standard_matrix(r: float, m: float, rs: float):
    """``A`` such that the upper-block equation reads ``(omega I + A) f = 0``."""
    tau = build_matrices(Representation.CHIRAL).alpha[:, :3, :3]
    s = 1.0 - rs / r
    return 1j * (1.0 / r - rs / (2.0 * r * r)) * tau[0] - math.sqrt(s) * (m / r) * tau[2]


def standard_frequency_roots(r: float, m: float, rs: float = 1.0) -> dict:
    """Roots of ``det(omega I + A) = 0`` for the equatorial standard-chart system.

    Returns a dict with the cubic coefficients, all roots and the
    discarded ``omega = 0`` root.
    """
    A = _standard_matrix(r, m, rs)
    coeffs = np.real_if_close(np.poly(-A), tol=1e6)
    roots = np.roots(coeffs)
    order = np.argsort(np.abs(roots))
    roots = roots[order]
    return {"coefficients": np.asarray(coeffs), "roots": roots, "discarded": roots[0], "kept": roots[1:]}


def standard_omega_sq_closed(r: float, m: float, rs: float = 1.0) -> float:
    return m * m / (r * r) * (1.0 - rs / r) - ((2.0 * r - rs) / (2.0 * r * r)) ** 2


def circular_orbit_standard(params: SchwarzschildParams, m, r: float | None = None) -> OrbitResult:
    """Spin-averaged level on a circle of radius ``r`` (default ``3 rs / 2``).

    Raises
    ------
    InvalidAngularMomentum
        ``m`` not an integer or ``m^2 < 4``.
    DomainViolation
        ``r <= rs``.
    """
    mv = _require_m(m)
    rs = params.rs
    r = 1.5 * rs if r is None else float(r)
    if not r > rs:
        raise DomainViolation(f"standard chart needs r > rs = {rs}, got r = {r}")
    sol = standard_frequency_roots(r, mv, rs)
    kept = sol["kept"]
    omega_sq = float(np.real(np.mean(kept**2)))
    closed = standard_omega_sq_closed(r, mv, rs)
    return OrbitResult(
        radius=r,
        omega_sq_plus=omega_sq,
        omega_sq_minus=omega_sq,
        m_or_h=mv,
        coordinate="standard",
        rs=rs,
        diagnostics={
            "determinant_coefficients": [[float(c.real), float(c.imag)] for c in np.asarray(sol["coefficients"], complex)],
            "discarded_root": [float(np.real(sol["discarded"])), float(np.imag(sol["discarded"]))],
            "closed_form_omega_sq": closed,
            "closed_form_deviation": abs(omega_sq - closed),
            "root_pair_asymmetry": float(abs(kept[0] ** 2 - kept[1] ** 2)),
        },
    )


def _averaged_omega_sq(r, h: float, rs: float):
    return (h * h - 1.0) / (r * r) * (1.0 - rs / r) - rs * rs / (4.0 * r**4)


def averaged_extremal_radius(params: SchwarzschildParams, h: float) -> dict:
    """Stationary radius of the spin-averaged level with ``m`` replaced by real ``h``.

    Returns the numerically found radius, the closed form and their gap.
    """
    _require_m(h, integer=False)
    rs = params.rs
    k = h * h - 1.0
    f = lambda r: k * (-2.0 / r**3 + 3.0 * rs / r**4) + rs * rs / r**5
    fp = lambda r: k * (6.0 / r**4 - 12.0 * rs / r**5) - 5.0 * rs * rs / r**6
    roots = find_roots(f, fp, rs * (1.0 + DOMAIN_EPS), SCAN_OUTER * rs, xtol=1e-12 * rs)
    r = roots[0].root
    closed = 0.75 * rs + rs * math.sqrt(9.0 * k * k + 8.0 * k) / (4.0 * k)
    second = k * (6.0 / r**4 - 12.0 * rs / r**5) - 5.0 * rs * rs / r**6
    return {
        "radius": r,
        "closed_form": closed,
        "deviation": abs(r - closed),
        "second_derivative": second,
        "omega_sq": _averaged_omega_sq(r, h, rs),
        "root": roots[0].to_json(),
    }


def isotropic_constants(rho: float, rs: float) -> dict:
    """``eta``, ``A_rho`` and ``r`` at isotropic radius ``rho``."""
    if not rho > rs / 4.0:
        raise DomainViolation(f"isotropic chart needs rho > rs/4 = {rs / 4}, got rho = {rho}")
    q = rs / (4.0 * rho)
    eta = (1.0 + q) ** 3 / (1.0 - q)
    a_rho = -rs / (8.0 * rho * rho) * (3.0 / (1.0 + q) + 1.0 / (1.0 - q))
    return {"rho": rho, "eta": eta, "A_rho": a_rho, "r": radius_from_rho(rho, rs)}


def photon_sphere_rho(rs: float) -> float:
    """Isotropic radius of the classical photon sphere, ``(2 + sqrt 3) rs / 4``."""
    return (2.0 + math.sqrt(3.0)) * rs / 4.0


def circular_orbit_isotropic(params: SchwarzschildParams, m, rho: float | None = None) -> OrbitResult:
    """Helicity-split levels at isotropic radius ``rho`` (default: photon sphere).

    The 3x3 equation ``(2 m A_rho tau_3 / rho + eta^2 omega^2 - m^2 / rho^2) zeta = 0``
    is solved through the eigenvalues ``s in {-1, 0, 1}`` of ``tau_3``; the
    ``s = 0`` root is the discarded longitudinal one.  Levels are labelled
    by spin projection: ``omega_sq_plus`` is the larger one.
    """
    mv = _require_m(m)
    rs = params.rs
    rho = photon_sphere_rho(rs) if rho is None else float(rho)
    c = isotropic_constants(rho, rs)
    eta, a_rho = c["eta"], c["A_rho"]
    tau3 = build_matrices(Representation.CHIRAL).alpha[2, :3, :3]
    spins = np.sort(np.real(np.linalg.eigvals(tau3)))
    levels = {}
    for s in spins:
        levels[int(round(s))] = (mv * mv / rho**2 - 2.0 * mv * a_rho * s / rho) / eta**2
    discarded = levels.pop(0)
    upper, lower = max(levels.values()), min(levels.values())
    return OrbitResult(
        radius=rho,
        omega_sq_plus=upper,
        omega_sq_minus=lower,
        m_or_h=mv,
        coordinate="isotropic",
        rs=rs,
        diagnostics={
            "eta": eta,
            "A_rho": a_rho,
            "r": c["r"],
            "discarded_longitudinal_omega_sq": discarded,
            "closed_form_plus": 4.0 * mv * (mv + 1.0) / (27.0 * rs * rs),
            "closed_form_minus": 4.0 * mv * (mv - 1.0) / (27.0 * rs * rs),
        },
    )


def _branch_sum(rho, rs):
    return 3.0 * rs / (rho * 4.0 + rs) + rs / (rho * 4.0 - rs)


def helicity_branch_omega_sq(rho, h: float, rs: float, branch: int):
    """``h (1-q)^2 / (rho^2 (1+q)^6) [h - branch * S]`` with ``q = rs / 4 rho``.

    ``branch = +1`` is the branch whose stationary point lies outside the
    photon sphere; works on floats, arrays and jets.
    """
    q = rs / (rho * 4.0)
    one_m = 1.0 - q
    one_p = q + 1.0
    pref = one_m * one_m * h / (rho * rho * one_p**6) if not isinstance(rho, Jet) else (
        one_m * one_m * h / (rho * rho * (one_p * one_p * one_p) * (one_p * one_p * one_p))
    )
    return pref * (h - _branch_sum(rho, rs) * branch)


def _branch_derivatives(h: float, rs: float, branch: int):
    """Exact first and second ``rho`` derivatives of a branch via jets.

    Both callables accept scalars or arrays.
    """

    def jet_at(rho):
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        seed = np.zeros(rho.shape + (4,))
        seed[:, 1] = rho
        return helicity_branch_omega_sq(variables(seed, order=2)[1], h, rs, branch)

    def first(rho):
        out = jet_at(rho).c1[1]
        return float(out[0]) if np.ndim(rho) == 0 else out

    def second(rho):
        out = jet_at(rho).c2[1, 1]
        return float(out[0]) if np.ndim(rho) == 0 else out

    return first, second


@dataclass(frozen=True)
class HelicitySplit:
    """Helicity-resolved orbit radii; unpacks as ``(rho_plus, rho_minus, rho_zero)``.

    ``rho_plus`` extremizes the branch ``h - S`` and ``rho_minus`` the
    branch ``h + S``; ``rho_zero`` is the uncorrected photon-sphere radius.
    """

    rho_plus: float
    rho_minus: float
    rho_zero: float
    h: float
    rs: float
    omega_sq_plus: float
    omega_sq_minus: float
    diagnostics: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.rho_plus, self.rho_minus, self.rho_zero))

    def to_orbit_result(self) -> OrbitResult:
        diag = {"rho_plus": self.rho_plus, "rho_minus": self.rho_minus, "rho_zero": self.rho_zero, **self.diagnostics}
        return OrbitResult(self.rho_zero, self.omega_sq_plus, self.omega_sq_minus, self.h, "isotropic", self.rs, diag)

    def to_json(self) -> dict:
        return {
            "rho_plus": self.rho_plus,
            "rho_minus": self.rho_minus,
            "rho_zero": self.rho_zero,
            **self.to_orbit_result().to_json(),
        }


def helicity_split_radii(params: SchwarzschildParams, h: float) -> HelicitySplit:
    """Stationary radii of the two helicity branches in the isotropic chart.

    Each branch's ``d omega^2 / d rho`` is scanned for sign changes on
    ``(rs/4, 20 rs]``, bracketed and Newton-polished with exact jet
    derivatives.  Among the stationary points the maximum with positive
    ``omega^2`` is kept; every stationary point found, and the two reference
    polynomials evaluated at ``rho / rs``, are kept in ``diagnostics``.

    Raises
    ------
    InvalidAngularMomentum
        ``h < 2``.
    RootNotBracketed
        A branch has no admissible stationary point on the scan.
    """
    hv = _require_m(h, integer=False)
    if hv < 0:
        raise InvalidAngularMomentum(f"angular momentum must be positive, got h = {h}")
    rs = params.rs
    lo, hi = rs / 4.0 * (1.0 + DOMAIN_EPS), SCAN_OUTER * rs
    rho0 = photon_sphere_rho(rs)
    found = {}
    diag: dict = {"scan_interval": [lo, hi]}
    for label, branch in (("plus", 1), ("minus", -1)):
        f, fp = _branch_derivatives(hv, rs, branch)
        try:
            roots = find_roots(f, fp, lo, hi, xtol=1e-12 * rs, vectorized=True)
        except RootNotBracketed as exc:
            raise RootNotBracketed(f"helicity branch {label}: {exc}", scan=exc.scan) from None
        candidates = []
        for rt in roots:
            w = helicity_branch_omega_sq(rt.root, hv, rs, branch)
            candidates.append({"rho": rt.root, "omega_sq": w, "curvature": fp(rt.root), **rt.to_json()})
        admissible = [c for c in candidates if c["omega_sq"] > 0 and c["curvature"] < 0]
        diag[f"stationary_points_{label}"] = candidates
        if not admissible:
            raise RootNotBracketed(f"helicity branch {label}: no maximum with positive omega^2", scan=[])
        best = max(admissible, key=lambda c: c["omega_sq"])
        found[label] = best
    rho_p, rho_m = found["plus"]["rho"], found["minus"]["rho"]
    diag["ordering_ok"] = bool(rho_p > rho0 > rho_m)
    x_p, x_m = rho_p / rs, rho_m / rs
    diag["reference_polynomials"] = {
        "plus": 64 * x_p**3 - 112 * x_p**2 + 40 * x_p - 3,
        "minus": 128 * x_m**4 - 32 * x_m**3 - 80 * x_m**2 + 22 * x_m - 1,
        "applies": bool(rs == 1.0 and hv == 2.0),
    }
    return HelicitySplit(rho_p, rho_m, rho0, hv, rs, found["plus"]["omega_sq"], found["minus"]["omega_sq"], diag)


def scan_potential(params: SchwarzschildParams, h: float, samples: int = 200, lo: float | None = None, hi: float | None = None):
    """Uniform scan of both helicity branches: rows ``(rho, omega_sq_plus, omega_sq_minus)``.

    Branch labels match :func:`helicity_split_radii`.
    """
    _require_m(h, integer=False)
    rs = params.rs
    lo = rs / 4.0 * (1.0 + 1e-3) if lo is None else lo
    hi = 4.0 * rs if hi is None else hi
    if not (rs / 4.0 < lo < hi):
        raise DomainViolation(f"scan interval must satisfy rs/4 < lo < hi, got [{lo}, {hi}]")
    rho = np.linspace(lo, hi, samples)
    return np.column_stack(
        [rho, helicity_branch_omega_sq(rho, h, rs, 1), helicity_branch_omega_sq(rho, h, rs, -1)]
    )
