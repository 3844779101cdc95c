"""Discrete and continuous symmetry transforms of grid spinor fields.

All transforms act on :class:`~photon_spinor.field.SpinorGridField`
snapshots.  Time derivatives supplied alongside a field transform with the
same map, except under time reversal where they also change sign (pass
``derivative=True``).

Coefficient-level counterparts act on
:class:`~photon_spinor.field.ModeCoefficients` and describe the same maps
for plane waves built on the rotated circular basis (``rotated=True`` in
synthesis), where both the parity and time-reversal actions are a pure
``k -> -k`` relabeling with sign ``+1`` for mode 1 and ``-1`` for mode 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace

import numpy as np

from . import kernels
from .algebra import METRIC, Representation, build_matrices, spin_generators
from .errors import AsymmetricGrid, NonTransverseInput
from .field import ModeCoefficients, SpinorGridField, divergence, spectral_divergence
from .reports import CheckRecord, max_abs

__all__ = [
    "parity",
    "time_reversal",
    "charge_conjugation",
    "chiral_transform",
    "chirality_projectors",
    "gauge_transform",
    "parity_coefficients",
    "time_reversal_coefficients",
    "LorentzCertificate",
    "lorentz_invariance_certificate",
    "delta_tensor",
    "lorentz_matrix_identity",
    "pseudo_lagrangian",
    "axial_current",
    "transversality",
]


def _apply(field: SpinorGridField, matrix: np.ndarray) -> np.ndarray:
    return field.values @ np.asarray(matrix).T


def parity(field: SpinorGridField) -> SpinorGridField:
    """``psi(t, x) -> beta^0 psi(t, -x)``.

    Raises
    ------
    AsymmetricGrid
        Unless every axis has an odd node count centered on the origin.
    """
    if not field.grid.is_symmetric():
        raise AsymmetricGrid("parity needs odd node counts centered on the origin")
    b0 = build_matrices(field.rep).beta[0]
    return field.with_values(_apply(field, b0)[::-1, ::-1, ::-1].copy())


def time_reversal(field: SpinorGridField, derivative: bool = False) -> SpinorGridField:
    """Antilinear ``psi(t, x) -> conj(psi(-t, x))``.

    In both layouts this keeps E and flips the sign of H.  The snapshot's
    time tag is negated.  With ``derivative=True`` the input is a time
    derivative field and picks up the extra ``-1`` of ``d/dt -> -d/dt``.
    """
    values = np.conj(field.values)
    if derivative:
        values = -values
    return replace(field, values=values, time=-field.time)


def charge_conjugation(field: SpinorGridField) -> SpinorGridField:
    """``psi -> beta^0 conj(psi)``; the identity on real E/H data."""
    b0 = build_matrices(field.rep).beta[0]
    return field.with_values(np.conj(field.values) @ b0.T)


def chiral_transform(field: SpinorGridField, theta: float) -> SpinorGridField:
    """``psi -> (cos theta + i beta5 sin theta) psi``.

    Equivalent to rotating ``(E, H)`` into
    ``(E cos theta - H sin theta, H cos theta + E sin theta)``.
    """
    b5 = build_matrices(field.rep).beta5
    u = np.cos(theta) * np.eye(6) + 1j * np.sin(theta) * b5
    return field.with_values(_apply(field, u))


def gauge_transform(field: SpinorGridField, theta: float) -> SpinorGridField:
    """Constant phase ``psi -> exp(-i theta) psi``."""
    return field.with_values(np.exp(-1j * theta) * field.values)


def chirality_projectors(field: SpinorGridField) -> tuple[SpinorGridField, SpinorGridField]:
    """Right- and left-handed parts ``(1 +/- beta5) psi / 2``."""
    b5 = build_matrices(field.rep).beta5
    right = (np.eye(6) + b5) / 2
    left = (np.eye(6) - b5) / 2
    return field.with_values(_apply(field, right)), field.with_values(_apply(field, left))


def _relabel(coeffs: ModeCoefficients, conjugate: bool) -> ModeCoefficients:
    out = ModeCoefficients()
    for (k, i), b in coeffs.entries.items():
        sign = 1.0 if i == 1 else -1.0
        value = np.conj(b) if conjugate else b
        out.add(tuple(-np.asarray(k)), i, sign * value)
    return out


def parity_coefficients(coeffs: ModeCoefficients) -> ModeCoefficients:
    """Amplitudes of the parity image (rotated basis): ``b(k,i) -> (-1)^(i+1) b`` at ``-k``."""
    return _relabel(coeffs, conjugate=False)


def time_reversal_coefficients(coeffs: ModeCoefficients) -> ModeCoefficients:
    """Amplitudes of the time-reversed field (rotated basis).

    The map is antilinear: ``b(k, i)`` becomes ``(-1)^(i+1) conj(b)`` at
    ``-k``.
    """
    return _relabel(coeffs, conjugate=True)


# --------------------------------------------------------------------------
# Lorentz-invariance certificate


def _lower(beta: np.ndarray) -> np.ndarray:
    return beta * np.diag(METRIC)[:, None, None]


def lorentz_operator_matrices(rep: Representation | str) -> np.ndarray:
    """Coefficient matrices ``M[mu, nu, rho]`` of the variation density.

    ``Delta_{mu nu} = psi^dagger beta^0 sum_rho M[mu, nu, rho] d_rho psi``
    with ``M = i (beta_nu delta_{rho mu} - beta_mu delta_{rho nu})
    + [beta^rho, S_{mu nu}]``.
    """
    m = build_matrices(rep)
    beta_up = m.beta
    beta_low = _lower(beta_up)
    s = spin_generators(rep, lower=True)
    out = np.zeros((4, 4, 4, 6, 6), dtype=complex)
    for mu in range(4):
        for nu in range(4):
            for rho in range(4):
                term = beta_up[rho] @ s[mu, nu] - s[mu, nu] @ beta_up[rho]
                if rho == mu:
                    term = term + 1j * beta_low[nu]
                if rho == nu:
                    term = term - 1j * beta_low[mu]
                out[mu, nu, rho] = term
    return out


def lorentz_matrix_identity(rep: Representation | str) -> CheckRecord:
    """Spatial-spatial variation vanishes as a matrix identity.

    For every ``l, m`` and every derivative slot ``rho`` the coefficient
    ``i(beta_m delta_{rho l} - beta_l delta_{rho m}) + eps_{lmn}[beta^rho, Sigma^n]``
    must be the zero matrix.
    """
    mats = lorentz_operator_matrices(rep)
    dev = max_abs(mats[1:, 1:])
    return CheckRecord(f"delta_spatial_matrix_identity_{Representation.parse(rep).value}", dev, 0.0)


def _derivatives(field: SpinorGridField, dt_field: SpinorGridField, backend=None) -> np.ndarray:
    field.same_grid(dt_field)
    grad = kernels.gradient(field.values, field.grid.spacing, field.grid.boundary, backend)
    return np.concatenate([dt_field.values[None], grad], axis=0)


def delta_tensor(field: SpinorGridField, dt_field: SpinorGridField, backend=None) -> np.ndarray:
    """All ``Delta_{mu nu}`` on the grid, shape ``(4, 4, nx, ny, nz)``."""
    d = _derivatives(field, dt_field, backend)
    b0 = build_matrices(field.rep).beta[0]
    mats = np.einsum("ij,mnrjk->mnrik", b0, lorentz_operator_matrices(field.rep))
    return np.einsum("...i,mnrij,r...j->mn...", field.values.conj(), mats, d)


def transversality(field: SpinorGridField, backend=None) -> tuple[float, float]:
    """Max-norm of ``div E`` and ``div H``.

    Periodic grids use the FFT divergence (exact for lattice plane waves);
    other boundaries use the finite-difference stencil.
    """
    E, H = field.eh()
    if field.grid.boundary == "periodic":
        return max_abs(spectral_divergence(E, field.grid)), max_abs(spectral_divergence(H, field.grid))
    return max_abs(divergence(E, field.grid, backend)), max_abs(divergence(H, field.grid, backend))


@dataclass
class LorentzCertificate:
    """Outcome of :func:`lorentz_invariance_certificate`.

    Attributes
    ----------
    delta : ndarray, shape (4, 4, nx, ny, nz)
    records : list of CheckRecord
    div_e, div_h : float
        Transversality measures of the input.
    """

    delta: np.ndarray
    records: list[CheckRecord] = dc_field(default_factory=list)
    div_e: float = 0.0
    div_h: float = 0.0

    @property
    def max_delta(self) -> float:
        return max_abs(self.delta)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def lorentz_invariance_certificate(
    field: SpinorGridField,
    dt_field: SpinorGridField,
    div_tol: float = 1e-9,
    require_transverse: bool = True,
    backend=None,
) -> LorentzCertificate:
    """Evaluate the Lorentz variation ``Delta_{mu nu}`` of a grid solution.

    Records produced:

    ``delta_max``
        ``max |Delta_{mu nu}|`` (informational; ``O(h^2)`` on solutions);
    ``delta_spatial_matrix_identity``
        the exact matrix identity behind ``Delta_{lm} = 0``;
    ``delta_time_formula``
        ``Delta_{l0}`` against ``-i(E_l div E + H_l div H)/2`` with the
        same stencil; exact for static curl-free data, ``O(h^2)`` for
        discretized solutions because the formula uses the field equation;
    ``curl_relation``
        ``d_rho Q^rho_{mu nu} + i G_{mu nu}`` (``O(h^2)`` on solutions).

    Parameters
    ----------
    div_tol : float
        Threshold on ``max(|div E|, |div H|)`` relative to ``max |psi|``.
    require_transverse : bool
        Raise :class:`NonTransverseInput` (carrying this certificate) when
        the divergence exceeds ``div_tol``.
    """
    delta = delta_tensor(field, dt_field, backend)
    cert = LorentzCertificate(delta)
    cert.records.append(CheckRecord("delta_max", max_abs(delta)))
    cert.records.append(lorentz_matrix_identity(field.rep).with_tolerance(1e-15))

    E, H = field.eh()
    div_e_fd = divergence(E, field.grid, backend)
    div_h_fd = divergence(H, field.grid, backend)
    formula = -0.5j * (np.conj(E) * div_e_fd[..., None] + np.conj(H) * div_h_fd[..., None])
    formula = np.moveaxis(formula, -1, 0)
    scale = max(1.0, max_abs(delta))
    cert.records.append(
        CheckRecord(
            "delta_time_formula",
            max_abs(delta[1:, 0] - formula) / scale,
            relative=True,
            notes="the divergence formula assumes the field equation; off-shell terms are O(h^2)",
        )
    )
    cert.records.append(CheckRecord("curl_relation", _curl_relation_deviation(field, dt_field, backend)))

    cert.div_e, cert.div_h = transversality(field, backend)
    amp = max(max_abs(field.values), 1e-300)
    if require_transverse and max(cert.div_e, cert.div_h) > div_tol * amp:
        raise NonTransverseInput(
            f"field is not transverse: max|div E| = {cert.div_e:.3e}, max|div H| = {cert.div_h:.3e}",
            cert.div_e,
            cert.div_h,
            report=cert,
        )
    return cert


def _curl_relation_deviation(field: SpinorGridField, dt_field: SpinorGridField, backend=None) -> float:
    """``max |d_rho Q^rho_{mu nu} + i G_{mu nu}|`` with grid derivatives."""
    m = build_matrices(field.rep)
    b0 = m.beta[0]
    s = spin_generators(field.rep, lower=True)
    beta_low = _lower(m.beta)
    psi, dpsi = field.values, dt_field.values
    grid = field.grid

    def bilinear_with_derivs(mat):
        mat = b0 @ mat
        val = np.einsum("...i,ij,...j->...", psi.conj(), mat, psi)
        dval = np.einsum("...i,ij,...j->...", dpsi.conj(), mat, psi) + np.einsum("...i,ij,...j->...", psi.conj(), mat, dpsi)
        grad = kernels.gradient(val[..., None], grid.spacing, grid.boundary, backend)[..., 0]
        return np.concatenate([dval[None], grad], axis=0)

    current_d = np.stack([bilinear_with_derivs(beta_low[nu]) for nu in range(4)])  # [nu, mu]
    worst = 0.0
    for mu in range(4):
        for nu in range(mu + 1, 4):
            curl = current_d[nu, mu] - current_d[mu, nu]
            div_q = 0
            for rho in range(4):
                q = m.beta[rho] @ s[mu, nu] - s[mu, nu] @ m.beta[rho]
                div_q = div_q + bilinear_with_derivs(q)[rho]
            worst = max(worst, max_abs(div_q + 1j * curl))
    return worst


def pseudo_lagrangian(field: SpinorGridField, dt_field: SpinorGridField, backend=None) -> np.ndarray:
    """Pointwise ``psibar (i beta^mu d_mu) psi`` with grid derivatives."""
    m = build_matrices(field.rep)
    d = _derivatives(field, dt_field, backend)
    op = 1j * np.einsum("ij,rjk,r...k->...i", m.beta[0], m.beta, d)
    return np.einsum("...i,...i->...", field.values.conj(), op)


def axial_current(field: SpinorGridField) -> np.ndarray:
    """``j^{mu 5} = psibar beta^mu beta5 psi``, shape ``(4, nx, ny, nz)``.

    Vanishes pointwise whenever the underlying E and H are real.
    """
    m = build_matrices(field.rep)
    mats = np.einsum("ij,rjk,kl->ril", m.beta[0], m.beta, m.beta5)
    return np.einsum("...i,rij,...j->r...", field.values.conj(), mats, field.values)
