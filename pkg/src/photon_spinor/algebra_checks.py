"""Identity checks for the fixed matrices and the Lorentz maps."""

from __future__ import annotations

import itertools

import numpy as np
from scipy.linalg import expm

from .algebra import (
    LEVI_CIVITA,
    METRIC,
    LorentzParams,
    Representation,
    build_matrices,
    build_tau,
    change_rep,
    exp_tau,
    lorentz_rep,
    lorentz_rep_expm,
    slash,
    spin_generators,
)
from .reports import CheckRecord, max_abs

REPS = (Representation.CHIRAL, Representation.STANDARD)


def _comm(a, b):
    return a @ b - b @ a


def _lie_algebra_deviation(J, K) -> float:
    """Worst residual of the rotation/boost commutation relations."""
    dev = 0.0
    for l, m in itertools.product(range(3), repeat=2):
        eps = LEVI_CIVITA[l, m]
        dev = max(dev, max_abs(_comm(J[l], J[m]) - 1j * np.tensordot(eps, J, axes=1)))
        dev = max(dev, max_abs(_comm(K[l], K[m]) + 1j * np.tensordot(eps, J, axes=1)))
        dev = max(dev, max_abs(_comm(J[l], K[m]) - 1j * np.tensordot(eps, K, axes=1)))
    return dev


def _chiral_split_deviation(J, K) -> float:
    """Residual of the two commuting su(2) copies built from J and K."""
    qp = (J + 1j * K) / 2
    qm = (J - 1j * K) / 2
    dev = 0.0
    for l, m in itertools.product(range(3), repeat=2):
        eps = LEVI_CIVITA[l, m]
        dev = max(dev, max_abs(_comm(qp[l], qp[m]) - 1j * np.tensordot(eps, qp, axes=1)))
        dev = max(dev, max_abs(_comm(qm[l], qm[m]) - 1j * np.tensordot(eps, qm, axes=1)))
        dev = max(dev, max_abs(_comm(qp[l], qm[m])))
    return dev


def _lorentz_algebra_deviation(rep: Representation) -> float:
    """``i[S_ab, S_cd] = eta_bc S_ad - eta_ac S_bd + eta_db S_ca - eta_da S_cb``."""
    s = spin_generators(rep, lower=True)
    g = METRIC
    dev = 0.0
    for a, b, c, d in itertools.product(range(4), repeat=4):
        lhs = 1j * _comm(s[a, b], s[c, d])
        rhs = g[b, c] * s[a, d] - g[a, c] * s[b, d] + g[d, b] * s[c, a] - g[d, a] * s[c, b]
        dev = max(dev, max_abs(lhs - rhs))
    return dev


def _beta_sigma_deviation(rep: Representation) -> float:
    """``beta^l Sigma^m - Sigma^m beta^l = i eps^{lmn} beta_n``."""
    m = build_matrices(rep)
    dev = 0.0
    for l, k in itertools.product(range(3), repeat=2):
        rhs = 1j * np.tensordot(LEVI_CIVITA[l, k], m.beta[1:], axes=1)
        dev = max(dev, max_abs(m.beta[l + 1] @ m.sigma[k] - m.sigma[k] @ m.beta[l + 1] - rhs))
    return dev


def generator_algebra_check() -> list[CheckRecord]:
    """Commutator identities of the spin-1 and six-dimensional generators.

    Returns
    -------
    list of CheckRecord
        One record per identity family, deviations are absolute max-norms.
    """
    tau = np.stack(build_tau())
    recs = [
        CheckRecord("tau_commutators", max(
            max_abs(_comm(tau[l], tau[m]) - 1j * np.tensordot(LEVI_CIVITA[l, m], tau, axes=1))
            for l, m in itertools.product(range(3), repeat=2)
        )),
        CheckRecord("tau_casimir", max_abs(np.einsum("lij,ljk->ik", tau, tau) - 2 * np.eye(3))),
        CheckRecord("lie_algebra_3x3_right", _lie_algebra_deviation(tau, -1j * tau)),
        CheckRecord("lie_algebra_3x3_left", _lie_algebra_deviation(tau, 1j * tau)),
        CheckRecord("su2_split_3x3_right", _chiral_split_deviation(tau, -1j * tau)),
        CheckRecord("su2_split_3x3_left", _chiral_split_deviation(tau, 1j * tau)),
    ]
    for rep in REPS:
        m = build_matrices(rep)
        J, K = np.array(m.sigma), -1j * np.array(m.alpha)
        tag = rep.value
        recs.append(CheckRecord(f"lie_algebra_6x6_{tag}", _lie_algebra_deviation(J, K)))
        recs.append(CheckRecord(f"su2_split_6x6_{tag}", _chiral_split_deviation(J, K)))
        recs.append(CheckRecord(f"lorentz_algebra_{tag}", _lorentz_algebra_deviation(rep)))
        recs.append(CheckRecord(f"beta_sigma_commutator_{tag}", _beta_sigma_deviation(rep)))
        s_up = spin_generators(rep, lower=False)
        herm = 0.0
        for l in range(3):
            herm = max(herm, max_abs(s_up[0, l + 1] + s_up[0, l + 1].conj().T))
            herm = max(herm, max_abs(s_up[0, l + 1] - 1j * m.alpha[l]))
            for k in range(3):
                herm = max(herm, max_abs(s_up[l + 1, k + 1] - s_up[l + 1, k + 1].conj().T))
        recs.append(CheckRecord(f"generator_hermiticity_{tag}", herm))
        anti = max(max_abs(s_up[i, j] + s_up[j, i]) for i, j in itertools.product(range(4), repeat=2))
        recs.append(CheckRecord(f"generator_antisymmetry_{tag}", anti))
    return recs


def matrix_structure_check() -> list[CheckRecord]:
    """Anticommutation, Casimir and basis-change relations of the 6x6 sets."""
    recs: list[CheckRecord] = []
    mc, ms = build_matrices(Representation.CHIRAL), build_matrices(Representation.STANDARD)
    U = mc.U
    recs.append(CheckRecord("U_involution", max(max_abs(U @ U - np.eye(6)), max_abs(U - U.conj().T))))
    basis = 0.0
    for name, mat in mc.as_dict().items():
        if name == "U":
            continue
        basis = max(basis, max_abs(change_rep(mat, "chiral", "standard") - ms.as_dict()[name]))
    recs.append(CheckRecord("basis_change", basis))
    recs.append(CheckRecord("sigma_rep_independent", max_abs(mc.sigma - ms.sigma)))
    for m in (mc, ms):
        tag = m.rep.value
        b = m.beta
        anti0 = max(max_abs(b[0] @ b[l] + b[l] @ b[0]) for l in range(1, 4))
        recs.append(CheckRecord(f"beta0_betal_anticommute_{tag}", anti0))
        recs.append(CheckRecord(f"beta0_squared_{tag}", max_abs(b[0] @ b[0] - np.eye(6))))
        anti5 = max(max_abs(m.beta5 @ b[mu] + b[mu] @ m.beta5) for mu in range(4))
        recs.append(CheckRecord(f"beta5_anticommute_{tag}", anti5))
        recs.append(CheckRecord(f"alpha_is_beta0_beta_{tag}", max(
            max_abs(m.alpha[l] - b[0] @ b[l + 1]) for l in range(3)
        )))
        # beta^0 anticommutes with alpha as well (alpha = beta^0 beta).
        recs.append(CheckRecord(f"beta0_alpha_anticommute_{tag}", max(
            max_abs(b[0] @ m.alpha[l] + m.alpha[l] @ b[0]) for l in range(3)
        )))
        recs.append(CheckRecord(f"sigma_casimir_{tag}", max_abs(np.einsum("lij,ljk->ik", m.sigma, m.sigma) - 2 * np.eye(6))))
        recs.append(CheckRecord(f"beta5_squared_{tag}", max_abs(m.beta5 @ m.beta5 - np.eye(6))))
    return recs


def product_identities_check(a, b, rep: Representation | str) -> list[CheckRecord]:
    """Check the tau and beta product expansions for two complex 4-vectors.

    Parameters
    ----------
    a, b : array_like, shape (4,)
        Contravariant components ``(a^0, a)``; complex entries allowed.
    rep : Representation or str

    Returns
    -------
    list of CheckRecord
        ``tau_product``: ``(tau.a)(tau.b) = a.b + i tau.(a x b) - a b^T``.
        ``beta_product``: ``(beta^mu a_mu)(beta^nu b_nu) = -a^mu b_mu
        - i Sigma.(a x b) + alpha.(a b^0 - a^0 b) + I_2 (x) a b^T``.
    """
    rep = Representation.parse(rep)
    a = np.asarray(a, dtype=complex).reshape(4)
    b = np.asarray(b, dtype=complex).reshape(4)
    tau = np.stack(build_tau())
    av, bv = a[1:], b[1:]
    cross = np.cross(av, bv)
    lhs3 = np.tensordot(av, tau, axes=1) @ np.tensordot(bv, tau, axes=1)
    rhs3 = (av @ bv) * np.eye(3) + 1j * np.tensordot(cross, tau, axes=1) - np.outer(av, bv)
    m = build_matrices(rep)
    lhs6 = slash(a, rep) @ slash(b, rep)
    a_dot_b = -a[0] * b[0] + av @ bv
    rhs6 = (
        -a_dot_b * np.eye(6)
        - 1j * np.tensordot(cross, m.sigma, axes=1)
        + np.tensordot(av * b[0] - a[0] * bv, m.alpha, axes=1)
        + np.kron(np.eye(2), np.outer(av, bv))
    )
    return [
        CheckRecord("tau_product", max_abs(lhs3 - rhs3)),
        CheckRecord(f"beta_product_{rep.value}", max_abs(lhs6 - rhs6)),
    ]


def exp_tau_check(a) -> list[CheckRecord]:
    """Closed-form ``exp(i a.tau)`` against ``scipy.linalg.expm`` plus its
    power-reduction and branch-independence properties."""
    a = np.asarray(a, dtype=complex).reshape(3)
    tau = np.stack(build_tau())
    a_tau = np.tensordot(a, tau, axes=1)
    closed = exp_tau(a)
    ref = expm(1j * a_tau)
    scale = max(1.0, max_abs(ref))
    a2 = a @ a
    cube = a_tau @ a_tau @ a_tau - a2 * a_tau
    square = a_tau @ a_tau - (a2 * np.eye(3) - np.outer(a, a))
    # Branch independence: the closed form is built from even functions of
    # the root, so flipping the root sign must not change the result.
    root = np.sqrt(a2)
    other = np.eye(3, dtype=complex)
    if abs(a2) > 1e-16:
        neg = -root
        other = np.cos(neg) * np.eye(3) + 1j * np.sin(neg) / neg * a_tau + (1 - np.cos(neg)) / a2 * np.outer(a, a)
    else:
        other = closed
    return [
        CheckRecord("exp_tau_vs_expm", max_abs(closed - ref) / scale, relative=True),
        CheckRecord("tau_power_reduction", max(max_abs(cube), max_abs(square)) / max(1.0, abs(a2)) ** 1.5, relative=True),
        CheckRecord("exp_tau_branch_independence", max_abs(closed - other) / scale, relative=True),
    ]


def lorentz_rep_check(params: LorentzParams) -> list[CheckRecord]:
    """Closed-form Lorentz matrices against expm, basis change, det and
    the ``L^dagger beta^0 L = beta^0`` invariance of the Dirac bilinear."""
    recs = []
    lc = lorentz_rep("chiral", params)
    ls = lorentz_rep("standard", params)
    scale = max(1.0, max_abs(lc))
    for rep, L in ((Representation.CHIRAL, lc), (Representation.STANDARD, ls)):
        m = build_matrices(rep)
        gen = 1j * np.tensordot(params.theta, m.sigma, axes=1) + np.tensordot(params.zeta, m.alpha, axes=1)
        recs.append(CheckRecord(f"lorentz_vs_expm_{rep.value}", max_abs(L - expm(gen)) / scale, relative=True))
        recs.append(CheckRecord(
            f"lorentz_vs_generators_{rep.value}", max_abs(L - lorentz_rep_expm(rep, params)) / scale, relative=True
        ))
        recs.append(CheckRecord(f"lorentz_det_{rep.value}", abs(np.linalg.det(L) - 1) / scale, relative=True))
        inv = L.conj().T @ m.beta[0] @ L - m.beta[0]
        recs.append(CheckRecord(f"bilinear_invariance_{rep.value}", max_abs(inv) / scale**2, relative=True))
    recs.append(CheckRecord("lorentz_basis_change", max_abs(change_rep(lc, "chiral", "standard") - ls) / scale, relative=True))
    return recs
