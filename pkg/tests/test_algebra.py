import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from photon_spinor.algebra import (
    LEVI_CIVITA,
    LorentzParams,
    build_matrices,
    build_tau,
    change_rep,
    exp_tau,
    lorentz_rep,
    lorentz_rep_expm,
    slash,
)
from photon_spinor.algebra_checks import product_identities_check

REPS = ["standard", "chiral"]
finite = st.floats(-3, 3, allow_nan=False)
vec3 = st.tuples(finite, finite, finite)


def test_tau_is_cross_product_generator():
    tau = np.stack(build_tau())
    rng = np.random.default_rng(1)
    a, v = rng.normal(size=3), rng.normal(size=3)
    # (a . tau) v = i a x v
    assert np.allclose(np.tensordot(a, tau, axes=1) @ v, 1j * np.cross(a, v), atol=1e-15)
    assert np.allclose(tau, -1j * LEVI_CIVITA, atol=0)


@pytest.mark.parametrize("rep", REPS)
def test_beta_anticommutation_structure(rep):
    m = build_matrices(rep)
    b = m.beta
    # beta^0 squares to one, beta^l to minus the 3D block projector
    assert np.allclose(b[0] @ b[0], np.eye(6))
    for l in range(3):
        assert np.allclose(m.alpha[l], b[0] @ b[l + 1])
        assert np.allclose(m.beta5 @ b[l + 1], -b[l + 1] @ m.beta5)
    assert np.allclose(m.beta5 @ m.beta5, np.eye(6))


def test_U_is_real_symmetric_involution():
    U = build_matrices("standard").U
    assert np.allclose(U @ U, np.eye(6), atol=1e-15)
    assert np.allclose(U, U.T) and np.isrealobj(U.real) and np.all(U.imag == 0)


@pytest.mark.parametrize("name", ["beta", "alpha", "sigma"])
def test_representations_are_U_conjugate(name):
    c = getattr(build_matrices("chiral"), name)
    s = getattr(build_matrices("standard"), name)
    assert np.allclose(change_rep(c, "chiral", "standard"), s, atol=1e-15)
    assert np.allclose(change_rep(s, "standard", "chiral"), c, atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(re=vec3, im=vec3)
def test_exp_tau_matches_pade_expm(re, im):
    a = np.array(re) + 1j * np.array(im)
    ref = expm(1j * np.tensordot(a, np.stack(build_tau()), axes=1))
    assert np.max(np.abs(exp_tau(a) - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_exp_tau_null_vector_and_zero():
    null = np.array([1.0, 1j, 0.0])
    tau = np.stack(build_tau())
    ref = expm(1j * np.tensordot(null, tau, axes=1))
    assert np.allclose(exp_tau(null), ref, atol=1e-15)
    assert np.allclose(exp_tau(np.zeros(3)), np.eye(3))


@settings(max_examples=40, deadline=None)
@given(theta=vec3, zeta=st.tuples(*(st.floats(-1.5, 1.5),) * 3), rep=st.sampled_from(REPS))
def test_lorentz_closed_form_matches_generator_exponential(theta, zeta, rep):
    p = LorentzParams(theta, zeta)
    L = lorentz_rep(rep, p)
    ref = lorentz_rep_expm(rep, p)
    scale = max(1.0, np.max(np.abs(ref)))
    assert np.max(np.abs(L - ref)) <= 1e-12 * scale
    b0 = build_matrices(rep).beta[0]
    assert np.max(np.abs(L.conj().T @ b0 @ L - b0)) <= 1e-11 * scale**2


@pytest.mark.parametrize("rep", REPS)
def test_product_identities_random_complex_vectors(rep):
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.normal(size=4) + 1j * rng.normal(size=4)
        b = rng.normal(size=4) + 1j * rng.normal(size=4)
        for rec in product_identities_check(a, b, rep):
            assert rec.max_deviation < 1e-13, rec


@pytest.mark.parametrize("rep", REPS)
def test_slash_square_annihilates_transverse_modes_on_the_light_cone(rep):
    from photon_spinor.polarization import mode_spinors

    k = np.array([0.3, -1.1, 0.7])
    p = np.concatenate([[np.linalg.norm(k)], k])
    s = slash(p, rep)
    for col in mode_spinors(k, rep).columns():
        assert np.max(np.abs(s @ s @ col)) < 1e-14


def test_lorentz_params_reject_nonfinite():
    with pytest.raises(ValueError):
        LorentzParams((np.nan, 0, 0))
