import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from photon_spinor.algebra import build_tau
from photon_spinor.errors import ZeroWaveVector
from photon_spinor.polarization import (
    circular_basis,
    circular_explicit,
    linear_basis,
    mode_spinors,
    rotated_circular_basis,
    rotation_phase,
)

comp = st.floats(-5, 5, allow_nan=False)
kvec = st.tuples(comp, comp, comp)
TAU = np.stack(build_tau())


def _nondegenerate(k):
    return k[0] ** 2 + k[1] ** 2 > 1e-6 * (1 + np.dot(k, k))


@settings(max_examples=80, deadline=None)
@given(k=kvec)
def test_linear_triad_is_right_handed_and_orthonormal(k):
    assume(_nondegenerate(k))
    eps = linear_basis(k)
    assert np.allclose(eps @ eps.T, np.eye(3), atol=1e-13)
    assert np.allclose(np.cross(eps[0], eps[1]), eps[2], atol=1e-13)
    assert np.allclose(eps[2], np.array(k) / np.linalg.norm(k), atol=1e-14)


@settings(max_examples=80, deadline=None)
@given(k=kvec)
def test_circular_vectors_are_helicity_eigenvectors(k):
    assume(_nondegenerate(k))
    b = circular_basis(k)
    khat_tau = np.tensordot(np.array(k) / np.linalg.norm(k), TAU, axes=1)
    assert np.allclose(khat_tau @ b.e_plus, b.e_plus, atol=1e-13)
    assert np.allclose(khat_tau @ b.e_minus, -b.e_minus, atol=1e-13)
    assert np.allclose(khat_tau @ b.e_zero, 0, atol=1e-13)
    # the explicit component formula is a separate route to e_{+1}
    assert np.allclose(circular_explicit(k), b.e_plus, atol=1e-13)


@settings(max_examples=50, deadline=None)
@given(k=kvec)
def test_rotated_pair_swaps_under_k_reversal(k):
    assume(_nondegenerate(k))
    p_k, m_k = rotated_circular_basis(k)
    p_mk, m_mk = rotated_circular_basis(-np.array(k))
    assert np.allclose(p_mk, m_k, atol=1e-13)
    assert np.allclose(m_mk, p_k, atol=1e-13)
    assert abs(abs(rotation_phase(k)) - 1) < 1e-15


@pytest.mark.parametrize("rep", ["standard", "chiral"])
@pytest.mark.parametrize("rotated", [False, True])
def test_mode_spinors_orthonormal(rep, rotated):
    m = mode_spinors([0.4, -0.2, 1.3], rep, rotated=rotated)
    cols = np.stack(m.columns())
    assert np.allclose(cols.conj() @ cols.T, np.eye(2), atol=1e-14)


@pytest.mark.parametrize("k3", [1.0, -2.5, 3.0])
def test_axis_limit_is_continuous(k3):
    exact = circular_basis([0.0, 0.0, k3])
    near = circular_basis([1e-7 * abs(k3), 0.0, k3])
    assert exact.k.axis_degenerate
    assert np.allclose(near.eps, exact.eps, atol=1e-6)
    assert np.allclose(exact.e_zero, [0, 0, np.sign(k3)])


def test_zero_wave_vector_raises():
    with pytest.raises(ZeroWaveVector):
        linear_basis([0.0, 0.0, 0.0])


def test_nonfinite_wave_vector_rejected():
    with pytest.raises(ValueError):
        circular_basis([np.inf, 0, 1])
