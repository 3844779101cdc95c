import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_spinor.errors import ConfigError, GridMismatch, IncommensurateMode
from photon_spinor.field import (
    Grid,
    ModeCoefficients,
    SpinorGridField,
    dirac_residual,
    eh_from_spinor,
    from_bytes,
    observables,
    parse_csv,
    spinor_from_eh,
    synthesize_field,
    to_bytes,
    write_csv,
)
from photon_spinor.kernels import backends, gradient
from photon_spinor.suites import convergence_order

BOX = 2 * math.pi


def one_mode(b=1 + 0.5j, k=(1, 0, 0), i=1):
    return ModeCoefficients().add(k, i, b)


@pytest.mark.parametrize("rep", ["standard", "chiral"])
def test_spinor_layout_roundtrip(rep):
    rng = np.random.default_rng(0)
    E, H = rng.normal(size=(2, 5, 3))
    psi = spinor_from_eh(E, H, rep)
    E2, H2 = eh_from_spinor(psi, rep)
    assert np.allclose(E2, E) and np.allclose(H2, H)
    # the layouts carry the same energy density
    assert np.allclose(np.sum(np.abs(psi) ** 2, axis=-1), (np.sum(E**2, -1) + np.sum(H**2, -1)) / 2)


@pytest.mark.parametrize("rep", ["standard", "chiral"])
def test_box_energy_equals_coefficient_energy(rep):
    coeffs = one_mode().add((0, 2, -1), 2, 0.3 - 0.7j)
    f, _ = synthesize_field(coeffs, rep, Grid.periodic_box(16, BOX), time=0.37)
    assert observables(f).energy == pytest.approx(coeffs.energy(), rel=1e-12)


@pytest.mark.parametrize("rep", ["standard", "chiral"])
def test_dirac_residual_second_order(rep):
    coeffs = one_mode(k=(1, 1, 0))
    res = []
    for n in (16, 32):
        f, dt = synthesize_field(coeffs, rep, Grid.periodic_box(n, BOX))
        res.append(dirac_residual(f, dt))
    assert convergence_order(*res) == pytest.approx(2.0, abs=0.2)


def test_incommensurate_mode_rejected():
    with pytest.raises(IncommensurateMode):
        synthesize_field(one_mode(k=(0.5, 0, 0)), "standard", Grid.periodic_box(8, BOX))


def test_grid_mismatch():
    a, da = synthesize_field(one_mode(), "standard", Grid.periodic_box(8, BOX))
    b, _ = synthesize_field(one_mode(), "standard", Grid.periodic_box(10, BOX))
    with pytest.raises(GridMismatch):
        dirac_residual(a, b)
    with pytest.raises(GridMismatch):
        dirac_residual(a, da.to("chiral"))


@pytest.mark.parametrize("bad", [dict(dims=(4, 8, 8), spacing=(1, 1, 1)), dict(dims=(8, 8, 8), spacing=(1, 0, 1))])
def test_grid_validation(bad):
    with pytest.raises(ConfigError):
        Grid(**bad)


@settings(max_examples=25, deadline=None)
@given(
    dims=st.tuples(*(st.integers(5, 7),) * 3),
    seed=st.integers(0, 2**32 - 1),
    time=st.floats(-1e3, 1e3),
    rep=st.sampled_from(["standard", "chiral"]),
    boundary=st.sampled_from(["periodic", "open", "zero"]),
)
def test_binary_and_csv_roundtrip_exact(dims, seed, time, rep, boundary):
    rng = np.random.default_rng(seed)
    grid = Grid(dims, tuple(rng.uniform(0.1, 2, 3)), tuple(rng.normal(size=3)), boundary)
    values = rng.normal(size=dims + (6,)) + 1j * rng.normal(size=dims + (6,))
    f = SpinorGridField(grid, values, rep, time)
    for g in (from_bytes(to_bytes(f)), parse_csv(write_csv(f))):
        assert g.grid.dims == grid.dims and g.grid.boundary == grid.boundary
        assert np.allclose(g.grid.spacing, grid.spacing, rtol=0, atol=0)
        assert g.rep is f.rep and g.time == f.time
        assert np.array_equal(g.values, f.values)


def test_corrupt_binary_rejected():
    f, _ = synthesize_field(one_mode(), "standard", Grid.periodic_box(5, BOX))
    data = to_bytes(f)
    with pytest.raises(ConfigError):
        from_bytes(b"XXXX" + data[4:])
    with pytest.raises(ConfigError):
        from_bytes(data[:-16])


@pytest.mark.parametrize("boundary", ["periodic", "open", "zero"])
def test_backends_agree(boundary):
    rng = np.random.default_rng(5)
    v = rng.normal(size=(9, 7, 6, 6)) + 1j * rng.normal(size=(9, 7, 6, 6))
    outs = [gradient(v, (0.1, 0.2, 0.3), boundary, backend=b) for b in backends()]
    for o in outs[1:]:
        assert np.allclose(o, outs[0], rtol=0, atol=1e-13)


def test_gradient_exact_on_quadratics_with_open_boundary():
    x = np.arange(7) * 0.5
    v = np.broadcast_to((x**2)[:, None, None, None], (7, 6, 5, 6)).astype(complex)
    g = gradient(v, (0.5, 1.0, 1.0), "open", backend="numpy")
    assert np.allclose(g[0][:, 0, 0, 0], 2 * x, atol=1e-12)
    assert np.allclose(g[1:], 0)
