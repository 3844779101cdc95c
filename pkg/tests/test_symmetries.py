import math

import numpy as np
import pytest

from photon_spinor.errors import AsymmetricGrid
from photon_spinor.field import Grid, ModeCoefficients, dirac_residual, eh_from_spinor, synthesize_field
from photon_spinor.symmetries import (
    axial_current,
    charge_conjugation,
    chiral_transform,
    chirality_projectors,
    gauge_transform,
    parity,
    parity_coefficients,
    time_reversal,
    time_reversal_coefficients,
)

REPS = ["standard", "chiral"]


def _field(rep, n=9, centered=False):
    coeffs = ModeCoefficients().add((1, 0, 1), 1, 0.8 + 0.1j).add((0, -1, 2), 2, -0.2 + 0.5j)
    grid = Grid.periodic_box(n, 2 * math.pi, centered=centered)
    return (*synthesize_field(coeffs, rep, grid, time=0.2, rotated=True), coeffs)


@pytest.mark.parametrize("rep", REPS)
def test_charge_conjugation_fixes_real_data(rep):
    f, _, _ = _field(rep)
    assert np.max(np.abs(charge_conjugation(f).values - f.values)) <= 1e-15


@pytest.mark.parametrize("rep", REPS)
@pytest.mark.parametrize("theta", [0.3, 1.0, math.pi / 2])
def test_chiral_transform_rotates_E_into_H(rep, theta):
    f, dt, _ = _field(rep)
    g = chiral_transform(f, theta)
    E, H = eh_from_spinor(f.values, rep)
    E2, H2 = eh_from_spinor(g.values, rep)
    assert np.allclose(E2, E * math.cos(theta) - H * math.sin(theta), atol=1e-14)
    assert np.allclose(H2, H * math.cos(theta) + E * math.sin(theta), atol=1e-14)
    assert dirac_residual(g, chiral_transform(dt, theta)) == pytest.approx(dirac_residual(f, dt), abs=1e-12)


@pytest.mark.parametrize("rep", REPS)
def test_gauge_invariance_of_residual(rep):
    f, dt, _ = _field(rep)
    assert dirac_residual(gauge_transform(f, 0.7), gauge_transform(dt, 0.7)) == pytest.approx(dirac_residual(f, dt), abs=1e-12)


@pytest.mark.parametrize("rep", REPS)
def test_axial_current_vanishes(rep):
    f, _, _ = _field(rep)
    assert np.max(np.abs(axial_current(f))) <= 1e-14


@pytest.mark.parametrize("rep", REPS)
def test_projectors_sum_to_identity(rep):
    f, _, _ = _field(rep)
    r, l = chirality_projectors(f)
    assert np.allclose(r.values + l.values, f.values, atol=1e-15)


def test_parity_needs_symmetric_grid():
    f, _, _ = _field("standard", n=8)
    with pytest.raises(AsymmetricGrid):
        parity(f)


@pytest.mark.parametrize("rep", REPS)
def test_parity_matches_coefficient_map(rep):
    f, _, coeffs = _field(rep, n=9, centered=True)
    image = parity(f)
    expected, _ = synthesize_field(parity_coefficients(coeffs), rep, f.grid, time=f.time, rotated=True)
    assert np.allclose(image.values, expected.values, atol=1e-12)


@pytest.mark.parametrize("rep", REPS)
def test_time_reversal_matches_coefficient_map(rep):
    f, _, coeffs = _field(rep)
    image = time_reversal(f)
    expected, _ = synthesize_field(time_reversal_coefficients(coeffs), rep, f.grid, time=-f.time, rotated=True)
    assert np.allclose(image.values, expected.values, atol=1e-12)


def test_involutions():
    f, _, _ = _field("chiral", centered=True)
    assert np.allclose(parity(parity(f)).values, f.values)
    assert np.allclose(time_reversal(time_reversal(f)).values, f.values)
