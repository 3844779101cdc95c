import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_spinor.errors import DomainViolation, InvalidAngularMomentum
from photon_spinor.gravity import (
    SchwarzschildParams,
    averaged_extremal_radius,
    brute_force_connection,
    circular_orbit_isotropic,
    circular_orbit_standard,
    classical_orbit,
    connection_coefficients,
    curved_dirac_check,
    helicity_branch_omega_sq,
    helicity_split_radii,
    minkowski,
    radius_from_rho,
    random_domain_points,
    rho_from_radius,
    scan_potential,
)

CHARTS = ["standard", "isotropic"]


@pytest.mark.parametrize("chart", CHARTS)
def test_closed_form_connection_matches_vierbein_route(chart):
    params = SchwarzschildParams(1.0, chart)
    metric = params.metric()
    for x in random_domain_points(params, 10, seed=3):
        closed = connection_coefficients(metric, x).Gamma
        brute = brute_force_connection(metric, x).Gamma
        assert np.max(np.abs(closed - brute)) <= 1e-11 * max(1.0, np.max(np.abs(brute)))
        # spin-connection coefficients are antisymmetric in the frame pair
        assert np.allclose(closed, -np.transpose(closed, (1, 0, 2)), atol=1e-14)


def test_flat_space_connection_vanishes():
    data = connection_coefficients(minkowski(), np.array([0.0, 1.0, 2.0, 3.0]))
    assert np.all(data.Gamma == 0)


@pytest.mark.parametrize("chart", CHARTS)
@pytest.mark.parametrize("rep", ["standard", "chiral"])
def test_curved_operator_routes_agree(chart, rep):
    report = curved_dirac_check(SchwarzschildParams(1.0, chart), rep, count=4, seed=1)
    assert report.passed, report.first_failure()


@settings(max_examples=30, deadline=None)
@given(rs=st.floats(0.1, 50), r_over_rs=st.floats(1.0001, 40))
def test_radius_conversions_are_inverse(rs, r_over_rs):
    r = r_over_rs * rs
    assert radius_from_rho(rho_from_radius(r, rs), rs) == pytest.approx(r, rel=1e-12)


def test_photon_sphere_in_both_charts():
    split = helicity_split_radii(SchwarzschildParams(1.0, "isotropic"), 2.0)
    assert radius_from_rho(split.rho_zero, 1.0) == pytest.approx(1.5, rel=1e-14)
    assert classical_orbit(SchwarzschildParams(1.0), 3.0).radius == pytest.approx(1.5, rel=1e-12)


@settings(max_examples=8, deadline=None)
@given(rs=st.floats(0.2, 20), h=st.floats(2.0, 6.0))
def test_helicity_radii_scale_with_rs(rs, h):
    base = helicity_split_radii(SchwarzschildParams(1.0, "isotropic"), h)
    scaled = helicity_split_radii(SchwarzschildParams(rs, "isotropic"), h)
    for a, b in zip(base, scaled):
        assert b == pytest.approx(rs * a, rel=1e-10)
    assert scaled.omega_sq_plus == pytest.approx(base.omega_sq_plus / rs**2, rel=1e-10)


def test_helicity_radii_are_branch_maxima():
    split = helicity_split_radii(SchwarzschildParams(1.0, "isotropic"), 2.0)
    for rho, branch in ((split.rho_plus, 1), (split.rho_minus, -1)):
        h = 1e-5
        mid = helicity_branch_omega_sq(rho, 2.0, 1.0, branch)
        assert mid > helicity_branch_omega_sq(rho - h, 2.0, 1.0, branch)
        assert mid > helicity_branch_omega_sq(rho + h, 2.0, 1.0, branch)
    assert split.diagnostics["ordering_ok"]


@pytest.mark.parametrize("m", [2, 3, 5])
def test_isotropic_levels_closed_form(m):
    res = circular_orbit_isotropic(SchwarzschildParams(1.0, "isotropic"), m)
    assert res.omega_sq_plus == pytest.approx(4 * m * (m + 1) / 27, rel=1e-13)
    assert res.omega_sq_minus == pytest.approx(4 * m * (m - 1) / 27, rel=1e-13)


@pytest.mark.parametrize("m", [2, 4])
@pytest.mark.parametrize("r", [1.2, 1.5, 3.0])
def test_standard_levels_match_closed_form(m, r):
    res = circular_orbit_standard(SchwarzschildParams(1.0), m, r=r)
    assert res.diagnostics["closed_form_deviation"] < 1e-12


def test_averaged_extremal_radius_for_h2():
    out = averaged_extremal_radius(SchwarzschildParams(1.0), 2.0)
    assert out["radius"] == pytest.approx(0.75 + math.sqrt(105) / 12, rel=1e-13)
    assert out["second_derivative"] < 0


@pytest.mark.parametrize("bad, message", [(1.0, "below threshold"), (1.99, "below threshold"), (-3.0, "positive")])
def test_threshold_on_angular_momentum(bad, message):
    with pytest.raises(InvalidAngularMomentum, match=message):
        helicity_split_radii(SchwarzschildParams(1.0, "isotropic"), bad)


def test_non_integer_m_rejected():
    with pytest.raises(InvalidAngularMomentum):
        circular_orbit_isotropic(SchwarzschildParams(1.0, "isotropic"), 2.5)


@pytest.mark.parametrize("rs", [0.0, -1.0, math.inf])
def test_bad_schwarzschild_radius(rs):
    with pytest.raises(DomainViolation):
        SchwarzschildParams(rs)


def test_orbit_inside_horizon_rejected():
    with pytest.raises(DomainViolation):
        circular_orbit_standard(SchwarzschildParams(1.0), 2, r=0.9)


def test_scan_is_uniform_and_contains_the_split_maxima():
    params = SchwarzschildParams(1.0, "isotropic")
    rows = scan_potential(params, 2.0, samples=2001)
    assert rows.shape == (2001, 3)
    assert np.allclose(np.diff(rows[:, 0]), rows[1, 0] - rows[0, 0])
    split = helicity_split_radii(params, 2.0)
    assert abs(rows[np.argmax(rows[:, 1]), 0] - split.rho_plus) < 2e-3
    assert abs(rows[np.argmax(rows[:, 2]), 0] - split.rho_minus) < 2e-3
