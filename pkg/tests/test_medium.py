import json
import math

import numpy as np
import pytest

from photon_spinor.errors import ConfigError, DegenerateMass, ExpressionError, NonPositiveMedium, SVEAViolated
from photon_spinor.medium import (
    MediumProfile,
    TestField,
    envelope_reduction,
    medium_connection,
    second_order_check,
    spin_orbit_magnitude,
)
from photon_spinor.suites import MEDIUM_PROFILES, slow_envelope

REPS = ["standard", "chiral"]


def profile(name):
    return MediumProfile.from_mapping(MEDIUM_PROFILES[name])


@pytest.mark.parametrize("rep", REPS)
@pytest.mark.parametrize("name", ["graded_static", "matched_static", "time_dependent", "homogeneous"])
def test_corrected_second_order_identities_hold(name, rep):
    report = second_order_check(profile(name), rep, seed=2)
    gated = [r for r in report.records if r.tolerance is not None and not r.name.endswith("_printed")]
    assert gated
    for r in gated:
        assert r.max_deviation < 1e-11, r


@pytest.mark.parametrize("rep", REPS)
def test_first_order_commutator_identities_hold(rep):
    report = second_order_check(profile("time_dependent"), rep, seed=4)
    named = {r.name: r.max_deviation for r in report.records}
    for key in ("mixed_partial_commutator", "connection_derivative_identity", "covariant_commutator"):
        assert named[key] < 1e-11


@pytest.mark.parametrize("spec", [{"eps_r": "1", "mu_r": "1"}, MEDIUM_PROFILES["homogeneous"], {"eps_r": "2 + sin(t)", "mu_r": "1.5"}])
def test_spin_orbit_terms_vanish_for_homogeneous_media(spec):
    mags = spin_orbit_magnitude(MediumProfile.from_mapping(spec))
    assert mags == {"printed": 0.0, "corrected": 0.0}


def test_spin_orbit_terms_present_for_graded_media():
    assert spin_orbit_magnitude(profile("graded_static"))["corrected"] > 1e-3


def test_connection_of_exponential_profile():
    conn = medium_connection(MediumProfile.from_mapping({"eps_r": "exp(2*x1)"}), (0.0, 0.3, 0.1, -0.2))
    # grad ln n = grad ln sqrt(eps mu) = (1, 0, 0), and chi carries all of it
    assert np.allclose(conn.grad_ln_n, [1, 0, 0], atol=1e-15)
    assert np.allclose(conn.chi, [0, 1, 0, 0], atol=1e-14)
    assert np.allclose(conn.eta, 0, atol=1e-14)
    assert conn.n == pytest.approx(math.exp(0.3))


def test_profile_file_roundtrip(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"eps_r": "2 + x1^2", "mu_r": "1"}))
    p = MediumProfile.from_json(path)
    assert p.to_json() == {"eps_r": "2 + x1^2", "mu_r": "1"}
    eps, mu = p.values(np.array([[0.0, 2.0, 0.0, 0.0]]))
    assert eps[0] == 6.0 and mu[0] == 1.0


@pytest.mark.parametrize(
    "data, error",
    [
        ({"mu_r": "1"}, ConfigError),
        ({"eps_r": "1", "colour": "red"}, ConfigError),
        ({"eps_r": "1 +"}, ExpressionError),
    ],
)
def test_bad_profile_specs(data, error):
    with pytest.raises(error):
        MediumProfile.from_mapping(data)


def test_non_positive_medium_rejected():
    p = MediumProfile.from_mapping({"eps_r": "x1", "mu_r": "1"})
    with pytest.raises(NonPositiveMedium):
        p.values(np.array([[0.0, -1.0, 0.0, 0.0]]))


def test_envelope_reduction_is_exact_algebra():
    pts = np.random.default_rng(0).uniform(-0.4, 0.4, (6, 4))
    env = envelope_reduction(profile("matched_static"), slow_envelope(0), pts)
    assert env.substitution_deviation < 1e-12
    assert np.all(env.m_eff > 0)


def test_envelope_requires_slow_variation():
    pts = np.random.default_rng(0).uniform(-0.4, 0.4, (6, 4))
    fast = TestField(((tuple([1.0, 0.0, 0.0]), 50.0, tuple([1.0] * 6)),), 0.0, (0.0, 0.0, 0.0, 0.0))
    with pytest.raises(SVEAViolated):
        envelope_reduction(profile("matched_static"), fast, pts)


def test_envelope_requires_nonzero_mass():
    pts = np.zeros((2, 4))
    with pytest.raises(DegenerateMass):
        envelope_reduction(profile("homogeneous"), slow_envelope(0), pts)
