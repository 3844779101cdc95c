import json

import pytest

from photon_spinor.cli import main
from photon_spinor.reports import CheckRecord, SuiteReport
from photon_spinor.suites import apply_tolerances, convergence_order, run_suite


def test_convergence_order_of_exact_quadratic_error():
    assert convergence_order(4e-4, 1e-4) == pytest.approx(2.0)


def test_apply_tolerances_patterns():
    rep = SuiteReport("x", [CheckRecord("a_1", 1e-10, 1e-9), CheckRecord("a_2", 1e-10, 1e-9), CheckRecord("b", 1.0, None)])
    apply_tolerances(rep, {"a_*": 1e-12})
    assert [r.tolerance for r in rep.records] == [1e-12, 1e-12, None]
    apply_tolerances(rep, {"a_2": 1.0})
    assert rep.records[1].passed and not rep.records[0].passed and rep.records[2].passed


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("astrology")


@pytest.mark.parametrize("name", ["polarization", "symmetries", "medium", "gravity"])
def test_suite_passes(name):
    (report,) = run_suite(name, seed=1)
    assert report.passed, report.first_failure()


@pytest.mark.slow
def test_check_algebra_lists_identities_below_1e12(capsys):
    assert main(["check", "algebra"]) == 0
    doc = json.loads(capsys.readouterr().out)
    records = doc["suites"][0]["records"]
    assert len(records) >= 12
    assert all(r["max_deviation"] < 1e-12 for r in records if r["tolerance"] is not None)


@pytest.mark.slow
def test_check_all_with_impossible_tolerance_fails(capsys):
    assert main(["check", "all", "--tolerance", "1e-30"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("check failed:")


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 11])
def test_field_suite_passes(seed):
    (report,) = run_suite("field", seed=seed)
    assert report.passed, report.first_failure()
