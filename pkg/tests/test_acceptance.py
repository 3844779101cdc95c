"""Acceptance criteria 1-9, one pass/fail line each.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.  Where a library routine exists, the
check recomputes the target with an independent route written here: closed
forms, roots of the reference polynomials, literal constants.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from photon_spinor.gravity import (
    SchwarzschildParams,
    circular_orbit_isotropic,
    circular_orbit_standard,
    classical_orbit,
    connection_oracle_check,
    helicity_split_radii,
    standard_frequency_roots,
)
from photon_spinor.medium import MediumProfile, second_order_check, spin_orbit_magnitude
from photon_spinor.suites import MEDIUM_PROFILES, algebra_suite, field_suite, polarization_suite, symmetries_suite

SQRT3 = math.sqrt(3.0)


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def _nearest_real_root(coeffs, x: float) -> float:
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-9].real
    return float(real[np.argmin(np.abs(real - x))])


# --------------------------------------------------------------------------
# criteria


def criterion_1():
    """Helicity-split orbit radii for rs = 1, h = 2, within one second."""
    t0 = time.perf_counter()
    split = helicity_split_radii(SchwarzschildParams(1.0, "isotropic"), 2.0)
    elapsed = time.perf_counter() - t0
    rho_p, rho_m, rho_0 = split
    poly_p = [64.0, -112.0, 40.0, -3.0]
    poly_m = [128.0, -32.0, -80.0, 22.0, -1.0]
    res_p = abs(np.polyval(poly_p, rho_p))
    res_m = abs(np.polyval(poly_m, rho_m))
    # independent route: the polynomial roots themselves
    root_gap = max(abs(rho_p - _nearest_real_root(poly_p, rho_p)), abs(rho_m - _nearest_real_root(poly_m, rho_m)))
    checks = {
        "rho0": abs(rho_0 - (2.0 + SQRT3) / 4.0) <= 1e-12,
        "rho+": abs(rho_p - 1.295) <= 1e-3,
        "rho-": abs(rho_m - 0.783) <= 1e-3,
        "poly+": res_p < 1e-9,
        "poly-": res_m < 1e-9,
        "root_route": root_gap < 1e-10,
        "runtime": elapsed < 1.0,
    }
    detail = (
        f"rho0={rho_0:.15f} rho+={rho_p:.12f} rho-={rho_m:.12f} |P+|={_fmt(res_p)} |P-|={_fmt(res_m)} "
        f"root gap={_fmt(root_gap)} t={elapsed:.3f}s"
    )
    return all(checks.values()), detail, [k for k, v in checks.items() if not v]


def criterion_2():
    """Energy levels: isotropic pair, standard chart, classical orbit."""
    iso = circular_orbit_isotropic(SchwarzschildParams(1.0, "isotropic"), 2)
    std = circular_orbit_standard(SchwarzschildParams(1.0, "standard"), 2)
    cls = classical_orbit(SchwarzschildParams(1.0, "standard"), 2.0)
    devs = {
        "omega+^2=8/9": abs(iso.omega_sq_plus - 8.0 / 9.0),
        "omega-^2=8/27": abs(iso.omega_sq_minus - 8.0 / 27.0),
        "standard=32/81": abs(std.omega_sq_plus - 32.0 / 81.0),
        "standard_r=3/2": abs(std.radius - 1.5),
        "classical=16/27": abs(cls.omega_sq_plus - 16.0 / 27.0),
    }
    failed = [k for k, v in devs.items() if not v <= 1e-12]
    return not failed, " ".join(f"{k}:{_fmt(v)}" for k, v in devs.items()), failed


def criterion_3():
    """Determinant roots vs closed form on a 50-point grid; level formula at literal constants."""
    worst = 0.0
    count = 0
    for r in np.linspace(1.1, 8.0, 10):
        for m in (2, 3, 4, 7, 12):
            kept = standard_frequency_roots(float(r), float(m), 1.0)["kept"]
            numeric = float(np.real(np.mean(kept**2)))
            closed = m * m / r**2 * (1.0 - 1.0 / r) - ((2.0 * r - 1.0) / (2.0 * r * r)) ** 2
            worst = max(worst, abs(numeric - closed))
            count += 1
    # level formula evaluated at the literal photon-sphere constants
    rho = (2.0 + SQRT3) / 4.0
    eta = 12.0 * SQRT3 - 18.0
    a_rho = -2.0 * (2.0 - SQRT3)
    m = 2.0
    plus = (m * m / rho**2 - 2.0 * m * a_rho / rho) / eta**2
    minus = (m * m / rho**2 + 2.0 * m * a_rho / rho) / eta**2
    lit = max(abs(plus - 8.0 / 9.0), abs(minus - 8.0 / 27.0))
    iso = circular_orbit_isotropic(SchwarzschildParams(1.0, "isotropic"), 2)
    lib = max(abs(iso.omega_sq_plus - plus), abs(iso.omega_sq_minus - minus))
    failed = [name for name, ok in (("grid", count == 50 and worst <= 1e-12), ("literal", lit <= 1e-13), ("library", lib <= 1e-13)) if not ok]
    return not failed, f"grid {count} pts max={_fmt(worst)}; literal constants={_fmt(lit)}; library vs literal={_fmt(lib)}", failed


def _gated(report, limit):
    bad = [r for r in report.records if r.tolerance is not None and not r.max_deviation < limit]
    worst = max((r for r in report.records if r.tolerance is not None), key=lambda r: r.max_deviation)
    return bad, worst


def criterion_4():
    """Algebra identities over 1000 random inputs below 1e-12, within five seconds."""
    t0 = time.perf_counter()
    report = algebra_suite(samples=1000, seed=0)
    elapsed = time.perf_counter() - t0
    bad, worst = _gated(report, 1e-12)
    failed = [r.name for r in bad] + (["runtime"] if elapsed >= 5.0 else []) + (["count"] if len(report.records) < 12 else [])
    return not failed, f"{len(report.records)} identities, worst {worst.name}={_fmt(worst.max_deviation)}, t={elapsed:.2f}s", failed


def criterion_5():
    """Polarization identities over 1000 random k plus three axis limits, below 1e-13."""
    report = polarization_suite(samples=1000, seed=0)
    bad, worst = _gated(report, 1e-13)
    axis = [r for r in report.records if r.name.startswith("axis_limit")]
    failed = [r.name for r in bad] + (["axis_cases"] if len(axis) != 3 else [])
    return not failed, f"{len(report.records)} records ({len(axis)} axis limits), worst {worst.name}={_fmt(worst.max_deviation)}", failed


def criterion_6():
    """Measured convergence order 2 +- 0.2 for the three residuals."""
    report = field_suite(seed=0)
    orders = [r for r in report.records if r.name.endswith(tuple(f"_order_{rep}" for rep in ("standard", "chiral")))]
    kinds = {r.name.rsplit("_order_", 1)[0] for r in orders}
    failed = [r.name for r in orders if not r.max_deviation <= 0.2]
    if kinds != {"dirac_residual", "delta_certificate", "medium_residual"}:
        failed.append("missing residual kinds")
    detail = " ".join(f"{r.name}={r.witness['order']:.3f}" for r in orders)
    return not failed, detail, failed


def criterion_7():
    """Closed-form connection vs brute-force vierbein route, 100 points per chart."""
    records = [connection_oracle_check(SchwarzschildParams(1.0, chart), count=100, seed=7) for chart in ("standard", "isotropic")]
    failed = [r.name for r in records if not (r.relative and r.max_deviation < 1e-11)]
    return not failed, " ".join(f"{r.name}={_fmt(r.max_deviation)}" for r in records), failed


def criterion_8():
    """Charge conjugation on real data, chiral invariance of residuals, vanishing axial current."""
    report = symmetries_suite(seed=0)
    limits = {"charge_conjugation_real": 1e-15, "chiral_residual_invariance": 1e-12, "axial_current_zero": 1e-14}
    picked = [(r, lim) for r in report.records for key, lim in limits.items() if r.name.startswith(key)]
    failed = [r.name for r, lim in picked if not r.max_deviation <= lim]
    if len(picked) != 2 * len(limits):
        failed.append("missing records")
    return not failed, " ".join(f"{r.name}={_fmt(r.max_deviation)}" for r, _ in picked), failed


MEDIUM_IDENTITIES = (
    "mixed_partial_commutator",
    "connection_derivative_identity",
    "covariant_commutator",
    "spatial_square_printed",
    "square_split_printed",
    "square_expanded_printed",
    "reduced_printed",
)


def criterion_9():
    """Medium operator identities as stated, below 1e-11; spin-orbit terms zero when homogeneous."""
    failed, corrected_worst = [], 0.0
    for name in ("graded_static", "matched_static", "time_dependent", "homogeneous"):
        for rep in ("standard", "chiral"):
            report = second_order_check(MediumProfile.from_mapping(MEDIUM_PROFILES[name]), rep, seed=0)
            for r in report.records:
                if r.name in MEDIUM_IDENTITIES and not r.max_deviation < 1e-11:
                    failed.append(f"{r.name}[{name},{rep}]={_fmt(r.max_deviation)}")
                if r.name.endswith("_corrected"):
                    corrected_worst = max(corrected_worst, r.max_deviation)
    for spec in (MEDIUM_PROFILES["homogeneous"], {"eps_r": "2 + sin(t)", "mu_r": "1.5"}):
        mags = spin_orbit_magnitude(MediumProfile.from_mapping(spec))
        if mags["printed"] != 0.0 or mags["corrected"] != 0.0:
            failed.append(f"spin_orbit_nonzero{spec}")
    kinds = sorted({f.split("[")[0] for f in failed})
    detail = f"{len(failed)} failing cases over {', '.join(kinds) or 'none'}; corrected forms worst={_fmt(corrected_worst)}"
    return not failed, detail, failed


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def _line(index: int, fn) -> tuple[bool, str, list]:
    passed, detail, failed = fn()
    return passed, f"criterion {index}: {'PASS' if passed else 'FAIL'}  {fn.__doc__.strip()}  [{detail}]", failed


@pytest.mark.slow
@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1), ids=[f"criterion_{i}" for i in range(1, len(CRITERIA) + 1)])
def test_acceptance_criterion(index, acceptance_lines):
    passed, line, failed = _line(index, CRITERIA[index - 1])
    acceptance_lines[index] = line
    print(line)
    assert passed, f"{line}\nfailing: {failed}"


if __name__ == "__main__":
    for i, fn in enumerate(CRITERIA, 1):
        print(_line(i, fn)[1])
