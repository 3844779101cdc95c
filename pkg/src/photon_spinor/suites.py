"""Seeded identity and property suites, one per module.

Every suite returns a :class:`~photon_spinor.reports.SuiteReport`.  The
CLI ``check`` command and the acceptance tests are thin wrappers around
these functions.  All randomness comes from ``numpy.random.default_rng``
seeded by the caller, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping

import numpy as np

from . import gravity as grav
from .algebra import LorentzParams, Representation, build_matrices, exp_tau, lorentz_rep
from .algebra_checks import (
    exp_tau_check,
    generator_algebra_check,
    lorentz_rep_check,
    matrix_structure_check,
    product_identities_check,
)
from .field import (
    Grid,
    ModeCoefficients,
    SpinorGridField,
    assemble_spinor,
    dirac_residual,
    dirac_residual_array,
    observables,
    synthesize_field,
)
from .medium import (
    MediumProfile,
    TestField,
    envelope_reduction,
    maxwell_medium_residual,
    medium_connection,
    medium_dirac_residual,
    second_order_check,
    spin_orbit_magnitude,
)
from .polarization import identity_suite
from .reports import CheckRecord, SuiteReport, max_abs, merge_max
from .symmetries import (
    axial_current,
    charge_conjugation,
    chiral_transform,
    gauge_transform,
    lorentz_invariance_certificate,
    lorentz_matrix_identity,
    parity,
    parity_coefficients,
    pseudo_lagrangian,
    time_reversal,
    time_reversal_coefficients,
)

__all__ = [
    "SUITES",
    "DEFAULT_SAMPLES",
    "algebra_suite",
    "polarization_suite",
    "field_suite",
    "symmetries_suite",
    "medium_suite",
    "gravity_suite",
    "run_suite",
    "apply_tolerances",
    "convergence_order",
    "plane_wave_pair",
    "MEDIUM_PROFILES",
    "slow_envelope",
    "AXIS_LIMIT_VECTORS",
]

DEFAULT_SAMPLES = 1000
BOX = 2.0 * math.pi
REPS = (Representation.CHIRAL, Representation.STANDARD)

# k on the third axis in both directions, plus one just off the axis inside
# the degeneracy threshold.
AXIS_LIMIT_VECTORS = ((0.0, 0.0, 1.0), (0.0, 0.0, -2.5), (1e-14, 0.0, 3.0))

MEDIUM_PROFILES: dict[str, dict[str, str]] = {
    "homogeneous": {"eps_r": "2.25", "mu_r": "1.44"},
    "graded_static": {"eps_r": "exp(0.6*x1 + 0.2*sin(x2))", "mu_r": "1 + 0.3*cos(x3)^2"},
    "matched_static": {"eps_r": "exp(0.6*x1)", "mu_r": "exp(0.6*x1)"},
    "time_dependent": {"eps_r": "exp(0.4*x1 - 0.3*x3)*(1.5 + 0.2*sin(0.7*t))", "mu_r": "1.2 + 0.3*sin(x2 - 0.5*t)"},
}


# --------------------------------------------------------------------------
# helpers


def convergence_order(coarse: float, fine: float, ratio: float = 2.0) -> float:
    """Observed order ``log(coarse / fine) / log(ratio)``."""
    if coarse <= 0 or fine <= 0:
        return float("nan")
    return math.log(coarse / fine) / math.log(ratio)


def _order_record(name: str, coarse: float, fine: float, target: float = 2.0, band: float = 0.2) -> CheckRecord:
    order = convergence_order(coarse, fine)
    dev = abs(order - target) if math.isfinite(order) else float("inf")
    return CheckRecord(
        name,
        dev if math.isfinite(dev) else 1e300,
        band,
        {"order": order, "coarse": coarse, "fine": fine},
        notes=f"deviation of the measured order from {target}",
    )


def plane_wave_pair(seed: int = 0, modes: int = 2, kmax: int = 2) -> ModeCoefficients:
    """Random lattice plane waves for the ``2 pi`` periodic box."""
    rng = np.random.default_rng(seed)
    coeffs = ModeCoefficients()
    while len(coeffs.entries) < modes:
        k = rng.integers(-kmax, kmax + 1, size=3)
        if not k.any():
            continue
        coeffs.add(tuple(float(v) for v in k), int(rng.integers(1, 3)), complex(rng.normal(), rng.normal()))
    return coeffs


def _random_real_eh(grid: Grid, rng) -> tuple[np.ndarray, np.ndarray]:
    shape = tuple(grid.dims) + (3,)
    return rng.normal(size=shape), rng.normal(size=shape)


# --------------------------------------------------------------------------
# algebra


def algebra_suite(samples: int = DEFAULT_SAMPLES, seed: int = 0, tol: float = 1e-12) -> SuiteReport:
    """Fixed-matrix identities plus seeded product, exponential and Lorentz-map identities."""
    rng = np.random.default_rng(seed)
    report = SuiteReport("algebra")
    for rec in generator_algebra_check() + matrix_structure_check():
        report.add(rec.with_tolerance(tol))

    buckets: dict[str, list[CheckRecord]] = {}

    def keep(records):
        for r in records:
            buckets.setdefault(r.name, []).append(r)

    for s in range(samples):
        a = rng.normal(size=4) + 1j * rng.normal(size=4)
        b = rng.normal(size=4) + 1j * rng.normal(size=4)
        for rep in REPS:
            keep(product_identities_check(a, b, rep))
        v = rng.normal(size=3) * rng.uniform(0.0, 3.0)
        keep(exp_tau_check(v + 1j * rng.normal(size=3) * 0.5))
        keep(exp_tau_check(v * 10.0 ** rng.uniform(-10, -6)))
        params = LorentzParams(tuple(rng.normal(size=3)), tuple(rng.normal(size=3) * 0.7))
        keep(lorentz_rep_check(params))

        # exp_tau(a) exp_tau(-a) = 1 for real a
        inv = exp_tau(v) @ exp_tau(-v) - np.eye(3)
        keep([CheckRecord("exp_tau_inverse_real", max_abs(inv))])
        # collinear complex a: exp_tau(a) exp_tau(-a) = 1 as well
        c = (rng.normal() + 1j * rng.normal()) * v / max(np.linalg.norm(v), 1e-300)
        keep([CheckRecord("exp_tau_inverse_collinear", max_abs(exp_tau(c) @ exp_tau(-c) - np.eye(3)))])
        for rep in REPS:
            rot = lorentz_rep(rep, LorentzParams(params.theta, (0.0, 0.0, 0.0)))
            boost = lorentz_rep(rep, LorentzParams((0.0, 0.0, 0.0), params.zeta))
            keep([CheckRecord(f"rotation_unitary_{rep.value}", max_abs(rot.conj().T @ rot - np.eye(6)))])
            herm = max_abs(boost - boost.conj().T) / max(1.0, max_abs(boost))
            pos = float(np.min(np.linalg.eigvalsh((boost + boost.conj().T) / 2)))
            keep([CheckRecord(f"boost_hermitian_{rep.value}", herm, relative=True)])
            keep([CheckRecord(f"boost_positive_{rep.value}", 0.0 if pos > 0 else -pos + 1.0)])

    for name, recs in buckets.items():
        report.add(merge_max(name, recs, tol))
    return report


# --------------------------------------------------------------------------
# polarization


# The same-sign variant of the rotated-mode parity relation is reported for
# comparison only: the second mode picks up a minus sign.
POLARIZATION_INFORMATIONAL = frozenset({"rotated_mode_parity_uniform_sign"})


def polarization_suite(samples: int = DEFAULT_SAMPLES, seed: int = 0, tol: float = 1e-13) -> SuiteReport:
    """Basis and mode identities at seeded random ``k`` plus the axis limits."""
    rng = np.random.default_rng(seed)
    report = SuiteReport("polarization")
    buckets: dict[str, list[CheckRecord]] = {}
    for _ in range(samples):
        k = rng.normal(size=3) * 10.0 ** rng.uniform(-2, 2)
        for r in identity_suite(k):
            r.witness = {"k": k.tolist()}
            buckets.setdefault(r.name, []).append(r)
    for name, recs in buckets.items():
        merged = merge_max(name, recs, None if name in POLARIZATION_INFORMATIONAL else tol)
        report.add(merged)
    for k in AXIS_LIMIT_VECTORS:
        worst = max(identity_suite(k), key=lambda r: r.max_deviation)
        report.add(CheckRecord(f"axis_limit_{k[2]:+g}", worst.max_deviation, tol, {"k": list(k), "worst": worst.name}))
    return report


# --------------------------------------------------------------------------
# field model


def _homogeneous_medium_pair(coeffs, rep, grid, n_index: float, eps: float, time: float = 0.3):
    """Vacuum solution slowed to speed ``1/n`` and weighted by ``sqrt(eps)``."""
    vac, dvac = synthesize_field(coeffs, rep, grid, time=time)
    weight = math.sqrt(eps)
    field = vac.with_values(vac.values * weight)
    dt_field = dvac.with_values(dvac.values * weight / n_index)
    return vac, dvac, field, dt_field


def field_suite(seed: int = 0, sizes: tuple[int, int] = (16, 32), tol: float = 1e-13) -> SuiteReport:
    """Grid-level checks: residual convergence, layout covariance and Parseval."""
    report = SuiteReport("field")
    coeffs = plane_wave_pair(seed)
    profile = MediumProfile.from_mapping(MEDIUM_PROFILES["homogeneous"])
    n_index = math.sqrt(2.25 * 1.44)
    for rep in REPS:
        dirac, delta, medium = [], [], []
        for n in sizes:
            grid = Grid.periodic_box(n, BOX)
            f, dt = synthesize_field(coeffs, rep, grid, time=0.3)
            dirac.append(dirac_residual(f, dt))
            delta.append(lorentz_invariance_certificate(f, dt).max_delta)
            _, _, mf, mdt = _homogeneous_medium_pair(coeffs, rep, grid, n_index, 2.25)
            medium.append(medium_dirac_residual(mf, mdt, profile).dirac)
        report.add(_order_record(f"dirac_residual_order_{rep.value}", *dirac))
        report.add(_order_record(f"delta_certificate_order_{rep.value}", *delta))
        report.add(_order_record(f"medium_residual_order_{rep.value}", *medium))

    grid = Grid.periodic_box(sizes[0], BOX)
    fs, dts = synthesize_field(coeffs, "standard", grid, time=0.3)
    fc, dtc = synthesize_field(coeffs, "chiral", grid, time=0.3)
    rs_, rc_ = dirac_residual_array(fs, dts), dirac_residual_array(fc.to("standard"), dtc.to("standard"))
    report.add(CheckRecord("layout_covariance", max_abs(rs_ - rc_), tol))
    obs = observables(fs)
    report.add(
        CheckRecord("parseval_energy", abs(obs.energy - coeffs.energy()) / coeffs.energy(), 1e-10, relative=True)
    )
    report.add(CheckRecord("energy_two_routes", abs(obs.energy - obs.energy_eh), tol))
    report.add(CheckRecord("stress_two_routes", max_abs(obs.stress - obs.stress_eh), tol))
    report.add(CheckRecord("stress_symmetric", max_abs(obs.stress - np.swapaxes(obs.stress, -1, -2).conj()), tol))
    return report


# --------------------------------------------------------------------------
# symmetries


def symmetries_suite(seed: int = 0, n: int = 16, tol: float = 1e-12) -> SuiteReport:
    """Discrete transforms, chirality, gauge phase and the Lorentz certificate."""
    rng = np.random.default_rng(seed)
    report = SuiteReport("symmetries")
    coeffs = plane_wave_pair(seed)
    grid = Grid.periodic_box(n, BOX)
    for rep in REPS:
        report.add(lorentz_matrix_identity(rep).with_tolerance(0.0))
        f, dt = synthesize_field(coeffs, rep, grid, time=0.3)
        base = dirac_residual(f, dt)

        E, H = _random_real_eh(grid, rng)
        real = assemble_spinor(E, H, rep, grid)
        report.add(CheckRecord(f"charge_conjugation_real_{rep.value}", max_abs(charge_conjugation(real).values - real.values), 1e-15))
        report.add(CheckRecord(f"axial_current_zero_{rep.value}", max_abs(axial_current(real)), 1e-14))

        theta = float(rng.uniform(0, 2 * math.pi))
        chiral = dirac_residual(chiral_transform(f, theta), chiral_transform(dt, theta))
        report.add(CheckRecord(f"chiral_residual_invariance_{rep.value}", abs(chiral - base), tol, {"theta": theta}))
        gauge = dirac_residual(gauge_transform(f, theta), gauge_transform(dt, theta))
        report.add(CheckRecord(f"gauge_residual_invariance_{rep.value}", abs(gauge - base), tol))
        report.add(
            CheckRecord(
                f"charge_conjugation_residual_{rep.value}",
                abs(dirac_residual(charge_conjugation(f), charge_conjugation(dt)) - base),
                tol,
            )
        )

        # single-mode parity and time reversal in the rotated basis, on a centered grid
        centered = Grid.periodic_box(n - 1 if n % 2 == 0 else n, BOX, centered=True)
        worst_p, worst_t = 0.0, 0.0
        for i in (1, 2):
            single = ModeCoefficients().add((1.0, 2.0, -1.0), i, complex(rng.normal(), rng.normal()))
            f0, _ = synthesize_field(single, rep, centered, rotated=True)
            ref_p, _ = synthesize_field(parity_coefficients(single), rep, centered, rotated=True)
            worst_p = max(worst_p, max_abs(parity(f0).values - ref_p.values))
            ft, _ = synthesize_field(single, rep, centered, rotated=True, time=0.4)
            ref_t, _ = synthesize_field(time_reversal_coefficients(single), rep, centered, rotated=True, time=-0.4)
            worst_t = max(worst_t, max_abs(time_reversal(ft).values - ref_t.values))
        report.add(CheckRecord(f"parity_coefficient_map_{rep.value}", worst_p, tol))
        report.add(CheckRecord(f"time_reversal_coefficient_map_{rep.value}", worst_t, tol))

        cert = lorentz_invariance_certificate(f, dt)
        for r in cert.records:
            if r.name == "delta_max":
                report.add(CheckRecord(f"delta_max_{rep.value}", r.max_deviation, notes="O(h^2) on discretized solutions"))
        report.add(CheckRecord(f"pseudo_lagrangian_max_{rep.value}", max_abs(pseudo_lagrangian(f, dt)), notes="O(h^2)"))
    return report


# --------------------------------------------------------------------------
# medium


def _profile(name: str) -> MediumProfile:
    return MediumProfile.from_mapping(MEDIUM_PROFILES[name])


def medium_suite(seed: int = 0, tol: float = 1e-11, n: int = 12) -> SuiteReport:
    """Connection, residual routes, second-order identities and the envelope reduction.

    The second-order identities are gated on the corrected forms.  The
    printed forms are reported next to them as informational records.
    """
    report = SuiteReport("medium")
    rng = np.random.default_rng(seed)

    # connection samples
    exp_profile = MediumProfile.from_mapping({"eps_r": "exp(2*x1)", "mu_r": "1"})
    conn = medium_connection(exp_profile, (0.1, 0.3, -0.2, 0.4))
    report.add(CheckRecord("connection_exponential_chi", max_abs(conn.chi - np.array([0.0, 1.0, 0.0, 0.0])), 1e-14))
    for name in MEDIUM_PROFILES:
        at = rng.uniform(-0.5, 0.5, 4)
        report.add(CheckRecord(f"grad_ln_n_split_{name}", medium_connection(_profile(name), at).identity_deviation, 1e-14))

    # homogeneous limit: medium residual vs vacuum residual with t -> n t
    profile = _profile("homogeneous")
    n_index = math.sqrt(2.25 * 1.44)
    coeffs = plane_wave_pair(seed)
    grid = Grid.periodic_box(n, BOX)
    for rep in REPS:
        vac, dvac, mf, mdt = _homogeneous_medium_pair(coeffs, rep, grid, n_index, 2.25)
        vac_res = dirac_residual_array(vac, dvac) * math.sqrt(2.25)
        direct = maxwell_medium_residual(mf, mdt, profile)
        b0 = build_matrices(rep).beta[0]
        report.add(CheckRecord(f"homogeneous_limit_{rep.value}", max_abs(direct - vac_res @ b0.T), 1e-13))

    # first-order residual: spinor operator vs direct Maxwell form on a graded, time-dependent medium
    open_grid = Grid((n, n, n), (0.1, 0.1, 0.1), (-0.55, -0.55, -0.55), "open")
    tdep = _profile("time_dependent")
    for rep in REPS:
        values = rng.normal(size=tuple(open_grid.dims) + (6,)) + 1j * rng.normal(size=tuple(open_grid.dims) + (6,))
        f = SpinorGridField(open_grid, values, rep, 0.2)
        dt = f.with_values(rng.normal(size=values.shape) + 0j)
        spinor_route = medium_dirac_residual(f, dt, tdep).residual
        maxwell_route = maxwell_medium_residual(f, dt, tdep)
        report.add(CheckRecord(f"residual_two_routes_{rep.value}", max_abs(spinor_route - maxwell_route), 1e-12))

    # second-order identities
    for name in ("graded_static", "matched_static", "time_dependent", "homogeneous"):
        for rep in REPS:
            sub = second_order_check(_profile(name), rep, seed=seed, tol=tol)
            for r in sub.records:
                gated = r.tolerance is not None and not r.name.endswith("_printed")
                report.add(
                    CheckRecord(
                        f"{r.name}[{name},{rep.value}]",
                        r.max_deviation,
                        r.tolerance if gated else None,
                        notes="" if gated else "informational",
                    )
                )

    # spin-orbit terms vanish for homogeneous media, including time-dependent homogeneous ones
    for name, spec in (("homogeneous", MEDIUM_PROFILES["homogeneous"]), ("homogeneous_pulsed", {"eps_r": "2 + sin(t)", "mu_r": "1.5"})):
        mags = spin_orbit_magnitude(MediumProfile.from_mapping(spec), seed=seed)
        report.add(CheckRecord(f"spin_orbit_zero_{name}", mags["corrected"], 0.0))

    # envelope reduction with a matched static profile
    env = envelope_reduction(_profile("matched_static"), slow_envelope(seed), rng.uniform(-0.4, 0.4, (8, 4)))
    report.add(
        CheckRecord(
            "envelope_substitution_identity",
            env.substitution_deviation,
            1e-12,
            notes=f"dropped terms {env.dropped_terms:.3e}, max SVEA ratio {float(np.max(env.svea_ratios)):.3e}",
        )
    )
    report.add(CheckRecord("envelope_mass_rate", float(np.max(np.abs(env.mass_over_n_rate))), 1e-14))
    return report


def slow_envelope(seed: int = 0, rate: float = 1e-4) -> TestField:
    """Single spatial wave with a tiny temporal rate, suitable as an envelope."""
    rng = np.random.default_rng(seed)
    amplitude = tuple(rng.normal(size=6) + 1j * rng.normal(size=6))
    return TestField(((tuple(rng.normal(size=3)), rate, amplitude),), 0.0, (0.0, 0.0, 0.0, 0.0))


# --------------------------------------------------------------------------
# gravity


def gravity_suite(seed: int = 0, tol: float = 1e-12) -> SuiteReport:
    """Connection oracle, curved operator forms and orbit values."""
    report = SuiteReport("gravity")
    rng = np.random.default_rng(seed)
    std = grav.SchwarzschildParams(1.0, "standard")
    iso = grav.SchwarzschildParams(1.0, "isotropic")

    flat = grav.connection_coefficients(grav.minkowski(), rng.normal(size=4))
    report.add(CheckRecord("minkowski_connection_zero", max(max_abs(flat.C), max_abs(flat.Gamma)), 0.0))
    for params in (std, iso):
        report.add(grav.connection_oracle_check(params, count=100, seed=seed, tol=1e-11))
        for rep in REPS:
            for r in grav.curved_dirac_check(params, rep, seed=seed, tol=tol).records:
                r.name = f"{r.name}[{params.chart.value},{rep.value}]"
                report.add(r)

    x = (0.0, 2.0, math.pi / 2, 0.0)
    data = grav.connection_coefficients(std.metric(), x)
    a = std.metric().values(x)
    d_ln_a0 = (1.0 / 4.0) / (2.0 * math.sqrt(0.5)) / a[0]
    report.add(CheckRecord("standard_C010", abs(data.C[0, 1, 0] + d_ln_a0 / a[1]), 1e-15))

    classical = grav.classical_orbit(std, 2.0)
    report.add(CheckRecord("classical_radius", abs(classical.radius - 1.5), 1e-12))
    report.add(CheckRecord("classical_omega_sq", abs(classical.omega_sq_plus - 16.0 / 27.0), 1e-12))
    report.add(CheckRecord("classical_single_maximum", max(0.0, classical.diagnostics["second_derivative"]), 0.0))

    standard = grav.circular_orbit_standard(std, 2)
    report.add(CheckRecord("standard_level", abs(standard.omega_sq_plus - 32.0 / 81.0), 1e-12))
    worst = 0.0
    for r in np.linspace(1.2, 6.0, 10):
        for m in (2, 3, 5, 8, 13):
            sol = grav.circular_orbit_standard(std, m, r=r)
            worst = max(worst, sol.diagnostics["closed_form_deviation"])
    report.add(CheckRecord("standard_closed_form_grid", worst, 1e-12))
    averaged = grav.averaged_extremal_radius(std, 2.0)
    report.add(CheckRecord("averaged_extremal_closed_form", averaged["deviation"], 1e-12))

    isotropic = grav.circular_orbit_isotropic(iso, 2)
    report.add(CheckRecord("isotropic_level_plus", abs(isotropic.omega_sq_plus - 8.0 / 9.0), 1e-12))
    report.add(CheckRecord("isotropic_level_minus", abs(isotropic.omega_sq_minus - 8.0 / 27.0), 1e-12))
    report.add(CheckRecord("isotropic_eta", abs(isotropic.diagnostics["eta"] - (12 * math.sqrt(3) - 18)), 1e-13))
    report.add(CheckRecord("isotropic_A_rho", abs(isotropic.diagnostics["A_rho"] + 2 * (2 - math.sqrt(3))), 1e-13))
    report.add(CheckRecord("photon_sphere_maps_to_3rs_over_2", abs(grav.radius_from_rho(grav.photon_sphere_rho(1.0), 1.0) - 1.5), 1e-15))

    split = grav.helicity_split_radii(iso, 2.0)
    report.add(CheckRecord("rho_zero", abs(split.rho_zero - (2 + math.sqrt(3)) / 4), 1e-12))
    report.add(CheckRecord("rho_plus", abs(split.rho_plus - 1.295), 1e-3))
    report.add(CheckRecord("rho_minus", abs(split.rho_minus - 0.783), 1e-3))
    poly = split.diagnostics["reference_polynomials"]
    report.add(CheckRecord("rho_plus_polynomial", abs(poly["plus"]), 1e-9))
    report.add(CheckRecord("rho_minus_polynomial", abs(poly["minus"]), 1e-9))
    report.add(CheckRecord("radius_ordering", 0.0 if split.diagnostics["ordering_ok"] else 1.0, 0.0))

    worst_r, worst_w = 0.0, 0.0
    for rs in (2.0, 10.0):
        scaled = grav.helicity_split_radii(grav.SchwarzschildParams(rs, "isotropic"), 2.0)
        worst_r = max(worst_r, max(abs(u / rs - v) for u, v in zip(scaled, split)))
        worst_w = max(worst_w, abs(scaled.omega_sq_plus * rs * rs - split.omega_sq_plus))
    report.add(CheckRecord("radius_scaling", worst_r, 1e-12))
    report.add(CheckRecord("omega_sq_scaling", worst_w, 1e-12))

    scan = grav.scan_potential(iso, 2.0, samples=400, hi=20.0)
    report.add(CheckRecord("strict_splitting", 0.0 if np.all(scan[:, 1] != scan[:, 2]) else 1.0, 0.0))
    far = 1e6
    limit = max(abs(grav.helicity_branch_omega_sq(far, 2.0, 1.0, s) * far * far / 4.0 - 1.0) for s in (1, -1))
    report.add(CheckRecord("flat_space_limit", limit, 1e-5, relative=True))
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "algebra": algebra_suite,
    "polarization": polarization_suite,
    "field": field_suite,
    "symmetries": symmetries_suite,
    "medium": medium_suite,
    "gravity": gravity_suite,
}


def apply_tolerances(report: SuiteReport, overrides: Mapping[str, float] | None) -> SuiteReport:
    """Replace tolerances of gated records.

    Keys may be a record name, a record-name prefix ending in ``*``, or
    ``"*"`` for every gated record.  Informational records stay
    informational.
    """
    if not overrides:
        return report
    for rec in report.records:
        if rec.tolerance is None:
            continue
        for key, value in overrides.items():
            if key == "*" or key == rec.name or (key.endswith("*") and rec.name.startswith(key[:-1])):
                rec.tolerance = float(value)
    return report


def run_suite(name: str, seed: int = 0, tolerances: Mapping[str, float] | None = None) -> list[SuiteReport]:
    """Run one suite (or ``"all"``) and apply tolerance overrides."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
        out.append(apply_tolerances(SUITES[n](seed=seed), tolerances))
    return out
