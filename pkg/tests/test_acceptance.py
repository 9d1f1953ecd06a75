"""Acceptance gate: every criterion at its stated tolerance, one printed
pass/fail line each.  Run with ``pytest tests/test_acceptance.py -v -s``."""

import math
import time

import emrate.cli as cli
from emrate import hankel_integrals
from emrate.mie import SphereMedium
from emrate.oracle_suite import run_suite
from emrate.rates import (
    PARALLEL,
    PERPENDICULAR,
    decay_correction_dipole,
    decay_correction_near,
    decay_correction_series,
    decay_correction_volume,
    rate_integral_assembled,
    rate_integral_closed,
)

MIX = SphereMedium(q=0.5, epsilon=1.5 + 0.5j)
SCATTER = SphereMedium(q=0.5, epsilon=1.5 + 0j)


def _report(num: int, label: str, passed: bool, detail: str = "") -> None:
    state = "PASS" if passed else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"ACCEPTANCE {num:2d} {state}: {label}{suffix}")
    assert passed, f"criterion {num}: {label}{suffix}"


def _suite_report(name: str):
    return {r.check_id: r for r in run_suite(name)}


def test_criterion_01_integral_dual_path():
    t0 = time.monotonic()
    worst = 0.0
    samples = 0
    for key in hankel_integrals.supported_keys(12):
        for zeta in (0.6, 1.0, 2.0, 5.0, 10.0):
            a = hankel_integrals.closed_form(key, zeta)
            b = hankel_integrals.quadrature(key, zeta, tol=1e-10)
            worst = max(worst, abs(a - b) / abs(a))
            samples += 1
    elapsed = time.monotonic() - t0
    _report(
        1,
        "closed forms equal contour quadrature to 1e-8 for all supported keys",
        worst <= 1e-8 and elapsed < 60.0,
        f"max_rel={worst:.2e}, {samples} samples, {elapsed:.1f}s",
    )


def test_criterion_02_recurrence_ladder():
    worst = 0.0
    for rel_name, l1, l2, n in hankel_integrals.testable_relation_instances(10):
        for zeta in (1.0, 3.0):
            lhs, rhs = hankel_integrals.recurrence_sides(rel_name, l1, l2, n, zeta)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    _report(2, "both integral recurrences hold to 1e-10", worst <= 1e-10,
            f"max_rel={worst:.2e}")


def test_criterion_03_rate_integral_dual_path():
    worst = 0.0
    for ell in range(1, 9):
        for zeta in (0.6, 1.0, 2.0, 5.0):
            for orientation in (PERPENDICULAR, PARALLEL):
                for kind in ("e", "m"):
                    a = rate_integral_closed(ell, zeta, orientation, kind)
                    b = rate_integral_assembled(ell, zeta, orientation, kind)
                    worst = max(worst, abs(a - b) / abs(a))
    _report(3, "distance-integral closed forms equal ladder assembly to 1e-10",
            worst <= 1e-10, f"max_rel={worst:.2e}")


def test_criterion_04_series_vs_volume_integral():
    worst = 0.0
    for orientation in (PERPENDICULAR, PARALLEL):
        for zeta in (1.0, 2.0, 5.0):
            a = decay_correction_series(zeta, MIX, orientation, tol=1e-12).f
            b = decay_correction_volume(zeta, MIX, orientation, tol=1e-10)
            worst = max(worst, abs(a - b) / abs(a))
    _report(4, "multipole series equals raw volume quadrature to 1e-6",
            worst <= 1e-6, f"max_rel={worst:.2e}")


def test_criterion_05_far_asymptote():
    suite = _suite_report("asymptotics")
    agree = suite["far_asymptote_agreement"]
    rates_suite = _suite_report("rates")
    slopes = rates_suite["far_decay_exponent"]
    ok = agree.passed and slopes.passed
    _report(5, "far asymptote within 10%/5% at distance 5/10 and decay "
               "slopes -1/-2 within 0.1",
            ok, f"agreement={agree.max_rel_err:.2f} (of bound), "
                f"slope_dev={slopes.max_rel_err:.3f}")


def test_criterion_06_near_contact_asymptote():
    zeta = MIX.q + 0.01
    f_perp = decay_correction_series(zeta, MIX, PERPENDICULAR, tol=1e-10).f
    f_par = decay_correction_series(zeta, MIX, PARALLEL, tol=1e-10).f
    target = -(3.0 / (4 * MIX.q**2 * (zeta - MIX.q))) * (1 / 6.5)
    dev = abs(f_perp - target) / abs(target)
    ratio = f_par / f_perp
    _report(6, "near-contact divergence within 15% and parallel/perp in [1.8, 2.2]",
            dev <= 0.15 and 1.8 <= ratio <= 2.2,
            f"dev={dev:.3f}, ratio={ratio:.3f}")


def test_criterion_07_pure_absorber_dipole_limit():
    eps = 1.5 + 0.5j
    target = -1.5 * ((eps - 1) / (eps + 2)).imag
    assert abs(target - (-0.18)) < 1e-15  # exact complex arithmetic
    zeta = 0.02
    v = decay_correction_dipole(zeta, eps, PERPENDICULAR) * zeta**3
    dev1 = abs(v - target) / abs(target)
    small = SphereMedium(q=1e-3, epsilon=eps)
    a = decay_correction_series(1.0, small, PERPENDICULAR, tol=1e-13).f
    b = decay_correction_dipole(1.0, eps, PERPENDICULAR)
    dev2 = abs(a - b) / abs(b)
    _report(7, "point-limit contact strength -0.18 within 3% and 1e-4 series match",
            dev1 <= 0.03 and dev2 <= 1e-4, f"contact_dev={dev1:.4f}, series_dev={dev2:.2e}")


def test_criterion_08_null_contrast():
    report = _suite_report("rates")["null_contrast_zero"]
    _report(8, "unit permittivity gives exactly zero through every path",
            report.passed, f"max_abs={report.max_rel_err:.1e}")


def test_criterion_09_lossless_finiteness():
    res = decay_correction_series(SCATTER.q + 1e-3, SCATTER, PERPENDICULAR)
    ok = math.isfinite(res.f) and res.converged
    _report(9, "lossless spheres give finite, converged value at contact",
            ok, f"f={res.f:.6f}, converged={res.converged}")


def test_criterion_10_normalization_reduction():
    report = _suite_report("asymptotics")["normalization_reduction"]
    _report(10, "reduced prefactors equal literal composition to 1e-12 "
                "(density cancels)",
            report.passed, f"max_rel={report.max_rel_err:.2e}")


def test_criterion_11_figure_regression(tmp_path):
    stable = True
    for fig in (1, 2, 3, 4):
        a = tmp_path / f"fig{fig}_a.csv"
        b = tmp_path / f"fig{fig}_b.csv"
        assert cli.cmd_figure(fig, str(a)) == 0
        assert cli.cmd_figure(fig, str(b)) == 0
        stable &= a.read_bytes() == b.read_bytes()

    def first_fs(path, count=6):
        rows = path.read_text().splitlines()[1:]
        return [float(r.split(",")[1]) for r in rows[:count]]

    f1 = first_fs(tmp_path / "fig1_a.csv")
    f2 = first_fs(tmp_path / "fig2_a.csv")
    f3 = first_fs(tmp_path / "fig3_a.csv")
    finite_start = all(math.isfinite(v) for v in f1) and abs(f1[0]) < 10.0
    diverging = all(v < 0 for v in f2 + f3) and f2[0] < f2[-1] and f3[0] < f3[-1]
    _report(11, "figure CSVs byte-stable; absorbing presets diverge negative "
                "at contact, lossless preset stays finite",
            stable and finite_start and diverging,
            f"fig1_start={f1[0]:.3f}, fig2_start={f2[0]:.1f}, fig3_start={f3[0]:.2f}")
