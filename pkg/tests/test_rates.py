"""Rate machinery: distance integrals, Green components, correction series
and its asymptotic forms."""

import cmath
import math

import numpy as np
import pytest

from emrate.mie import SphereMedium, multipole_amplitudes
from emrate.rates import (
    PARALLEL,
    PERPENDICULAR,
    decay_correction_dipole,
    decay_correction_far,
    decay_correction_near,
    decay_correction_series,
    decay_correction_volume,
    far_amplitude_sum,
    green_rr,
    green_tt,
    rate_integral_assembled,
    rate_integral_closed,
    rate_integral_far,
)
from emrate.specfun import riccati_deriv, sph_hankel1

from test_specfun import rel

MIX = SphereMedium(q=0.5, epsilon=1.5 + 0.5j)
SCATTER = SphereMedium(q=0.5, epsilon=1.5 + 0j)
VACUUM = SphereMedium(q=0.5, epsilon=1.0 + 0j)


# ---------------------------------------------------------------------------
# distance integrals
# ---------------------------------------------------------------------------


def test_electric_integral_contact_divergence():
    # J(zeta) ~ -1/(4 zeta^3) for small zeta (perpendicular electric, order 1)
    zeta = 0.05
    v = rate_integral_closed(1, zeta, PERPENDICULAR, "e")
    assert abs(v.real - (-1 / (4 * zeta**3))) / (1 / (4 * zeta**3)) < 0.05


def test_far_form_approached_at_large_zeta():
    zeta = 10.0
    a = rate_integral_closed(1, zeta, PERPENDICULAR, "e")
    b = rate_integral_far(1, zeta, PERPENDICULAR, "e")
    assert abs(a - b) / abs(b) < 0.10
    zeta = 30.0
    a = rate_integral_closed(1, zeta, PERPENDICULAR, "e")
    b = rate_integral_far(1, zeta, PERPENDICULAR, "e")
    assert abs(a - b) / abs(b) < 0.03


def test_far_form_structure():
    for kind in ("e", "m"):
        for ell in (1, 2, 5):
            a = rate_integral_far(ell, 3.0, PERPENDICULAR, kind)
            b = rate_integral_far(ell + 1, 3.0, PERPENDICULAR, kind)
            assert a == -b  # exact sign alternation in the order
            par = rate_integral_far(ell, 3.0, PARALLEL, kind)
            assert par == a * 1j / 3.0  # exact extra i/zeta


@pytest.mark.parametrize("orientation", [PERPENDICULAR, PARALLEL])
@pytest.mark.parametrize("kind", ["e", "m"])
def test_dual_path_spot(orientation, kind):
    for ell in (1, 2, 4):
        for zeta in (0.8, 2.0):
            a = rate_integral_closed(ell, zeta, orientation, kind)
            b = rate_integral_assembled(ell, zeta, orientation, kind)
            assert abs(a - b) / abs(a) < 1e-10


def test_magnetic_parallel_example():
    a = rate_integral_closed(2, 1.5, PARALLEL, "m")
    b = rate_integral_assembled(2, 1.5, PARALLEL, "m")
    assert abs(a - b) / abs(a) < 1e-10


def test_order_one_assembly_uses_singular_keys():
    # electric order 1 exercises the quadrature-served sub-floor keys
    a = rate_integral_closed(1, 2.0, PARALLEL, "e")
    b = rate_integral_assembled(1, 2.0, PARALLEL, "e")
    assert abs(a - b) / abs(a) < 1e-10


def test_rate_integral_validation():
    with pytest.raises(ValueError):
        rate_integral_closed(0, 1.0, PERPENDICULAR, "e")
    with pytest.raises(ValueError):
        rate_integral_closed(1, -1.0, PERPENDICULAR, "e")
    with pytest.raises(ValueError):
        rate_integral_closed(1, 1.0, "diagonal", "e")
    with pytest.raises(ValueError):
        rate_integral_closed(1, 1.0, PERPENDICULAR, "x")


# ---------------------------------------------------------------------------
# coincident-point Green components
# ---------------------------------------------------------------------------


def _green_oracle(r, medium, lmax):
    """Term-by-term summation from public scalar functions only."""
    rr = 0j
    tt = 0j
    for ell in range(1, lmax + 1):
        amp = multipole_amplitudes(ell, medium)
        h = sph_hankel1(ell, r)
        ric = riccati_deriv(ell, r)
        rr += (-1j) ** ell * (ell * (ell + 1)) ** 2 * amp.B_e * h * h
        tt += (-1j) ** ell * ell * (ell + 1) * (amp.B_e * ric * ric + amp.B_m * (r * h) ** 2)
    return rr / (4 * math.pi * r * r), tt / (8 * math.pi * r * r)


def test_green_zero_without_contrast():
    assert green_rr(2.0, VACUUM, 16) == 0
    assert green_tt(2.0, VACUUM, 16) == 0


def test_green_term_by_term_oracle():
    rr_o, tt_o = _green_oracle(2.0, MIX, 20)
    assert rel(green_rr(2.0, MIX, 20), rr_o) < 1e-12
    assert rel(green_tt(2.0, MIX, 20), tt_o) < 1e-12


def test_green_radial_far_decay_slope():
    rs = np.geomspace(20.0, 80.0, 9)
    mags = [abs(green_rr(float(r), MIX, 12)) for r in rs]
    slope = np.polyfit(np.log(rs), np.log(mags), 1)[0]
    assert abs(slope - (-4.0)) < 0.3


def test_green_requires_point_outside_sphere():
    with pytest.raises(ValueError):
        green_rr(0.4, MIX, 8)


def test_green_warns_on_premature_truncation():
    with pytest.warns(RuntimeWarning):
        green_rr(0.55, MIX, 2)
    with pytest.warns(RuntimeWarning):
        green_tt(0.55, MIX, 2)


# ---------------------------------------------------------------------------
# volume-quadrature oracle
# ---------------------------------------------------------------------------


def test_volume_weights_vanish_at_ray_start():
    z = 1.7
    t = z
    assert abs(z**3 / (3 * t) - z * t + 2 * t * t / 3) < 1e-14
    assert abs(-(z**3) / (3 * t) + t * t / 3) < 1e-14
    assert abs(-z * t + t * t) < 1e-14
    # reconstructed parallel weights share the endpoint zeros
    assert abs(-2 * z**3 / (3 * t) + 2 * t * t / 3) < 1e-14
    assert abs(2 * z**3 / (3 * t) - 2 * z * t + 4 * t * t / 3) < 1e-13


@pytest.mark.parametrize("orientation", [PERPENDICULAR, PARALLEL])
def test_volume_oracle_matches_series(orientation):
    a = decay_correction_series(2.0, MIX, orientation, tol=1e-12).f
    b = decay_correction_volume(2.0, MIX, orientation)
    assert abs(a - b) / abs(a) < 1e-6


def test_volume_zero_without_contrast():
    assert decay_correction_volume(2.0, VACUUM, PERPENDICULAR) == 0


# ---------------------------------------------------------------------------
# correction series
# ---------------------------------------------------------------------------


def test_series_zero_without_contrast():
    res = decay_correction_series(2.0, VACUUM, PERPENDICULAR)
    assert res.f == 0 and res.converged


def test_series_tracks_far_asymptote():
    res = decay_correction_series(10.0, MIX, PERPENDICULAR, tol=1e-10)
    asym = decay_correction_far(10.0, MIX, PERPENDICULAR)
    assert abs(res.f - asym) / abs(res.f) < 0.05


def test_series_tracks_near_asymptote():
    res = decay_correction_series(0.51, MIX, PERPENDICULAR)
    asym = decay_correction_near(0.51, MIX, PERPENDICULAR)
    assert abs(res.f - asym) / abs(asym) < 0.15


def test_series_convergence_contract():
    for zeta in (0.7, 1.0, 4.0, 9.0):
        res = decay_correction_series(zeta, MIX, PERPENDICULAR, tol=1e-9)
        assert res.converged
        assert res.tail_estimate <= 1e-9 * max(abs(res.f), 1.0)
        assert res.terms_used <= 200


def test_series_reports_cap_overflow_without_raising():
    res = decay_correction_series(0.55, MIX, PERPENDICULAR, tol=1e-10, lmax_cap=20)
    assert not res.converged
    assert res.terms_used == 20
    assert math.isfinite(res.f)


def test_series_validation():
    with pytest.raises(ValueError):
        decay_correction_series(0.4, MIX, PERPENDICULAR)
    with pytest.raises(ValueError):
        decay_correction_series(1.0, MIX, PERPENDICULAR, tol=0.0)
    with pytest.raises(ValueError):
        decay_correction_series(1.0, MIX, PERPENDICULAR, lmax_cap=2)


# ---------------------------------------------------------------------------
# point-scatterer limit
# ---------------------------------------------------------------------------


def test_dipole_real_permittivity_stays_bounded_near_contact():
    # Im of a real ratio is 0: no contact divergence for lossless media
    assert abs(decay_correction_dipole(0.02, 1.5 + 0j, PERPENDICULAR)) < 10.0


def test_dipole_contact_divergence_strength():
    # f * zeta^3 -> -(3/2) Im[(eps-1)/(eps+2)] = -0.18, fixed beforehand by
    # exact complex arithmetic: (0.5+0.5i)/(3.5+0.5i) = 0.16+0.12i
    eps = 1.5 + 0.5j
    assert abs((eps - 1) / (eps + 2) - (0.16 + 0.12j)) < 1e-15
    zeta = 0.02
    v = decay_correction_dipole(zeta, eps, PERPENDICULAR) * zeta**3
    assert abs(v - (-0.18)) / 0.18 < 0.03


def test_dipole_consistent_with_small_q_series():
    medium = SphereMedium(q=1e-3, epsilon=1.5 + 0.5j)
    a = decay_correction_series(1.0, medium, PERPENDICULAR, tol=1e-13).f
    b = decay_correction_dipole(1.0, 1.5 + 0.5j, PERPENDICULAR)
    assert abs(a - b) / abs(b) < 1e-4


def test_zero_size_routes_to_dipole_limit():
    medium = SphereMedium(q=0.0, epsilon=1.5 + 0.5j)
    res = decay_correction_series(1.0, medium, PERPENDICULAR)
    assert res.converged and res.terms_used == 1
    assert res.f == decay_correction_dipole(1.0, 1.5 + 0.5j, PERPENDICULAR)


# ---------------------------------------------------------------------------
# asymptotic forms
# ---------------------------------------------------------------------------


def test_far_orientation_power_offset():
    # parallel decays one power faster: zeta * f_par / f_perp stays bounded
    ratios = []
    for zeta in np.linspace(20, 40, 17):
        fp = decay_correction_far(zeta, MIX, PERPENDICULAR)
        fl = decay_correction_far(zeta, MIX, PARALLEL)
        if abs(fp) > 1e-6:
            ratios.append(abs(fl) * zeta / abs(fp))
    assert ratios and max(ratios) < 20.0


def test_far_zero_without_contrast():
    assert decay_correction_far(3.0, VACUUM, PERPENDICULAR) == 0
    assert far_amplitude_sum(VACUUM) == 0


def test_near_strength_exact_arithmetic():
    # Im[(eps-1)/(eps+1)] = Im[(0.5+0.5i)/(2.5+0.5i)] = 1/6.5
    eps = 1.5 + 0.5j
    assert abs(((eps - 1) / (eps + 1)).imag - 1 / 6.5) < 1e-15
    zeta = 0.51
    expected = -3.0 / (4 * 0.25 * 0.01) / 6.5
    assert rel(decay_correction_near(zeta, MIX, PERPENDICULAR), expected) < 1e-12


def test_near_lossless_is_zero():
    assert decay_correction_near(0.51, SCATTER, PERPENDICULAR) == 0


def test_near_parallel_is_twice_perpendicular():
    a = decay_correction_near(0.52, MIX, PERPENDICULAR)
    b = decay_correction_near(0.52, MIX, PARALLEL)
    assert b == 2 * a
    # the same factor holds in the point-scatterer limit
    a0 = decay_correction_near(0.3, SphereMedium(q=0.0, epsilon=1.5 + 0.5j), PERPENDICULAR)
    b0 = decay_correction_near(0.3, SphereMedium(q=0.0, epsilon=1.5 + 0.5j), PARALLEL)
    assert b0 == 2 * a0


def test_point_limit_far_form():
    # q = 0 far asymptote tracks the point-limit series at large distance;
    # sample at an envelope peak where the comparison is phase-insensitive
    eps = 1.5 + 0.5j
    medium = SphereMedium(q=0.0, epsilon=eps)
    phi = cmath.phase((eps - 1) / (eps + 2))
    zeta = (math.pi / 2 + 5 * math.pi - phi) / 2  # |sin(2 zeta + phi)| = 1
    a = decay_correction_series(zeta, medium, PERPENDICULAR).f
    b = decay_correction_far(zeta, medium, PERPENDICULAR)
    assert abs(a - b) / abs(a) < 0.10
