"""Electric and magnetic multipole scattering amplitudes of a single
absorptive dielectric sphere.

The sphere is characterized by its size parameter ``q`` (radius in units
of the reduced wavelength) and complex relative permittivity ``epsilon``
with Im(epsilon) >= 0 (passive medium).  The interior argument is
``q' = sqrt(epsilon) * q`` on the principal branch Im(sqrt) >= 0; the
amplitudes are branch-independent (validated in the tests).

Amplitudes fall off as q^(2l+1) (electric) and q^(2l+3) (magnetic), so
high orders leave double range quickly; the scaled ladder
(``amplitudes_scaled``) keeps them exactly representable for the series
machinery.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ._scaled import Scaled, sadd, sdiv, smul, smulc, snorm, sto
from .specfun import sph_jn_scaled, sph_h1n_scaled, sph_bessel_j, sph_hankel1

__all__ = [
    "SphereMedium",
    "MultipoleAmplitudes",
    "aux_f",
    "multipole_amplitudes",
    "amplitudes_scaled",
    "multipole_amplitude_large_ell",
]

_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)  # i**k for k mod 4


@dataclass(frozen=True)
class SphereMedium:
    """One physical scenario: sphere size parameter and permittivity.

    q = 0 is the point-scatterer limit and is only meaningful on the
    dipole-limit evaluation path of the rates module.
    """

    q: float
    epsilon: complex

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError(f"size parameter q must be >= 0, got {self.q}")
        eps = complex(self.epsilon)
        if eps.imag < 0:
            raise ValueError(f"Im(epsilon) must be >= 0 (passive medium), got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def q_inside(self) -> complex:
        """Interior argument sqrt(epsilon)*q, principal branch Im >= 0."""
        root = cmath.sqrt(self.epsilon)
        if root.imag < 0:
            root = -root
        return root * self.q


@dataclass(frozen=True)
class MultipoleAmplitudes:
    """Electric (B_e) and magnetic (B_m) amplitudes at one order."""

    ell: int
    B_e: complex
    B_m: complex


def aux_f(ell: int, z: complex, family: str = "bessel") -> complex:
    """Auxiliary combination (ell+1)*f_ell(z) - z*f_{ell+1}(z).

    ``family`` selects f = spherical Bessel j ("bessel") or outgoing
    Hankel h^(1) ("hankel").
    """
    if ell < 1:
        raise ValueError(f"order must be >= 1, got {ell}")
    if family == "bessel":
        return (ell + 1) * sph_bessel_j(ell, z) - z * sph_bessel_j(ell + 1, z)
    if family == "hankel":
        return (ell + 1) * sph_hankel1(ell, z) - z * sph_hankel1(ell + 1, z)
    raise ValueError(f"family must be 'bessel' or 'hankel', got {family!r}")


def _aux_from_ladder(ell: int, z: complex, mant, expo) -> Scaled:
    """(ell+1)*f_ell - z*f_{ell+1} from a precomputed scaled ladder."""
    a = snorm(complex(mant[ell]) * (ell + 1), int(expo[ell]))
    b = snorm(complex(mant[ell + 1]) * (-z), int(expo[ell + 1]))
    return sadd(a, b)


# Denominator magnitudes below this are unphysical for a passive medium
# and indicate a degenerate input; fail loudly instead of returning Inf.
_DENOM_FLOOR_LOG2 = -930  # ~1e-280


def amplitudes_scaled(
    lmax: int, medium: SphereMedium, _sqrt_sign: int = +1
) -> tuple[list[Scaled], list[Scaled]]:
    """Scaled amplitude ladders (B_e[l], B_m[l]) for l = 0..lmax.

    Index 0 is a placeholder zero.  ``_sqrt_sign`` flips the branch of
    sqrt(epsilon); it exists for the branch-independence check only.
    """
    q = medium.q
    if not q > 0:
        raise ValueError("multipole amplitudes need q > 0")
    qp = _sqrt_sign * medium.q_inside
    eps = medium.epsilon

    jq_m, jq_e = sph_jn_scaled(lmax + 1, q)
    jp_m, jp_e = sph_jn_scaled(lmax + 1, qp)
    hq_m, hq_e = sph_h1n_scaled(lmax + 1, q)

    Be: list[Scaled] = [(0j, 0)]
    Bm: list[Scaled] = [(0j, 0)]
    for l in range(1, lmax + 1):
        f_q = _aux_from_ladder(l, q, jq_m, jq_e)
        f_p = _aux_from_ladder(l, qp, jp_m, jp_e)
        fh_q = _aux_from_ladder(l, q, hq_m, hq_e)
        jq = (complex(jq_m[l]), int(jq_e[l]))
        jp = (complex(jp_m[l]), int(jp_e[l]))
        hq = (complex(hq_m[l]), int(hq_e[l]))

        num_m = sadd(smul(f_q, jp), smulc(smul(jq, f_p), -1))
        num_e = sadd(smulc(smul(f_q, jp), eps), smulc(smul(jq, f_p), -1))
        den_m = sadd(smul(fh_q, jp), smulc(smul(hq, f_p), -1))
        den_e = sadd(smulc(smul(fh_q, jp), eps), smulc(smul(hq, f_p), -1))

        for den in (den_e, den_m):
            if den[0] == 0 or den[1] + math.log2(max(abs(den[0]), 1e-300)) < _DENOM_FLOOR_LOG2:
                raise ZeroDivisionError(
                    f"degenerate multipole denominator at order {l} (q={q}, eps={eps})"
                )

        pref = _I_POW[(l + 1) % 4] * (2 * l + 1) / (l * (l + 1))
        Be.append(smulc(sdiv(num_e, den_e), pref))
        Bm.append(smulc(sdiv(num_m, den_m), pref))
    return Be, Bm


def multipole_amplitudes(ell: int, medium: SphereMedium) -> MultipoleAmplitudes:
    """Electric and magnetic multipole amplitudes at one order.

    Parameters
    ----------
    ell : int
        Multipole order >= 1.
    medium : SphereMedium
        Sphere with q > 0.

    Values below double range (very high order at small q) flush to 0;
    use ``amplitudes_scaled`` where the exact magnitude matters.
    """
    if ell < 1:
        raise ValueError(f"order must be >= 1, got {ell}")
    Be, Bm = amplitudes_scaled(ell, medium)
    return MultipoleAmplitudes(ell=ell, B_e=sto(Be[ell]), B_m=sto(Bm[ell]))


def _log_double_factorial_odd(ell: int) -> float:
    """ln (2*ell - 1)!! via log-gamma, safe far beyond double-factorial overflow."""
    # (2l-1)!! = 2**l * Gamma(l + 1/2) / sqrt(pi)
    return ell * math.log(2.0) + math.lgamma(ell + 0.5) - 0.5 * math.log(math.pi)


def multipole_amplitude_large_ell(ell: int, medium: SphereMedium) -> complex:
    """Large-order asymptotic electric amplitude.

    i^ell / (ell^2 [(2 ell - 1)!!]^2) * (eps-1)/(eps+1) * q^(2 ell + 1),
    evaluated in log space; used for tail estimates and the near-contact
    analysis.  Underflows gracefully to 0 for very high orders.
    """
    if ell < 1:
        raise ValueError(f"order must be >= 1, got {ell}")
    q, eps = medium.q, medium.epsilon
    if not q > 0:
        raise ValueError("asymptotic amplitude needs q > 0")
    if eps == 1:
        return 0j
    ratio = (eps - 1) / (eps + 1)
    log_mag = (
        (2 * ell + 1) * math.log(q)
        - 2 * _log_double_factorial_odd(ell)
        - 2 * math.log(ell)
    )
    if log_mag > 700:
        raise OverflowError(f"asymptotic amplitude overflows at order {ell}")
    scale = math.exp(log_mag) if log_mag > -745 else 0.0
    return _I_POW[ell % 4] * ratio * scale
