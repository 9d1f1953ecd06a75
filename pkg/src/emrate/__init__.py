"""emrate: decay-rate correction of a dipole emitter near a half-space of
dilute absorptive dielectric spheres.

Multipole series with closed-form distance integrals, validated against
independent quadrature oracles; see the ``verify`` CLI subcommand.
"""

from ._backend import BACKEND
from .hankel_integrals import IntegralKey
from .mie import (
    MultipoleAmplitudes,
    SphereMedium,
    aux_f,
    multipole_amplitude_large_ell,
    multipole_amplitudes,
)
from .oracle_suite import CheckReport, run_suite
from .rates import (
    PARALLEL,
    PERPENDICULAR,
    SeriesResult,
    decay_correction_dipole,
    decay_correction_far,
    decay_correction_near,
    decay_correction_series,
    decay_correction_volume,
    green_rr,
    green_tt,
    rate_integral_assembled,
    rate_integral_closed,
    rate_integral_far,
)
from .specfun import (
    exp_integral_E1_neg2i,
    riccati_deriv,
    sine_cosine_integrals,
    sph_bessel_j,
    sph_bessel_y,
    sph_hankel1,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "IntegralKey",
    "SphereMedium",
    "MultipoleAmplitudes",
    "SeriesResult",
    "CheckReport",
    "PERPENDICULAR",
    "PARALLEL",
    "aux_f",
    "multipole_amplitudes",
    "multipole_amplitude_large_ell",
    "sph_bessel_j",
    "sph_bessel_y",
    "sph_hankel1",
    "riccati_deriv",
    "sine_cosine_integrals",
    "exp_integral_E1_neg2i",
    "rate_integral_closed",
    "rate_integral_assembled",
    "rate_integral_far",
    "green_rr",
    "green_tt",
    "decay_correction_series",
    "decay_correction_dipole",
    "decay_correction_far",
    "decay_correction_near",
    "decay_correction_volume",
    "run_suite",
]
