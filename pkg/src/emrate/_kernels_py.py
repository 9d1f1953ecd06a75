"""Pure-python ladder kernels for spherical Bessel/Hankel functions.

Reference implementation of the backend protocol (see ``_backend``): the
compiled extension in ``_kernels.pyx`` mirrors this module statement for
statement.  Both return the whole ladder of orders 0..lmax at a single
complex argument in power-of-two scaled form ``(mantissa, exponent)`` so
that orders far beyond double range remain representable.

Algorithms
----------
* ``jn_ladder``: Miller downward recurrence.  The regular solution is
  recessive for growing order, so upward recurrence loses it; recurring
  downward from a padded start order and rescaling against the closed
  forms at order 0/1 is stable for any complex argument.
* ``h1n_ladder``: upward recurrence.  The outgoing solution dominates for
  growing order (for any fixed argument), which makes the forward sweep
  stable, including in the upper half-plane.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

# Rescale the working pair once its magnitude passes 2**500.
_RESCALE = 2.0**500

# Start-order pad for the downward sweep: contamination by the dominant
# solution shrinks by at least ~2x per step below the start order, so 60
# orders give > 1e18 suppression.
_MILLER_PAD = 60

# |Im z| beyond which exp/sinh/cosh of the argument overflow double range.
IM_Z_LIMIT = 600.0
# |z| below which a single recurrence step could jump past the rescale window.
ABS_Z_FLOOR = 1e-60
# Hard cap on ladder length (far above any physical use here).
LMAX_LIMIT = 2000


def _check_args(lmax: int, z: complex, allow_zero: bool) -> complex:
    if lmax < 0 or lmax > LMAX_LIMIT:
        raise ValueError(f"order must be in [0, {LMAX_LIMIT}], got {lmax}")
    z = complex(z)
    if abs(z.imag) > IM_Z_LIMIT:
        raise OverflowError(f"|Im z| > {IM_Z_LIMIT} exceeds the overflow-safe bound")
    if z == 0:
        if not allow_zero:
            raise ValueError("argument z = 0 is singular")
    elif abs(z) < ABS_Z_FLOOR:
        raise OverflowError(f"|z| < {ABS_Z_FLOOR:g} is below the overflow-safe bound")
    return z


def _rescale(c: complex) -> tuple[complex, int]:
    k = math.frexp(max(abs(c.real), abs(c.imag)))[1]
    return complex(math.ldexp(c.real, -k), math.ldexp(c.imag, -k)), k


def jn_ladder(lmax: int, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Scaled spherical Bessel functions j_0(z)..j_lmax(z).

    Returns ``(mant, expo)`` arrays with ``j_l = mant[l] * 2**expo[l]`` and
    per-entry normalized mantissas.
    """
    z = _check_args(lmax, z, allow_zero=True)
    mant = np.zeros(lmax + 1, dtype=np.complex128)
    expo = np.zeros(lmax + 1, dtype=np.int64)
    if z == 0:
        mant[0] = 1.0
        return mant, expo

    # keep >= 2 raw entries so the order-1 anchor is always available
    nraw = max(lmax, 1) + 1
    start = max(lmax, int(abs(z))) + _MILLER_PAD
    raw = np.zeros(nraw, dtype=np.complex128)
    cum = np.zeros(nraw, dtype=np.int64)
    fp = 0j  # trial value at order m+1
    fc = 1.0 + 0j  # trial value at order m
    shift = 0
    for m in range(start, 0, -1):
        fp, fc = fc, (2 * m + 1) / z * fc - fp
        if max(abs(fc.real), abs(fc.imag)) > _RESCALE:
            fc, k = _rescale(fc)
            fp = complex(math.ldexp(fp.real, -k), math.ldexp(fp.imag, -k))
            shift += k
        if m - 1 < nraw:
            raw[m - 1] = fc
            cum[m - 1] = shift

    # Anchor on the larger of the order-0/1 closed forms.
    j0 = cmath.sin(z) / z
    j1 = cmath.sin(z) / (z * z) - cmath.cos(z) / z
    if abs(j0) >= abs(j1):
        a_val, a_idx = j0, 0
    else:
        a_val, a_idx = j1, 1
    ratio = a_val / raw[a_idx]
    km = math.frexp(max(abs(ratio.real), abs(ratio.imag)))[1]
    ratio = complex(math.ldexp(ratio.real, -km), math.ldexp(ratio.imag, -km))
    base = km - int(cum[a_idx])

    for l in range(lmax + 1):
        c = raw[l] * ratio
        if c == 0:
            continue
        c, k = _rescale(c)
        mant[l] = c
        expo[l] = int(cum[l]) + base + k
    return mant, expo


def h1n_ladder(lmax: int, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Scaled outgoing spherical Hankel functions h^(1)_0(z)..h^(1)_lmax(z).

    Same return convention as ``jn_ladder``.  Raises for z = 0.
    """
    z = _check_args(lmax, z, allow_zero=False)
    mant = np.zeros(lmax + 1, dtype=np.complex128)
    expo = np.zeros(lmax + 1, dtype=np.int64)

    eiz = cmath.exp(1j * z)
    h0 = -1j * eiz / z
    if h0 == 0:
        # exp(iz) underflowed (large Im z): the whole ladder is below
        # double resolution relative to any later use.
        return mant, expo
    c0, k0 = _rescale(h0)
    mant[0] = c0
    expo[0] = k0
    if lmax == 0:
        return mant, expo

    h1 = -eiz / z * (1.0 + 1j / z)
    c1, k1 = _rescale(h1)
    mant[1] = c1
    expo[1] = k1
    # Align the working pair to a common exponent.
    fp = complex(math.ldexp(c0.real, k0 - k1), math.ldexp(c0.imag, k0 - k1))
    fc = c1
    shift = k1
    for m in range(1, lmax):
        fp, fc = fc, (2 * m + 1) / z * fc - fp
        if max(abs(fc.real), abs(fc.imag)) > _RESCALE:
            fc, k = _rescale(fc)
            fp = complex(math.ldexp(fp.real, -k), math.ldexp(fp.imag, -k))
            shift += k
        c, k = _rescale(fc)
        mant[m + 1] = c
        expo[m + 1] = shift + k
    return mant, expo
