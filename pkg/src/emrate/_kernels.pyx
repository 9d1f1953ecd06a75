# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled ladder kernels; mirrors ``_kernels_py`` statement for statement.

Hot path for the quadrature oracles and curve evaluation: one call builds
the whole ladder of orders 0..lmax at a single complex argument, in
power-of-two scaled form (per-entry normalized mantissa + exponent).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, cosh, exp, fabs, frexp, ldexp, sin, sinh

cnp.import_array()

DEF RESCALE = 3.273390607896142e150  # 2.0**500
DEF MILLER_PAD = 60

IM_Z_LIMIT = 600.0
ABS_Z_FLOOR = 1e-60
LMAX_LIMIT = 2000


cdef inline double _cmax(double complex c) nogil:
    cdef double a = fabs(c.real)
    cdef double b = fabs(c.imag)
    return a if a > b else b


cdef inline double complex _ldexp_c(double complex c, int k) nogil:
    return ldexp(c.real, k) + 1j * ldexp(c.imag, k)


cdef inline int _exp_of(double complex c) nogil:
    cdef int k = 0
    frexp(_cmax(c), &k)
    return k


cdef inline double complex _csin(double complex z) nogil:
    return sin(z.real) * cosh(z.imag) + 1j * (cos(z.real) * sinh(z.imag))


cdef inline double complex _ccos(double complex z) nogil:
    return cos(z.real) * cosh(z.imag) - 1j * (sin(z.real) * sinh(z.imag))


cdef inline double complex _cexp_i(double complex z) nogil:
    # exp(i z)
    cdef double s = exp(-z.imag)
    return s * cos(z.real) + 1j * (s * sin(z.real))


def _check_args(int lmax, z, bint allow_zero):
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


def jn_ladder(int lmax, z):
    """Scaled spherical Bessel functions j_0(z)..j_lmax(z).

    Returns ``(mant, expo)`` arrays with ``j_l = mant[l] * 2**expo[l]``.
    """
    zc = _check_args(lmax, z, True)
    mant_arr = np.zeros(lmax + 1, dtype=np.complex128)
    expo_arr = np.zeros(lmax + 1, dtype=np.int64)
    cdef double complex[:] mant = mant_arr
    cdef long long[:] expo = expo_arr
    cdef double complex zz = zc
    if zz == 0:
        mant[0] = 1.0
        return mant_arr, expo_arr

    cdef int nraw = (lmax if lmax > 1 else 1) + 1
    raw_arr = np.zeros(nraw, dtype=np.complex128)
    cum_arr = np.zeros(nraw, dtype=np.int64)
    cdef double complex[:] raw = raw_arr
    cdef long long[:] cum = cum_arr

    cdef double az = abs(zc)
    cdef int start = (lmax if lmax > <int> az else <int> az) + MILLER_PAD
    cdef double complex fp = 0
    cdef double complex fc = 1
    cdef double complex fm
    cdef long long shift = 0
    cdef int m, k, l
    with nogil:
        for m in range(start, 0, -1):
            fm = (2 * m + 1) / zz * fc - fp
            fp = fc
            fc = fm
            if _cmax(fc) > RESCALE:
                k = _exp_of(fc)
                fc = _ldexp_c(fc, -k)
                fp = _ldexp_c(fp, -k)
                shift += k
            if m - 1 < nraw:
                raw[m - 1] = fc
                cum[m - 1] = shift

    # Anchor on the larger of the order-0/1 closed forms.
    cdef double complex j0 = _csin(zz) / zz
    cdef double complex j1 = _csin(zz) / (zz * zz) - _ccos(zz) / zz
    cdef double complex a_val
    cdef int a_idx
    if abs(j0) >= abs(j1):
        a_val = j0
        a_idx = 0
    else:
        a_val = j1
        a_idx = 1
    cdef double complex ratio = a_val / raw[a_idx]
    cdef int km = _exp_of(ratio)
    ratio = _ldexp_c(ratio, -km)
    cdef long long base = km - cum[a_idx]

    cdef double complex c
    with nogil:
        for l in range(lmax + 1):
            c = raw[l] * ratio
            if c == 0:
                continue
            k = _exp_of(c)
            mant[l] = _ldexp_c(c, -k)
            expo[l] = cum[l] + base + k
    return mant_arr, expo_arr


def h1n_ladder(int lmax, z):
    """Scaled outgoing spherical Hankel functions h^(1)_0(z)..h^(1)_lmax(z)."""
    zc = _check_args(lmax, z, False)
    mant_arr = np.zeros(lmax + 1, dtype=np.complex128)
    expo_arr = np.zeros(lmax + 1, dtype=np.int64)
    cdef double complex[:] mant = mant_arr
    cdef long long[:] expo = expo_arr
    cdef double complex zz = zc

    cdef double complex eiz = _cexp_i(zz)
    cdef double complex h0 = -1j * eiz / zz
    if h0 == 0:
        # exp(iz) underflowed (large Im z): ladder below double resolution.
        return mant_arr, expo_arr
    cdef int k0 = _exp_of(h0)
    mant[0] = _ldexp_c(h0, -k0)
    expo[0] = k0
    if lmax == 0:
        return mant_arr, expo_arr

    cdef double complex h1 = -eiz / zz * (1.0 + 1j / zz)
    cdef int k1 = _exp_of(h1)
    cdef double complex c1 = _ldexp_c(h1, -k1)
    mant[1] = c1
    expo[1] = k1
    cdef double complex fp = _ldexp_c(mant[0], k0 - k1)
    cdef double complex fc = c1
    cdef double complex fm
    cdef long long shift = k1
    cdef int m, k
    with nogil:
        for m in range(1, lmax):
            fm = (2 * m + 1) / zz * fc - fp
            fp = fc
            fc = fm
            if _cmax(fc) > RESCALE:
                k = _exp_of(fc)
                fc = _ldexp_c(fc, -k)
                fp = _ldexp_c(fp, -k)
                shift += k
            k = _exp_of(fc)
            mant[m + 1] = _ldexp_c(fc, -k)
            expo[m + 1] = shift + k
    return mant_arr, expo_arr
