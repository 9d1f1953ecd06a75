"""Power-of-two scaled complex arithmetic.

A scaled value is a pair ``(mantissa, exponent)`` representing
``mantissa * 2**exponent`` with ``max(|re|, |im|)`` of the mantissa kept
near one.  The multipole machinery pairs exponentially small scattering
amplitudes with exponentially large outgoing-wave factors; carrying both
in scaled form keeps every intermediate finite and lets the final,
well-conditioned product be converted back to an ordinary double.
"""

from __future__ import annotations

import math

Scaled = tuple[complex, int]

SZERO: Scaled = (0j, 0)

# Largest exponent convertible to a plain double (mantissa magnitude < 2).
_MAX_TO_DOUBLE = 1020
_MIN_TO_DOUBLE = -1080


def snorm(c: complex, e: int = 0) -> Scaled:
    """Renormalize so the mantissa has max component magnitude in [0.5, 1)."""
    if c == 0:
        return SZERO
    m = max(abs(c.real), abs(c.imag))
    if not math.isfinite(m):
        raise OverflowError("non-finite value entered scaled arithmetic")
    k = math.frexp(m)[1]
    return complex(math.ldexp(c.real, -k), math.ldexp(c.imag, -k)), e + k


def sfrom(c: complex) -> Scaled:
    return snorm(complex(c), 0)


def smul(a: Scaled, b: Scaled) -> Scaled:
    return snorm(a[0] * b[0], a[1] + b[1])


def smulc(a: Scaled, c: complex | float) -> Scaled:
    """Scaled times plain scalar."""
    return snorm(a[0] * c, a[1])


def sdiv(a: Scaled, b: Scaled) -> Scaled:
    if b[0] == 0:
        raise ZeroDivisionError("scaled division by zero")
    return snorm(a[0] / b[0], a[1] - b[1])


def sadd(*terms: Scaled) -> Scaled:
    """Sum of scaled values, aligned to the largest exponent.

    Terms more than ~1080 binary orders below the largest are dropped;
    they are beyond double precision of the result anyway.
    """
    live = [t for t in terms if t[0] != 0]
    if not live:
        return SZERO
    emax = max(t[1] for t in live)
    acc = 0j
    for c, e in live:
        shift = e - emax
        if shift > -1080:
            acc += complex(math.ldexp(c.real, shift), math.ldexp(c.imag, shift))
    return snorm(acc, emax)


def sto(a: Scaled) -> complex:
    """Convert back to a plain complex.

    Raises OverflowError when the true magnitude exceeds double range;
    values below the subnormal range flush to zero.
    """
    c, e = a
    if c == 0:
        return 0j
    if e > _MAX_TO_DOUBLE:
        raise OverflowError(f"scaled value overflows double range (2**{e})")
    if e < _MIN_TO_DOUBLE:
        return 0j
    return complex(math.ldexp(c.real, e), math.ldexp(c.imag, e))


def slog2_abs(a: Scaled) -> float:
    """log2 of the magnitude, usable far outside double range."""
    c, e = a
    if c == 0:
        return -math.inf
    return math.log2(abs(c)) + e
