"""Integrals of products of outgoing spherical Hankel functions over the
exterior ray, ``integral(1..inf) u**(-n) h1_l1(zeta*u) h1_l2(zeta*u) du``.

Closed forms exist for the index families needed by the rate machinery:
equal orders (l, l) with n in {-2, -1, 0, 1, 3} and neighbour orders
(l, l-1) with n in {-1, 0, 2}; they are built from Hankel values at the
single point zeta plus the exponential integral E1(-2i*zeta).  Three
sub-floor cases -- (0,0,1), (1,1,3), (1,0,2) -- have divergent closed-form
coefficients and are served by quadrature instead (they are needed only on
verification paths).

The quadrature oracle rotates the contour to u = 1 + i*s: the integrand
is analytic in the upper half-plane and h1(zeta*u) ~ exp(i*zeta*u) decays
there, so even the n = -2 integrand (non-decaying on the real axis, where
it converges only through the +i0 prescription of zeta) becomes
exponentially damped.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

from scipy.integrate import IntegrationWarning, quad

from ._scaled import sto
from .specfun import exp_integral_E1_neg2i, sph_h1n_scaled, sph_hankel1_minus1

__all__ = [
    "IntegralKey",
    "SINGULAR_KEYS",
    "QuadratureError",
    "SingularKeyError",
    "supported_keys",
    "closed_form",
    "singular_value",
    "quadrature",
    "value",
    "recurrence_sides",
]

SINGULAR_KEYS = frozenset({(0, 0, 1), (1, 1, 3), (1, 0, 2)})

_EQUAL_N = (-2, -1, 0, 1, 3)
_STEP_N = (-1, 0, 2)


class SingularKeyError(ValueError):
    """Closed form diverges for this key; use ``singular_value``."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class IntegralKey:
    """Index triple (ell1, ell2, n); symmetric in (ell1, ell2)."""

    ell1: int
    ell2: int
    n: int

    def __post_init__(self) -> None:
        if self.ell1 < 0 or self.ell2 < 0:
            raise ValueError(f"orders must be >= 0, got {self}")
        if self.ell1 < self.ell2:  # canonical order: ell1 >= ell2
            e1, e2 = self.ell1, self.ell2
            object.__setattr__(self, "ell1", e2)
            object.__setattr__(self, "ell2", e1)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.ell1, self.ell2, self.n)

    @property
    def is_singular(self) -> bool:
        return self.triple in SINGULAR_KEYS

    @property
    def is_supported(self) -> bool:
        """True when a closed form exists (singular trio excluded)."""
        if self.is_singular:
            return False
        l1, l2, n = self.triple
        if l1 == l2:
            if n not in _EQUAL_N:
                return False
            if n == 1:
                return l1 >= 1
            if n == 3:
                return l1 >= 2
            return True
        if l1 == l2 + 1:
            if n not in _STEP_N:
                return False
            if n == 2:
                return l1 >= 2
            return l1 >= 1
        return False


def _key(key: IntegralKey | tuple[int, int, int]) -> IntegralKey:
    if isinstance(key, IntegralKey):
        return key
    return IntegralKey(*key)


def supported_keys(lmax: int) -> list[IntegralKey]:
    """All closed-form keys with ell1 <= lmax, in deterministic order."""
    out = []
    for l in range(lmax + 1):
        for n in _EQUAL_N:
            k = IntegralKey(l, l, n)
            if k.is_supported:
                out.append(k)
        if l >= 1:
            for n in _STEP_N:
                k = IntegralKey(l, l - 1, n)
                if k.is_supported:
                    out.append(k)
    return out


# ---------------------------------------------------------------------------
# Hankel values at the evaluation point (cached per zeta)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _h_row(zeta: float, lmax: int) -> tuple[complex, ...]:
    mant, expo = sph_h1n_scaled(lmax, zeta)
    return tuple(sto((complex(mant[i]), int(expo[i]))) for i in range(lmax + 1))


def _hankel_values(zeta: float, need: int) -> tuple[complex, ...]:
    """Plain-double Hankel ladder 0..need for one zeta, cache-quantized."""
    lmax = 16 * (need // 16 + 1)
    return _h_row(zeta, lmax)


# ---------------------------------------------------------------------------
# Closed forms (one helper per family; dispatch table kept patchable for
# the mutation-sensitivity check in the verification suite)
# ---------------------------------------------------------------------------


def _i_equal_w0(l, z, h, e1):
    s = sum(h[k] ** 2 for k in range(l + 1))
    return (-2j / z * e1 + 2.0 * s - h[l] ** 2) / (2 * l + 1)


def _i_equal_w1(l, z, h, e1):
    return (
        (-z * z / (2 * l * (l + 1)) + 1.0 / (2 * (l + 1))) * h[l] ** 2
        - z * z / (2 * l * (l + 1)) * h[l - 1] ** 2
        + z / (l + 1) * h[l] * h[l - 1]
    )


def _i_equal_w3(l, z, h, e1):
    d = (l - 1) * l * (l + 1) * (l + 2)
    return (
        (-z**4 / (3 * d) - z * z / (6 * (l + 1) * (l + 2)) + 1.0 / (2 * (l + 2))) * h[l] ** 2
        + (-z**4 / (3 * d) - z * z / (6 * (l - 1) * (l + 2))) * h[l - 1] ** 2
        + (2 * z**3 / (3 * (l - 1) * (l + 1) * (l + 2)) + z / (3 * (l + 2))) * h[l] * h[l - 1]
    )


def _i_equal_wm2(l, z, h, e1):
    # rearranged through the three-term recurrence: the textbook grouping
    # -h_l^2/2 - h_{l+1}^2/2 + (2l+1)/(2z) h_l h_{l+1} cancels ~(2l/z)^2
    # of its own magnitude and costs several digits at high order
    hm = h[l - 1] if l >= 1 else sph_hankel1_minus1(z)
    return 0.5 * (h[l + 1] * hm - h[l] ** 2)


def _i_equal_wm1(l, z, h, e1):
    s = sum((2 * k + 1) / (2 * k * (k + 1)) * h[k] ** 2 for k in range(1, l + 1))
    return -e1 / (z * z) + s + 0.5 * h[0] ** 2 - h[l] ** 2 / (2 * (l + 1))


def _i_step_wm1(l, z, h, e1):
    s = sum(h[k] ** 2 for k in range(l))
    return -1j * e1 / (z * z) + s / z


def _i_step_w0(l, z, h, e1):
    hl2m1 = h[l - 2] if l >= 2 else sph_hankel1_minus1(z)
    return (z * (h[l] * hl2m1 - h[l - 1] * h[l - 1]) + h[l] * h[l - 1]) / (2 * l)


def _i_step_w2(l, z, h, e1):
    d = (l - 1) * l * (l + 1)
    return (
        (-z**3 / (3 * d) - z / (6 * (l + 1))) * h[l] ** 2
        + (-z**3 / (3 * d) - z / (6 * (l - 1))) * h[l - 1] ** 2
        + (2 * z * z / (3 * (l - 1) * (l + 1)) + 1.0 / 3.0) * h[l] * h[l - 1]
    )


_CLOSED_EQUAL = {0: _i_equal_w0, 1: _i_equal_w1, 3: _i_equal_w3, -2: _i_equal_wm2, -1: _i_equal_wm1}
_CLOSED_STEP = {-1: _i_step_wm1, 0: _i_step_w0, 2: _i_step_w2}


def closed_form(key: IntegralKey | tuple[int, int, int], zeta: float) -> complex:
    """Closed-form value for a supported key at zeta > 0.

    Raises SingularKeyError for the three sub-floor cases and ValueError
    for keys outside the supported families.
    """
    k = _key(key)
    if not zeta > 0:
        raise ValueError(f"zeta must be > 0, got {zeta}")
    if k.is_singular:
        raise SingularKeyError(f"{k.triple} has no regular closed form; use singular_value")
    if not k.is_supported:
        raise ValueError(f"unsupported key {k.triple}")
    l1, l2, n = k.triple
    h = _hankel_values(zeta, l1 + 1)
    e1 = exp_integral_E1_neg2i(zeta)
    if l1 == l2:
        return _CLOSED_EQUAL[n](l1, zeta, h, e1)
    return _CLOSED_STEP[n](l1, zeta, h, e1)


# ---------------------------------------------------------------------------
# Quadrature oracle
# ---------------------------------------------------------------------------


def quadrature(
    key: IntegralKey | tuple[int, int, int], zeta: float, tol: float = 1e-11
) -> complex:
    """Contour-rotated adaptive quadrature of the defining integral.

    Works for any index triple (not just the closed-form families).
    """
    k = _key(key)
    if not zeta > 0:
        raise ValueError(f"zeta must be > 0, got {zeta}")
    l1, l2, n = k.triple
    lmax = l1

    def f(s: float) -> complex:
        if zeta * s > 370.0:  # exp(-2 zeta s) damping below double resolution
            return 0j
        u = 1.0 + 1j * s
        mant, expo = sph_h1n_scaled(lmax, zeta * u)
        h1 = sto((complex(mant[l1]), int(expo[l1])))
        h2 = sto((complex(mant[l2]), int(expo[l2])))
        return 1j * u ** (-n) * h1 * h2

    # Mixed tolerance: absolute part tied to the integrand scale at the
    # contour start times the exp(-2*zeta*s) decay length.
    scale = abs(f(0.0)) / (2.0 * zeta) + 1e-300
    epsabs = 0.01 * tol * scale
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        re, err_re = quad(lambda s: f(s).real, 0.0, math.inf, epsabs=epsabs, epsrel=tol, limit=300)
        im, err_im = quad(lambda s: f(s).imag, 0.0, math.inf, epsabs=epsabs, epsrel=tol, limit=300)
    result = complex(re, im)
    err = math.hypot(err_re, err_im)
    if err > 100.0 * max(epsabs, tol * abs(result)):
        raise QuadratureError(
            f"quadrature for {k.triple} at zeta={zeta} reached error {err:.2e}"
        )
    return result


def singular_value(
    key: IntegralKey | tuple[int, int, int], zeta: float, tol: float = 1e-13
) -> complex:
    """Value of one of the three singular keys, at oracle precision."""
    k = _key(key)
    if not k.is_singular:
        raise ValueError(f"{k.triple} is not one of the singular cases {sorted(SINGULAR_KEYS)}")
    return quadrature(k, zeta, tol=tol)


def value(key: IntegralKey | tuple[int, int, int], zeta: float) -> complex:
    """Best available value: closed form, or quadrature for the singular trio."""
    k = _key(key)
    if k.is_singular:
        return singular_value(k, zeta)
    return closed_form(k, zeta)


# ---------------------------------------------------------------------------
# Recurrence relations (property-test surface)
# ---------------------------------------------------------------------------


def recurrence_sides(
    relation: str, ell1: int, ell2: int, n: int, zeta: float
) -> tuple[complex, complex]:
    """Both sides of one of the two recurrences connecting the integrals.

    ``relation="three_term"``: the neighbour-order sum
        I(l1-1, l2, n) + I(l1+1, l2, n) = (2 l1 + 1)/zeta * I(l1, l2, n+1).

    ``relation="by_parts"`` (from integration by parts):
        (n - l1 - l2) I(l1-1, l2, n) + (n + l1 - l2 + 1) I(l1+1, l2, n)
          + (2 l1 + 1) I(l1, l2+1, n)
        = (2 l1 + 1)/zeta * h1_l1(zeta) * h1_l2(zeta).

    Terms with zero coefficient are skipped without evaluating their key.
    """
    if relation == "three_term":
        lhs = value((ell1 - 1, ell2, n), zeta) + value((ell1 + 1, ell2, n), zeta)
        rhs = (2 * ell1 + 1) / zeta * value((ell1, ell2, n + 1), zeta)
        return lhs, rhs
    if relation == "by_parts":
        lhs = 0j
        for coeff, k in (
            (n - ell1 - ell2, (ell1 - 1, ell2, n)),
            (n + ell1 - ell2 + 1, (ell1 + 1, ell2, n)),
            (2 * ell1 + 1, (ell1, ell2 + 1, n)),
        ):
            if coeff != 0:
                lhs += coeff * value(k, zeta)
        h = _hankel_values(zeta, max(ell1, ell2))
        rhs = (2 * ell1 + 1) / zeta * h[ell1] * h[ell2]
        return lhs, rhs
    raise ValueError(f"relation must be 'three_term' or 'by_parts', got {relation!r}")


def _relation_keys(relation: str, ell1: int, ell2: int, n: int) -> list[IntegralKey]:
    """Keys a relation instance would evaluate (zero-coefficient terms skipped)."""
    if relation == "three_term":
        return [
            IntegralKey(ell1 - 1, ell2, n),
            IntegralKey(ell1 + 1, ell2, n),
            IntegralKey(ell1, ell2, n + 1),
        ]
    keys = []
    for coeff, k in (
        (n - ell1 - ell2, (ell1 - 1, ell2, n)),
        (n + ell1 - ell2 + 1, (ell1 + 1, ell2, n)),
        (2 * ell1 + 1, (ell1, ell2 + 1, n)),
    ):
        if coeff != 0:
            keys.append(IntegralKey(*k))
    return keys


def testable_relation_instances(lmax: int) -> list[tuple[str, int, int, int]]:
    """Relation instances whose keys all have regular closed forms.

    Used by the verification suite: every instance here can be checked at
    closed-form precision (no quadrature noise).
    """
    out: list[tuple[str, int, int, int]] = []
    for l in range(lmax + 1):
        candidates = [("three_term", l, l, n) for n in (-1, 0, 2)]
        candidates += [
            ("by_parts", l + 1, l, -2),  # neighbour-square difference
            ("by_parts", l, l, -1),  # step-family difference
            ("by_parts", l, l, 2),
        ]
        for inst in candidates:
            try:
                keys = _relation_keys(*inst)
            except ValueError:  # negative order in a skipped-by-bounds instance
                continue
            if all(k.is_supported for k in keys):
                out.append(inst)
    return out
