"""Compiled and pure-python ladder kernels must agree exactly in scale
and to rounding in mantissa."""

import numpy as np
import pytest

from emrate import _backend
from emrate import _kernels_py

compiled = pytest.importorskip(
    "emrate._kernels", reason="compiled kernel extension not built"
)

ARGS = [
    0.3,
    2.0,
    10.0,
    47.5,
    1 + 0.5j,
    0.5 + 3j,
    5 + 20j,
    30 + 5j,
    -4 + 1j,
    0.01,
    0.5,
]


@pytest.mark.parametrize("z", ARGS)
def test_jn_ladder_backend_equivalence(z):
    m1, e1 = compiled.jn_ladder(80, z)
    m2, e2 = _kernels_py.jn_ladder(80, z)
    assert np.array_equal(e1, e2)
    assert np.allclose(m1, m2, rtol=1e-13, atol=0)


@pytest.mark.parametrize("z", ARGS)
def test_h1n_ladder_backend_equivalence(z):
    m1, e1 = compiled.h1n_ladder(80, z)
    m2, e2 = _kernels_py.h1n_ladder(80, z)
    assert np.array_equal(e1, e2)
    assert np.allclose(m1, m2, rtol=1e-13, atol=0)


def test_extreme_order_scaling_consistency():
    m1, e1 = compiled.h1n_ladder(400, 0.5)
    m2, e2 = _kernels_py.h1n_ladder(400, 0.5)
    assert np.array_equal(e1, e2)
    assert np.allclose(m1, m2, rtol=1e-12, atol=0)
    assert e1[400] > 2000  # far beyond double range, still represented


def test_guards_match():
    for mod in (compiled, _kernels_py):
        with pytest.raises(ValueError):
            mod.h1n_ladder(4, 0.0)
        with pytest.raises(OverflowError):
            mod.jn_ladder(4, 700j)
        with pytest.raises(ValueError):
            mod.jn_ladder(-1, 1.0)


def test_selected_backend_is_exposed():
    assert _backend.BACKEND in ("compiled", "python")
