import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsk.errors import DomainError
from gsk.quadrature import OrbitGrid, composite_gauss_legendre, default_grid


@given(st.integers(0, 15), st.integers(1, 4))
def test_exact_for_polynomials(deg, panels):
    x, w = composite_gauss_legendre(-1.0, 2.0, panels, 8)
    exact = (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
    assert np.sum(w * x ** deg) == pytest.approx(exact, rel=1e-13, abs=1e-13)


def test_gaussian_on_2d_grid():
    g = default_grid(("E", "p"), ((-8, 8), (-8, 8)))
    pts = g.points()
    assert pts.shape == (256, 256, 2)
    val = g.integrate(np.exp(-pts[..., 0] ** 2 - 2 * pts[..., 1] ** 2))
    assert val == pytest.approx(math.pi / math.sqrt(2), rel=1e-12)


def test_bad_inputs():
    with pytest.raises(DomainError):
        composite_gauss_legendre(1.0, 1.0, 4)
    with pytest.raises(DomainError):
        OrbitGrid(("t",), ((0, 1),), (12,))
