import numpy as np
import pytest
from hypothesis import strategies as st

from rootloc.poly import Polynomial


def poly(*coeffs) -> Polynomial:
    """Polynomial from leading-first coefficients."""
    return Polynomial(tuple(complex(c) for c in coeffs))


def random_poly(rng: np.random.Generator, n: int, lead_min: float = 0.25) -> Polynomial:
    c = rng.uniform(-1, 1, n + 1) + 1j * rng.uniform(-1, 1, n + 1)
    if abs(c[0]) < lead_min:
        c[0] = lead_min * c[0] / abs(c[0]) if c[0] != 0 else lead_min
    return Polynomial(tuple(c))


def gaussian_int_poly(rng: np.random.Generator, n: int, lo: int = -9, hi: int = 9) -> Polynomial:
    c = rng.integers(lo, hi + 1, n + 1) + 1j * rng.integers(lo, hi + 1, n + 1)
    while c[0] == 0:
        c[0] = complex(rng.integers(lo, hi + 1), rng.integers(lo, hi + 1))
    return Polynomial(tuple(c))


finite = st.floats(min_value=-4, max_value=4, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


@st.composite
def polynomials(draw, min_degree=1, max_degree=6):
    n = draw(st.integers(min_degree, max_degree))
    lead = draw(complexes.filter(lambda c: abs(c) > 0.1))
    rest = draw(st.lists(complexes, min_size=n, max_size=n))
    return Polynomial((lead, *rest))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
