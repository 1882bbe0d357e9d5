"""Hypothesis strategies.  Numerical instances come from the seeded generators
in ``hypermatpoly.sampling``, so hypothesis draws seeds and sizes only."""
import numpy as np
from hypothesis import strategies as st

seeds = st.integers(0, 2**32 - 1)
rngs = seeds.map(np.random.default_rng)
small_n = st.integers(1, 3)
small_ell = st.integers(1, 3)
degrees = st.integers(1, 6)
finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
shifts = st.sampled_from([1.0, -2.0])


@st.composite
def index_sets(draw, m):
    size = draw(st.integers(1, m))
    return tuple(sorted(draw(st.lists(st.integers(1, m), min_size=size, max_size=size, unique=True))))
