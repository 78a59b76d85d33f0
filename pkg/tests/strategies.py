"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from hodgeres.polys import PARAM_NAMES, FormalPoly
from hodgeres.scalars import GaussianRational

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(lambda z: not z.is_zero())

_names = st.sampled_from(["v1", "v4", "w2", "w4", "h", "H12", "G14", "xi1", "xi3"])


@st.composite
def polys(draw, max_terms: int = 4):
    total = FormalPoly.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        term = FormalPoly.const(draw(gaussians))
        for _ in range(draw(st.integers(0, 3))):
            term = term * FormalPoly.var(draw(_names))
        total = total + term
    return total


@st.composite
def assignments(draw):
    return {name: draw(fractions) for name in PARAM_NAMES}

