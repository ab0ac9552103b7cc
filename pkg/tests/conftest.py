"""Shared strategies and brute-force reference oracles."""

from fractions import Fraction

import hypothesis.strategies as st
import pytest

from poslim import poset as ps
from poslim.measures import StepKernelMeasure
from poslim.semiorders import MonotoneRC


@st.composite
def posets(draw, min_n=1, max_n=6):
    """Random poset: close a randomly oriented acyclic edge set."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                masks[perm[i]] |= 1 << perm[j]
    closed = ps.transitive_closure(masks)
    return ps.FinitePoset.from_succ_masks(closed, validate=False)


_frac = st.fractions(min_value=0, max_value=1, max_denominator=16)


@st.composite
def monotone_gs(draw):
    """Random piecewise-linear right-continuous g with g(x) >= x."""
    k = draw(st.integers(0, 4))
    inner = sorted(set(draw(st.lists(_frac, min_size=k, max_size=k))))
    xs = [Fraction(0)] + [x for x in inner if 0 < x < 1] + [Fraction(1)]
    pts = []
    prev = Fraction(0)
    for x in xs:
        left = max(x, prev, draw(_frac))
        right = max(left, draw(_frac))
        if x == 1:
            left = right = Fraction(1)
        pts.append((x, left, right))
        prev = right
    return MonotoneRC.from_points(pts)


@st.composite
def step_measures(draw):
    """Random StepKernelMeasure with exact rational data."""
    k = draw(st.integers(0, 3))
    inner = sorted(set(draw(st.lists(_frac, min_size=k, max_size=k))))
    breaks = [Fraction(0)] + [x for x in inner if 0 < x < 1] + [Fraction(1)]
    cells = []
    for lo, hi in zip(breaks, breaks[1:]):
        m = draw(st.integers(1, 3))
        ys = sorted(
            set(
                hi + (1 - hi) * y
                for y in draw(st.lists(_frac, min_size=m, max_size=m))
            )
        )
        weights = [draw(st.integers(1, 5)) for _ in ys]
        total = sum(weights)
        cells.append((lo, hi, [(y, Fraction(w, total)) for y, w in zip(ys, weights)]))
    return StepKernelMeasure.from_cells(cells)


@pytest.fixture(scope="session")
def catalog4():
    return ps.cached_catalog(4)


@pytest.fixture(scope="session")
def catalog5():
    return ps.cached_catalog(5)


@pytest.fixture(scope="session")
def catalog6():
    return ps.cached_catalog(6)
