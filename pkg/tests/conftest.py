import random
from collections import Counter

import pytest
from hypothesis import settings, strategies as st

from zigzag.shapes import components, make_shape

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def fits(s, lo=0, hi=4):
    return all(lo <= x <= hi and lo <= y <= hi for x, y in components(s))


@st.composite
def shapes(draw, lo=0, hi=4, kinds=("odd", "even_h", "even_v", "square")):
    kind = draw(st.sampled_from(kinds))
    p = draw(st.integers(lo, hi))
    q = draw(st.integers(lo, hi))
    if kind == "odd":
        arg = draw(st.integers(2 * lo, 2 * hi))
    elif kind == "square":
        arg = 0
    else:
        arg = draw(st.integers(1, hi - lo))
    s = make_shape(kind, p, q, arg)
    if not fits(s, lo, hi):
        # shrink toward a dot, which always fits
        s = make_shape("odd", p, q, p + q)
    return s


def multisets(max_size=8, **kw):
    return st.lists(shapes(**kw), min_size=0, max_size=max_size).map(Counter)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
