from fractions import Fraction

from hypothesis import settings, strategies as st

from chargemeas.cset import CSet
from chargemeas.space import FinCofNat, FiniteExplicit

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

POINTS = ("a", "b", "c", "d")
WEIGHTS = st.sampled_from([Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)])


@st.composite
def finite_spaces(draw, max_points=4):
    n = draw(st.integers(1, max_points))
    pts = POINTS[:n]
    gens = draw(st.lists(st.sets(st.sampled_from(pts)), max_size=3))
    weights = [draw(WEIGHTS) for _ in pts]
    return FiniteExplicit(pts, [sorted(g) for g in gens], weights)


@st.composite
def subsets(draw, space):
    return CSet.finite(draw(st.sets(st.sampled_from(space.points))))


@st.composite
def fincof_spaces(draw):
    prefix = draw(st.lists(WEIGHTS, max_size=3))
    w_inf = draw(st.sampled_from([Fraction(0), Fraction(1)]))
    m_inf = draw(st.sampled_from([Fraction(0), Fraction(1), Fraction(3, 2)]))
    return FinCofNat(prefix, w_inf, m_inf)


@st.composite
def nat_sets(draw):
    """Finite, cofinite or periodic-tail subsets of the naturals."""
    prefix = draw(st.sets(st.integers(0, 6), max_size=4))
    period = draw(st.integers(1, 3))
    residues = draw(st.sets(st.integers(0, period - 1)))
    start = draw(st.integers(0, 6))
    return CSet.periodic(prefix, period, residues, start)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
