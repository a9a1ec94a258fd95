from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chargemeas.cset import CSet
from chargemeas.extreal import INF
from chargemeas.fixtures import space_of
from chargemeas.oracle import FiniteModel
from chargemeas.space import FieldCapError, FinCofNat, FiniteExplicit, SpaceError

from conftest import fincof_spaces, finite_spaces, nat_sets

EVENS = CSet.periodic([], 2, [0], 0)


def test_fix1_single_atom():
    s = space_of("FIX1")
    assert s.atoms == (frozenset({0}),)
    assert s.charge(s.universe) == 1


def test_fix2_atoms_and_outer_inner():
    s = space_of("FIX2")
    assert s.atoms == (frozenset("a"), frozenset("bc"))
    b = CSet.finite(["b"])
    assert not s.in_field(b)
    assert s.outer(b) == 2 and s.inner(b) == 0
    ok, sw = s.pj_membership(b)
    assert not ok and sw.gap == 2


def test_fix3_everything_is_jordan_measurable():
    s = space_of("FIX3")
    ok, sw = s.pj_membership(CSet.finite(["a"]))
    assert ok and sw.gap == 0
    assert s.pj_charge(CSet.finite(["a"])) == 0


def test_fix4_charges():
    s = space_of("FIX4")
    assert s.charge(CSet.finite([0, 1])) == 2
    assert s.charge(CSet.cofinite([0])) == INF
    assert not s.in_field(EVENS)


def test_fix5_evens():
    s = space_of("FIX5")
    assert s.inner(EVENS) == INF and s.outer(EVENS) == INF
    ok, sw = s.pj_membership(EVENS)
    assert not ok and sw.gap == INF


def test_fix6_mass_at_infinity():
    s = space_of("FIX6")
    a = EVENS - CSet.finite([0])
    assert s.outer(a) == 1 and s.inner(a) == 0
    assert s.pj_charge(CSet.finite([0]) | CSet.interval(1)) == 2


def test_completeness():
    assert not space_of("FIX3").is_complete()
    assert space_of("FIX2").is_complete()
    assert space_of("FIX1").is_complete()


def test_positive_tail_weight_forces_infinite_mass_at_infinity():
    assert FinCofNat((), 1, 0).m_inf == INF


@pytest.mark.parametrize("bad", [
    lambda: FiniteExplicit(["a"], [["z"]]),
    lambda: FiniteExplicit(["a"], [], [-1]),
    lambda: FinCofNat((-1,), 0, 0),
])
def test_invalid_spaces(bad):
    with pytest.raises(SpaceError):
        bad()


def test_field_cap():
    pts = [str(i) for i in range(13)]
    with pytest.raises(FieldCapError):
        FiniteExplicit(pts, [[p] for p in pts])


@given(finite_spaces(), st.data())
def test_finite_space_matches_definitions(s, data):
    """Outer/inner/gap against min/max over an explicitly closed field."""
    m = FiniteModel(s)
    a = CSet.finite(data.draw(st.sets(st.sampled_from(s.points))))
    x = m.cset_mask(a)
    assert s.in_field(a) == m.in_field(x)
    assert s.outer(a) == m.outer(x)
    assert s.inner(a) == m.inner(x)
    ok, sw = s.pj_membership(a)
    assert sw.gap == m.gap(x)
    assert ok == (m.gap(x) == 0)
    assert sw.lower.issubset(a) and a.issubset(sw.upper)


@given(finite_spaces(), st.data())
def test_finite_space_invariants(s, data):
    pick = lambda: CSet.finite(data.draw(st.sets(st.sampled_from(s.points))))
    a, b = pick(), pick()
    assert s.inner(a) <= s.outer(a)
    if a.issubset(b):
        assert s.outer(a) <= s.outer(b) and s.inner(a) <= s.inner(b)
    if (a & b).is_empty:
        assert s.outer(a | b) <= s.outer(a) + s.outer(b)
        assert s.inner(a | b) >= s.inner(a) + s.inner(b)
    if s.in_fbar(a) and s.in_fbar(b):
        assert s.in_fbar(a | b) and s.in_fbar(s.complement(a))


@given(fincof_spaces(), nat_sets())
def test_fincof_invariants(s, a):
    assert s.inner(a) <= s.outer(a)
    if s.in_field(a):
        assert s.inner(a) == s.charge(a) == s.outer(a)
        total = s.charge(s.universe)
        assert s.charge(a) + s.charge(s.complement(a)) == total
    ok, sw = s.pj_membership(a)
    assert sw.lower.issubset(a) and a.issubset(sw.upper)
    assert s.in_field(sw.lower) and s.in_field(sw.upper)
    if ok:
        assert s.pj_charge(a) == s.outer(a) == s.inner(a)


@given(fincof_spaces(), nat_sets(), nat_sets())
def test_fincof_completion_closed(s, a, b):
    if s.in_fbar(a) and s.in_fbar(b):
        assert s.in_fbar(a | b) and s.in_fbar(s.complement(a))


def test_fincof_window_sums():
    # direct summation on a window agrees with the closed form for finite sets
    s = FinCofNat((Fraction(1, 2), 0, 3), Fraction(1), 0)
    a = CSet.finite([0, 2, 7])
    assert s.charge(a) == Fraction(1, 2) + 3 + 1
