import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chargemeas.fixtures import fix7_codomain
from chargemeas.uniform import (CodomainError, Entourage, FiniteMetric, Product, PseudometricFamily,
                                RationalLine, WeakFamily, ball, compose_contains, critical_thresholds,
                                entourage_base, is_small)

F = Fraction


def test_fix7_is_valid_with_radii_one_and_two():
    c = fix7_codomain()
    assert [e.radius("d") for e in entourage_base(c)] == [2, 1]


def test_single_point_has_one_base_element():
    assert len(entourage_base(FiniteMetric(["p"], [[0]]))) == 1


def test_triangle_violation_rejected():
    with pytest.raises(CodomainError):
        FiniteMetric(["p", "q", "r"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])


def test_asymmetric_matrix_rejected():
    with pytest.raises(CodomainError):
        FiniteMetric(["p", "q"], [[0, 1], [2, 0]])


def test_line_base_contains_grid_and_criticals():
    radii = {e.radius("abs") for e in entourage_base(RationalLine(), [F(0), F(1, 2), F(1)])}
    assert {F(1), F(1, 2)} <= radii


def test_product_base_is_pairs_of_radii():
    c = fix7_codomain()
    base = entourage_base(Product([c, c]))
    assert len(base) == 4
    assert base[-1].radii == (("0.d", 1), ("1.d", 1))


def test_ball_and_smallness_examples():
    c = fix7_codomain()
    e2 = Entourage.of({"d": 2})
    assert {z for z in c.points if ball(c, e2, "q")(z)} == {"p", "q", "r"}
    assert not is_small(RationalLine(), [F(0), F(1), F(2)], Entourage.of({"abs": F(1, 2)}))
    assert compose_contains(Entourage.of({"abs": 1}), Entourage.of({"abs": F(1, 2)}))


def test_critical_thresholds_on_line():
    crit = set(critical_thresholds(RationalLine(), [F(0), F(1), F(2)]))
    assert {F(1), F(2), F(0), F(1, 2), F(3, 2)} <= crit


def test_critical_thresholds_on_fix7():
    c = fix7_codomain()
    assert critical_thresholds(c, c.points) == [1, 2]


metrics = st.lists(st.sampled_from([F(1), F(2), F(3, 2)]), min_size=3, max_size=3).map(
    lambda ds: [[0, ds[0], ds[1]], [ds[0], 0, ds[2]], [ds[1], ds[2], 0]])


@given(metrics, st.sampled_from([F(1), F(2), F(3), F(5, 2)]), st.sampled_from([F(1, 2), F(1), F(3, 2)]))
def test_compose_contains_is_sound(m, r, s):
    c = FiniteMetric(["p", "q", "r"], m)
    e, d = Entourage.of({"d": r}), Entourage.of({"d": s})
    if compose_contains(e, d):
        for y, y1, y2 in itertools.product(c.points, repeat=3):
            if c.related(d, y, y1) and c.related(d, y1, y2):
                assert c.related(e, y, y2)


@given(metrics)
def test_base_entourages_symmetric_with_diagonal(m):
    c = FiniteMetric(["p", "q", "r"], m)
    for e in entourage_base(c):
        for y, z in itertools.product(c.points, repeat=2):
            assert c.related(e, y, y)
            assert c.related(e, y, z) == c.related(e, z, y)


@given(st.sets(st.tuples(st.sampled_from("pqr"), st.sampled_from("pqr")), min_size=1),
       st.sampled_from([F(1), F(2), F(3)]), st.sampled_from([F(1), F(2), F(3)]))
def test_product_smallness_is_componentwise(pts, r1, r2):
    c = fix7_codomain()
    prod = Product([c, c])
    e = Entourage.of({"0.d": r1, "1.d": r2})
    want = is_small(c, [p[0] for p in pts], Entourage.of({"d": r1})) and \
        is_small(c, [p[1] for p in pts], Entourage.of({"d": r2}))
    assert is_small(prod, pts, e) == want


def test_weak_family_and_pseudometric_family():
    w = WeakFamily(["p", "q"], [{"p": 0, "q": 1}, {"p": 0, "q": 0}])
    assert w.pids == ("g0", "g1")
    assert w.dist("g0", "p", "q") == 1 and w.dist("g1", "p", "q") == 0
    fam = PseudometricFamily(["p", "q", "r"], [[[0, 0, 1], [0, 0, 1], [1, 1, 0]],
                                               [[0, 1, 1], [1, 0, 0], [1, 0, 0]]])
    fine = entourage_base(fam)[-1]
    # the join separates every pair even though each member identifies two points
    assert all(not fam.related(fine, y, z) for y, z in itertools.combinations(fam.points, 2))
