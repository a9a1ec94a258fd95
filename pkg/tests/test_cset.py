from hypothesis import given

from chargemeas.cset import CSet

from conftest import nat_sets

WINDOW = 40


def members(s):
    return {n for n in range(WINDOW) if n in s}


def test_normal_forms():
    assert CSet.periodic([1], 2, [], 5).kind == "finite"
    assert CSet.periodic([], 2, [0, 1], 3).kind == "cofinite"
    assert CSet.periodic([], 2, [0], 0).kind == "periodic"
    assert CSet.finite([3, 1, 3]).points == (1, 3)


def test_evens_are_neither_finite_nor_cofinite():
    evens = CSet.periodic([], 2, [0], 0)
    assert not evens.is_finite and not evens.is_cofinite
    assert evens.complement() == CSet.periodic([], 2, [1], 0)


@given(nat_sets(), nat_sets())
def test_boolean_operations_match_membership(a, b):
    assert members(a | b) == members(a) | members(b)
    assert members(a & b) == members(a) & members(b)
    assert members(a - b) == members(a) - members(b)
    assert members(a.complement()) == set(range(WINDOW)) - members(a)


@given(nat_sets(), nat_sets())
def test_structural_equality_is_set_equality(a, b):
    # both sets are periodic beyond their horizons, so a long window decides equality
    assert (a == b) == (members(a) == members(b))


@given(nat_sets())
def test_double_complement(a):
    assert a.complement().complement() == a
