"""Named reference instances FIX1..FIX7.

Each fixture is a ``(space, codomain, function)`` triple; FIX7 is a
codomain only.
"""
from __future__ import annotations

from fractions import Fraction

from .func import Affine, Constant, Periodic, SequenceFunc, TableFunc
from .space import FinCofNat, FiniteExplicit
from .uniform import FiniteMetric, RationalLine

NAMES = ("FIX1", "FIX2", "FIX3", "FIX4", "FIX5", "FIX6", "FIX7")


def fix7_codomain() -> FiniteMetric:
    return FiniteMetric(("p", "q", "r"), [[0, 1, 2], [1, 0, 1], [2, 1, 0]], name="FIX7")


def _build(name: str):
    line = RationalLine()
    F = Fraction
    if name == "FIX1":
        s = FiniteExplicit([0], [], {0: 1}, name="FIX1")
        return s, line, TableFunc(s, line, {0: F(0)})
    if name == "FIX2":
        s = FiniteExplicit(["a", "b", "c"], [["a"]], {"a": 1, "b": 2, "c": 0}, name="FIX2")
        return s, line, TableFunc(s, line, {"a": F(0), "b": F(1), "c": F(2)})
    if name == "FIX3":
        s = FiniteExplicit(["a", "b"], [], {}, name="FIX3")
        return s, line, TableFunc(s, line, {"a": F(0), "b": F(1)})
    if name == "FIX4":
        s = FinCofNat((), 1, name="FIX4")
        return s, line, SequenceFunc(s, line, (), Affine(F(1), F(0)))
    if name == "FIX5":
        s = FinCofNat((), 1, name="FIX5")
        return s, line, SequenceFunc(s, line, (), Periodic((F(0), F(1))))
    if name == "FIX6":
        s = FinCofNat((1,), 0, 1, name="FIX6")
        return s, line, SequenceFunc(s, line, (F(5),), Constant(F(0)))
    if name == "FIX7":
        return None, fix7_codomain(), None
    raise KeyError(name)


def fixture(name: str):
    """``(space, codomain, f)`` for a fixture name (case-insensitive)."""
    return _build(name.upper())


def space_of(name: str):
    return fixture(name)[0]


def codomain_of(name: str):
    return fixture(name)[1]


def function_of(name: str):
    return fixture(name)[2]


def all_instances():
    """The six complete fixture instances, in order."""
    return [(n,) + fixture(n) for n in NAMES if n != "FIX7"]
