"""Closed-form subsets of a ground set.

A ``CSet`` is ``points ∪ {n ≥ start : n mod period ∈ residues}``.  With no
residues it is an ordinary finite set (over any hashable labels); with
residues it is a subset of the naturals with an eventually periodic tail.
Construction always normalizes, so structural equality is set equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator


def _sort_key(x):
    return (type(x).__name__, x)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class CSet:
    points: tuple = ()
    period: int = 1
    residues: frozenset = frozenset()
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.points))

    # -- constructors -------------------------------------------------------
    @classmethod
    def finite(cls, points: Iterable = ()) -> "CSet":
        return cls(tuple(sorted(set(points), key=_sort_key)))

    @classmethod
    def cofinite(cls, excluded: Iterable[int] = ()) -> "CSet":
        excluded = set(excluded)
        top = max(excluded) + 1 if excluded else 0
        return normalize([n for n in range(top) if n not in excluded], 1, {0}, top)

    @classmethod
    def periodic(cls, prefix: Iterable[int], period: int, residues: Iterable[int], start: int) -> "CSet":
        return normalize(prefix, period, residues, start)

    @classmethod
    def naturals(cls) -> "CSet":
        return cls((), 1, frozenset({0}), 0)

    @classmethod
    def interval(cls, lo: int, hi: int | None = None) -> "CSet":
        """Integers in ``[lo, hi]`` (``hi=None`` means unbounded), clipped at 0."""
        lo = max(lo, 0)
        if hi is None:
            return normalize((), 1, {0}, lo)
        return cls.finite(range(lo, hi + 1))

    # -- queries ------------------------------------------------------------
    @property
    def kind(self) -> str:
        if not self.residues:
            return "finite"
        if len(self.residues) == self.period:
            return "cofinite"
        return "periodic"

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return self.kind == "cofinite"

    @property
    def is_empty(self) -> bool:
        return not self.points and not self.residues

    def __contains__(self, x) -> bool:
        if self.residues and isinstance(x, int) and x >= self.start:
            return x % self.period in self.residues
        return x in self._members

    def __iter__(self) -> Iterator:
        if self.residues:
            raise TypeError("cannot iterate an infinite CSet; use members_below")
        return iter(self.points)

    def __len__(self) -> int:
        if self.residues:
            raise TypeError("infinite CSet has no length")
        return len(self.points)

    def members_below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if n in self]

    def horizon(self) -> int:
        """Smallest N such that membership is purely periodic from N on."""
        top = max((p for p in self.points if isinstance(p, int)), default=-1) + 1
        return max(self.start, top)

    # -- algebra ------------------------------------------------------------
    def _combine(self, other: "CSet", op) -> "CSet":
        if not self.residues and not other.residues:
            a, b = self._members, other._members
            if op is _AND:
                return CSet.finite(a & b)
            if op is _OR:
                return CSet.finite(a | b)
            return CSet.finite(a - b)
        q = _lcm(self.period, other.period)
        n = max(self.horizon(), other.horizon())
        pts = [k for k in range(n) if op(k in self, k in other)]
        res = [
            r for r in range(q)
            if op(_tail_has(self, r), _tail_has(other, r))
        ]
        return normalize(pts, q, res, n)

    def union(self, other: "CSet") -> "CSet":
        return self._combine(other, _OR)

    def intersection(self, other: "CSet") -> "CSet":
        return self._combine(other, _AND)

    def difference(self, other: "CSet") -> "CSet":
        return self._combine(other, _DIFF)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def complement(self) -> "CSet":
        """Complement inside the naturals."""
        return CSet.naturals().difference(self)

    def issubset(self, other: "CSet") -> bool:
        return self.difference(other).is_empty

    def __le__(self, other: "CSet") -> bool:
        return self.issubset(other)

    def describe(self) -> str:
        pts = ", ".join(str(p) for p in self.points)
        if self.kind == "finite":
            return "{" + pts + "}"
        if self.kind == "cofinite":
            excl = [n for n in range(self.start) if n not in self.points]
            return "cofinite{" + ", ".join(map(str, excl)) + "}"
        res = ", ".join(map(str, sorted(self.residues)))
        return f"{{{pts}}} ∪ {{n ≥ {self.start} : n mod {self.period} ∈ {{{res}}}}}"

    def __repr__(self) -> str:
        return f"CSet({self.describe()})"


def _tail_has(s: CSet, r: int) -> bool:
    return bool(s.residues) and r % s.period in s.residues


def _AND(a, b):
    return a and b


def _OR(a, b):
    return a or b


def _DIFF(a, b):
    return a and not b


def normalize(points, period: int, residues, start: int) -> CSet:
    """Canonical form: minimal period, then minimal tail start."""
    if period < 1:
        raise ValueError("period must be >= 1")
    residues = {r % period for r in residues}
    pts = set(points)
    if not residues:
        return CSet.finite(pts)
    if any(not isinstance(p, int) or p < 0 for p in pts):
        raise ValueError("periodic sets live on the naturals")
    start = max(start, 0)
    # points at or beyond the tail start are either redundant or push it back
    late = [p for p in pts if p >= start]
    if late:
        new_start = max(
            [p + 1 for p in late if p % period not in residues], default=start
        )
        pts = {p for p in pts if p < start}
        pts |= {p for p in late if p < new_start}
        pts |= {n for n in range(start, new_start) if n % period in residues}
        start = new_start
    for d in range(1, period + 1):
        if period % d == 0 and all((r + d) % period in residues for r in residues):
            residues = {r % d for r in residues}
            period = d
            break
    while start > 0:
        n = start - 1
        if (n in pts) == (n % period in residues):
            pts.discard(n)
            start -= 1
        else:
            break
    if len(residues) == period:
        period, residues = 1, {0}
    return CSet(tuple(sorted(pts)), period, frozenset(residues), start)
