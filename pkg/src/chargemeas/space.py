"""Charge spaces: a ground set, a field of sets and a positive charge.

Two backends are provided.  ``FiniteExplicit`` is a finite ground set whose
field is given by generators and whose charge comes from point weights.
``FinCofNat`` is the naturals with the finite/cofinite field; the charge of a
finite set is a weighted count and cofinite sets additionally carry a mass
at infinity, which makes the charge finitely but not countably additive.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .cset import CSet
from .extreal import INF, ext, ext_sum, fmt

FIELD_CAP = 4096


class SpaceError(ValueError):
    pass


class FieldCapError(SpaceError):
    """The generated field is too large to enumerate."""


@dataclass(frozen=True)
class PJSandwich:
    """Field sets ``lower ⊆ A ⊆ upper`` realizing the Jordan gap of ``A``."""

    lower: CSet
    upper: CSet
    gap: object

    def to_record(self) -> dict:
        return {"lower": self.lower.describe(), "upper": self.upper.describe(), "gap": fmt(self.gap)}


class ChargeSpace(ABC):
    name: str = ""

    @property
    @abstractmethod
    def universe(self) -> CSet: ...

    @abstractmethod
    def complement(self, a: CSet) -> CSet: ...

    @abstractmethod
    def in_field(self, a: CSet) -> bool: ...

    @abstractmethod
    def charge(self, a: CSet): ...

    @abstractmethod
    def outer(self, a: CSet): ...

    @abstractmethod
    def inner(self, a: CSet): ...

    @abstractmethod
    def pj_membership(self, a: CSet) -> tuple[bool, PJSandwich]: ...

    @abstractmethod
    def fbar_between(self, lower: CSet, upper: CSet) -> CSet | None:
        """Some Jordan-measurable ``H`` with ``lower ⊆ H ⊆ upper``, if any."""

    def in_fbar(self, a: CSet) -> bool:
        return self.pj_membership(a)[0]

    def pj_charge(self, a: CSet):
        ok, sandwich = self.pj_membership(a)
        if not ok:
            raise SpaceError(f"{a.describe()} is not Jordan measurable (gap {fmt(sandwich.gap)})")
        return self.outer(a)

    @property
    def total(self):
        return self.charge(self.universe)

    @property
    def bounded(self) -> bool:
        return self.total != INF


class FiniteExplicit(ChargeSpace):
    """Finite ground set; the field is generated by ``generators``.

    The charge of a field set is the sum of its point weights, so an atom's
    mass is the total weight of its points.
    """

    def __init__(self, points: Iterable, generators: Iterable[Iterable] = (), weights=None, name: str = ""):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise SpaceError("duplicate ground points")
        pset = set(self.points)
        self.generators = tuple(frozenset(g) for g in generators)
        for g in self.generators:
            if not g <= pset:
                raise SpaceError(f"generator {sorted(g, key=str)} is not a subset of the ground set")
        if weights is None:
            weights = {}
        elif not isinstance(weights, dict):
            weights = dict(zip(self.points, weights))
        self.weights = {p: ext(weights.get(p, 0)) for p in self.points}
        for p, w in self.weights.items():
            if w < 0 or w == INF:
                raise SpaceError(f"weight of {p} must be a nonnegative rational")
        self.name = name
        self.atoms = self._atoms()
        if 2 ** len(self.atoms) > FIELD_CAP:
            raise FieldCapError(f"field has 2^{len(self.atoms)} sets, above the cap of {FIELD_CAP}")
        self.atom_mass = tuple(sum((self.weights[p] for p in a), Fraction(0)) for a in self.atoms)
        self._atom_of = {p: i for i, a in enumerate(self.atoms) for p in a}
        self._key = (self.points, self.atoms, tuple(self.weights[p] for p in self.points))

    def _atoms(self) -> tuple[frozenset, ...]:
        # refine the trivial partition by every generator
        blocks = [frozenset(self.points)] if self.points else []
        for g in self.generators:
            nxt = []
            for b in blocks:
                for part in (b & g, b - g):
                    if part:
                        nxt.append(part)
            blocks = nxt
        order = {p: i for i, p in enumerate(self.points)}
        return tuple(sorted(blocks, key=lambda b: min(order[p] for p in b)))

    def __eq__(self, other):
        return isinstance(other, FiniteExplicit) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.name:
            return self.name
        atoms = " ".join("{" + ",".join(map(str, a)) + "}:" + fmt(m) for a, m in zip(self.atoms, self.atom_mass))
        return f"FiniteExplicit({atoms})"

    @property
    def universe(self) -> CSet:
        return CSet.finite(self.points)

    def complement(self, a: CSet) -> CSet:
        return CSet.finite(p for p in self.points if p not in a)

    def _check(self, a: CSet):
        if not a.is_finite or any(p not in self._atom_of for p in a.points):
            raise SpaceError(f"{a.describe()} is not a subset of the ground set")

    def atoms_meeting(self, a: CSet) -> list[int]:
        return [i for i, at in enumerate(self.atoms) if any(p in a for p in at)]

    def atoms_inside(self, a: CSet) -> list[int]:
        return [i for i, at in enumerate(self.atoms) if all(p in a for p in at)]

    def straddling(self, a: CSet) -> list[int]:
        inside = set(self.atoms_inside(a))
        return [i for i in self.atoms_meeting(a) if i not in inside]

    def union_of_atoms(self, idx: Iterable[int]) -> CSet:
        return CSet.finite(p for i in idx for p in self.atoms[i])

    def field_sets(self) -> list[CSet]:
        n = len(self.atoms)
        return [self.union_of_atoms(i for i in range(n) if mask >> i & 1) for mask in range(2 ** n)]

    def in_field(self, a: CSet) -> bool:
        self._check(a)
        return not self.straddling(a)

    def charge(self, a: CSet):
        if not self.in_field(a):
            raise SpaceError(f"{a.describe()} is not in the field")
        return sum((self.weights[p] for p in a.points), Fraction(0))

    def outer(self, a: CSet):
        self._check(a)
        return sum((self.atom_mass[i] for i in self.atoms_meeting(a)), Fraction(0))

    def inner(self, a: CSet):
        self._check(a)
        return sum((self.atom_mass[i] for i in self.atoms_inside(a)), Fraction(0))

    def pj_membership(self, a: CSet) -> tuple[bool, PJSandwich]:
        self._check(a)
        lower = self.union_of_atoms(self.atoms_inside(a))
        upper = self.union_of_atoms(self.atoms_meeting(a))
        gap = sum((self.atom_mass[i] for i in self.straddling(a)), Fraction(0))
        return gap == 0, PJSandwich(lower, upper, gap)

    def fbar_between(self, lower: CSet, upper: CSet) -> CSet | None:
        heavy = [i for i in self.atoms_meeting(lower) if self.atom_mass[i] > 0]
        h = lower.union(self.union_of_atoms(heavy))
        return h if h.issubset(upper) else None

    def is_complete(self) -> bool:
        """Every subset of a null set is measurable iff null atoms are singletons."""
        return all(m > 0 or len(a) == 1 for a, m in zip(self.atoms, self.atom_mass))


class FinCofNat(ChargeSpace):
    """The naturals with the finite/cofinite field.

    ``prefix`` holds the weights of ``0..m-1``; every later point weighs
    ``w_inf``.  Cofinite sets also carry ``m_inf``, the mass at infinity.  A
    positive ``w_inf`` already makes every cofinite set infinite, so
    ``m_inf`` is normalized to infinity in that case.
    """

    def __init__(self, prefix: Iterable = (), w_inf=0, m_inf=0, name: str = ""):
        self.prefix = tuple(ext(w) for w in prefix)
        self.w_inf = ext(w_inf)
        self.m_inf = ext(m_inf)
        if any(w < 0 or w == INF for w in self.prefix) or self.w_inf < 0 or self.w_inf == INF:
            raise SpaceError("weights must be nonnegative rationals")
        if self.m_inf < 0:
            raise SpaceError("mass at infinity must be nonnegative")
        if self.w_inf > 0:
            self.m_inf = INF
        self.name = name
        self._key = (self.prefix, self.w_inf, self.m_inf)

    def __eq__(self, other):
        return isinstance(other, FinCofNat) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.name:
            return self.name
        return f"FinCofNat(prefix=[{', '.join(map(fmt, self.prefix))}], winf={fmt(self.w_inf)}, minf={fmt(self.m_inf)})"

    @property
    def m(self) -> int:
        return len(self.prefix)

    def weight(self, n: int):
        return self.prefix[n] if n < self.m else self.w_inf

    @property
    def tail_mass_zero(self) -> bool:
        return self.w_inf == 0 and self.m_inf == 0

    @property
    def universe(self) -> CSet:
        return CSet.naturals()

    def complement(self, a: CSet) -> CSet:
        return a.complement()

    def weighted_count(self, a: CSet):
        """Sum of point weights over ``a`` (infinite for infinite ``a`` when ``w_inf > 0``)."""
        if a.is_finite:
            return ext_sum(self.weight(n) for n in a.points)
        if self.w_inf > 0:
            return INF
        return ext_sum(self.prefix[n] for n in range(self.m) if n in a)

    def in_field(self, a: CSet) -> bool:
        return a.is_finite or a.is_cofinite

    def charge(self, a: CSet):
        if a.is_finite:
            return self.weighted_count(a)
        if a.is_cofinite:
            if self.m_inf == INF:
                return INF
            return self.m_inf + self.weighted_count(a)
        raise SpaceError(f"{a.describe()} is neither finite nor cofinite")

    def outer(self, a: CSet):
        if a.is_finite:
            return self.weighted_count(a)
        if self.m_inf == INF:
            return INF
        return self.m_inf + self.weighted_count(a)

    def inner(self, a: CSet):
        if a.is_cofinite:
            return self.charge(a)
        return self.weighted_count(a)

    def pj_membership(self, a: CSet) -> tuple[bool, PJSandwich]:
        if self.in_field(a):
            return True, PJSandwich(a, a, Fraction(0))
        k = max(self.m, a.horizon())
        lower = a.intersection(CSet.interval(0, k - 1)) if k else CSet.finite()
        upper = a.union(CSet.interval(k))
        gap = self.charge(upper.difference(lower))
        return gap == 0, PJSandwich(lower, upper, gap)

    def fbar_between(self, lower: CSet, upper: CSet) -> CSet | None:
        if not lower.issubset(upper):
            return None
        if self.tail_mass_zero or self.in_field(lower):
            return lower
        if self.in_field(upper):
            return upper
        return None
