"""Uniform codomains presented by families of pseudometrics.

Every codomain exposes a list of pseudometric ids and ``dist(pid, y, z)``.
An ``Entourage`` is a finite intersection of strict primitive entourages
``{(y, z) : d_pid(y, z) < r}``.  Finite codomains also list their points;
the rational line does not.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .extreal import fmt

# canonical radii always offered on the rational line
GRID = (Fraction(1), Fraction(1, 2))


class CodomainError(ValueError):
    pass


@dataclass(frozen=True)
class Entourage:
    """Intersection of primitives, one radius per pseudometric id."""

    radii: tuple  # sorted ((pid, r), ...)

    @classmethod
    def of(cls, radii) -> "Entourage":
        best: dict = {}
        items = radii.items() if isinstance(radii, dict) else radii
        for pid, r in items:
            r = Fraction(r)
            if r <= 0:
                raise CodomainError("entourage radii must be positive")
            best[pid] = min(r, best.get(pid, r))
        return cls(tuple(sorted(best.items())))

    def radius(self, pid):
        return dict(self.radii).get(pid)

    def describe(self) -> str:
        if len(self.radii) == 1:
            return f"r={fmt(self.radii[0][1])}"
        return "(" + ", ".join(f"{pid}<{fmt(r)}" for pid, r in self.radii) + ")"

    def __repr__(self):
        return f"E[{self.describe()}]"


class Codomain:
    pids: tuple = ()
    points: tuple | None = None
    is_real = False

    @property
    def finite(self) -> bool:
        return self.points is not None

    def dist(self, pid, y, z) -> Fraction:
        raise NotImplementedError

    def contains(self, y) -> bool:
        return y in self._point_set

    def check_point(self, y):
        if not self.contains(y):
            raise CodomainError(f"{y!r} is not a point of {self!r}")

    def related(self, e: Entourage, y, z) -> bool:
        return all(self.dist(pid, y, z) < r for pid, r in e.radii)

    def diameter(self, pid, pts: Sequence) -> Fraction:
        pts = list(pts)
        return max((self.dist(pid, a, b) for a, b in itertools.combinations(pts, 2)), default=Fraction(0))

    def positive_distances(self, pid, pts: Iterable) -> list[Fraction]:
        pts = list(pts)
        return sorted({d for a, b in itertools.combinations(pts, 2) if (d := self.dist(pid, a, b)) > 0})

    def candidate_centers(self, pts: Sequence) -> list:
        """Points that can serve as ball centres covering ``pts`` when any can."""
        return list(self.points)

    def zero_classes(self) -> list[tuple]:
        """Classes of points at distance 0 in every pseudometric."""
        classes: list[list] = []
        for y in self.points:
            for c in classes:
                if all(self.dist(pid, y, c[0]) == 0 for pid in self.pids):
                    c.append(y)
                    break
            else:
                classes.append([y])
        return [tuple(c) for c in classes]

    def parse_point(self, token):
        raise NotImplementedError

    def format_point(self, y) -> str:
        return str(y)


class RationalLine(Codomain):
    pids = ("abs",)
    is_real = True

    def __eq__(self, other):
        return isinstance(other, RationalLine)

    def __hash__(self):
        return hash("rational-line")

    def __repr__(self):
        return "rational-line"

    def contains(self, y) -> bool:
        return isinstance(y, (int, Fraction))

    def dist(self, pid, y, z) -> Fraction:
        return abs(Fraction(y) - Fraction(z))

    def candidate_centers(self, pts: Sequence) -> list:
        pts = sorted(set(pts))
        mids = {(a + b) / 2 for a, b in itertools.combinations(pts, 2)}
        return sorted(set(pts) | mids) or [Fraction(0)]

    def parse_point(self, token):
        return Fraction(str(token))

    def format_point(self, y) -> str:
        return fmt(y)


class FiniteMetric(Codomain):
    """Finitely many named points with a rational pseudometric matrix."""

    pids = ("d",)

    def __init__(self, points: Sequence, matrix, name: str = ""):
        self.points = tuple(points)
        self._point_set = frozenset(self.points)
        n = len(self.points)
        if len(self._point_set) != n:
            raise CodomainError("duplicate codomain points")
        m = [[Fraction(x) for x in row] for row in matrix]
        if len(m) != n or any(len(row) != n for row in m):
            raise CodomainError("distance matrix has the wrong shape")
        for i in range(n):
            if m[i][i] != 0:
                raise CodomainError(f"nonzero diagonal at {self.points[i]}")
            for j in range(n):
                if m[i][j] < 0:
                    raise CodomainError("negative distance")
                if m[i][j] != m[j][i]:
                    raise CodomainError(f"asymmetric matrix at ({self.points[i]}, {self.points[j]})")
        for i, j, k in itertools.product(range(n), repeat=3):
            if m[i][k] > m[i][j] + m[j][k]:
                a, b, c = self.points[i], self.points[j], self.points[k]
                raise CodomainError(
                    f"triangle inequality fails: d({a},{c})={fmt(m[i][k])} > "
                    f"d({a},{b})+d({b},{c})={fmt(m[i][j] + m[j][k])}"
                )
        self.matrix = tuple(tuple(row) for row in m)
        self._index = {p: i for i, p in enumerate(self.points)}
        self.name = name
        self.distances = self.positive_distances("d", self.points)

    def __eq__(self, other):
        return isinstance(other, FiniteMetric) and (self.points, self.matrix) == (other.points, other.matrix)

    def __hash__(self):
        return hash((self.points, self.matrix))

    def __repr__(self):
        return self.name or f"FiniteMetric({','.join(map(str, self.points))})"

    def dist(self, pid, y, z) -> Fraction:
        return self.matrix[self._index[y]][self._index[z]]

    def parse_point(self, token):
        token = str(token).strip()
        if token not in self._point_set:
            raise CodomainError(f"unknown codomain point {token!r}")
        return token


class WeakFamily(Codomain):
    """Finite point set carrying the weak uniformity of real-valued tables."""

    def __init__(self, points: Sequence, tables: Sequence, name: str = ""):
        self.points = tuple(points)
        self._point_set = frozenset(self.points)
        self.tables = []
        for t in tables:
            if not isinstance(t, dict):
                t = dict(zip(self.points, t))
            if set(t) != self._point_set:
                raise CodomainError("every table must be total on the points")
            self.tables.append({p: Fraction(v) for p, v in t.items()})
        self.pids = tuple(f"g{j}" for j in range(len(self.tables)))
        self.name = name

    def __eq__(self, other):
        return isinstance(other, WeakFamily) and self._key() == other._key()

    def _key(self):
        return (self.points, tuple(tuple(t[p] for p in self.points) for t in self.tables))

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.name or f"WeakFamily({','.join(map(str, self.points))}; {len(self.tables)} tables)"

    def dist(self, pid, y, z) -> Fraction:
        t = self.tables[int(pid[1:])]
        return abs(t[y] - t[z])

    parse_point = FiniteMetric.parse_point


class PseudometricFamily(Codomain):
    """Finite point set with the uniformity generated by several pseudometrics.

    This is the least upper bound of the uniformities of the individual
    matrices, each of which is validated like a ``FiniteMetric``.
    """

    def __init__(self, points: Sequence, matrices: Sequence, name: str = ""):
        self.members = tuple(FiniteMetric(points, m) for m in matrices)
        if not self.members:
            raise CodomainError("need at least one pseudometric")
        self.points = self.members[0].points
        self._point_set = frozenset(self.points)
        self.pids = tuple(f"d{j}" for j in range(len(self.members)))
        self.name = name

    def __eq__(self, other):
        return isinstance(other, PseudometricFamily) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return self.name or f"PseudometricFamily({','.join(map(str, self.points))}; {len(self.members)})"

    def dist(self, pid, y, z) -> Fraction:
        return self.members[int(pid[1:])].dist("d", y, z)

    parse_point = FiniteMetric.parse_point


class Product(Codomain):
    """Finite product with the max-combination of factor pseudometrics."""

    def __init__(self, factors: Sequence[Codomain], name: str = ""):
        self.factors = tuple(factors)
        if not self.factors:
            raise CodomainError("empty product")
        self.pids = tuple(f"{i}.{pid}" for i, c in enumerate(self.factors) for pid in c.pids)
        if all(c.finite for c in self.factors):
            self.points = tuple(itertools.product(*(c.points for c in self.factors)))
            self._point_set = frozenset(self.points)
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Product) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return self.name or "×".join(map(repr, self.factors))

    def contains(self, y) -> bool:
        return (
            isinstance(y, tuple) and len(y) == len(self.factors)
            and all(c.contains(v) for c, v in zip(self.factors, y))
        )

    def _split(self, pid):
        i, sub = pid.split(".", 1)
        return int(i), sub

    def dist(self, pid, y, z) -> Fraction:
        i, sub = self._split(pid)
        return self.factors[i].dist(sub, y[i], z[i])

    def candidate_centers(self, pts: Sequence) -> list:
        per = [c.candidate_centers([p[i] for p in pts]) for i, c in enumerate(self.factors)]
        return list(itertools.product(*per))

    def project(self, e: Entourage, i: int) -> Entourage:
        return Entourage.of({pid.split(".", 1)[1]: r for pid, r in e.radii if pid.startswith(f"{i}.")})

    def parse_point(self, token):
        if isinstance(token, (list, tuple)):
            parts = list(token)
        else:
            parts = [t for t in str(token).strip("()[] ").split(",")]
        if len(parts) != len(self.factors):
            raise CodomainError(f"expected a {len(self.factors)}-tuple, got {token!r}")
        return tuple(c.parse_point(p) for c, p in zip(self.factors, parts))

    def format_point(self, y) -> str:
        return "[" + ", ".join(c.format_point(v) for c, v in zip(self.factors, y)) + "]"


# -- operations ----------------------------------------------------------------

def ball(codomain: Codomain, e: Entourage, y):
    """The strict ball ``E[y]`` as a predicate on codomain points."""
    codomain.check_point(y)
    return lambda z: codomain.related(e, y, z)


def is_small(codomain: Codomain, pts: Iterable, e: Entourage) -> bool:
    pts = list(pts)
    return all(codomain.diameter(pid, pts) < r for pid, r in e.radii)


def compose_contains(e: Entourage, d: Entourage) -> bool:
    """Sufficient test for ``D∘D ⊆ E`` via the triangle inequality."""
    dr = dict(d.radii)
    return all(pid in dr and 2 * dr[pid] <= r for pid, r in e.radii)


def _factor_pid_points(codomain: Codomain, pid, pts):
    """Resolve a pid to (leaf codomain, leaf pid, projected points)."""
    if isinstance(codomain, Product):
        i, sub = codomain._split(pid)
        return _factor_pid_points(codomain.factors[i], sub, [p[i] for p in pts])
    return codomain, pid, list(pts)


def critical_thresholds(codomain: Codomain, pts: Iterable) -> list[Fraction]:
    """Radii and positions at which ball-membership patterns over ``pts`` change.

    Pairwise distances and half-distances for every pseudometric; on the
    rational line also the points themselves and their midpoints.
    """
    pts = list(pts)
    out: set = set()
    for pid in codomain.pids:
        leaf, sub, proj = _factor_pid_points(codomain, pid, pts)
        ds = leaf.positive_distances(sub, proj)
        out.update(ds)
        if leaf.is_real:
            out.update(d / 2 for d in ds)
            out.update(Fraction(v) for v in proj)
            out.update((Fraction(a) + Fraction(b)) / 2 for a, b in itertools.combinations(set(proj), 2))
    return sorted(out)


def pid_radii(codomain: Codomain, pid, pts=()) -> list[Fraction]:
    """Descending radii offered for one pseudometric; the last is the finest."""
    leaf, sub, proj = _factor_pid_points(codomain, pid, pts)
    if leaf.finite:
        ds = leaf.positive_distances(sub, leaf.points)
        return sorted(ds, reverse=True) or [Fraction(1)]
    ds = leaf.positive_distances(sub, proj)
    radii = set(GRID)
    radii.update(d for d in critical_thresholds(leaf, proj) if d > 0)
    if ds:
        radii.add(ds[0] / 2)
    return sorted(radii, reverse=True)


def entourage_base(codomain: Codomain, pts=()) -> list[Entourage]:
    """A base of strict entourages, coarsest first and finest last.

    Finite codomains use every distinct positive distance.  On the rational
    line the radii are the canonical grid plus the instance-critical
    thresholds of ``pts``; below the smallest of these no ball pattern over
    ``pts`` changes, which is what makes the finite list sufficient.
    """
    per = [pid_radii(codomain, pid, pts) for pid in codomain.pids]
    combos = itertools.product(*per)
    base = [Entourage(tuple(zip(codomain.pids, rs))) for rs in combos]
    base.sort(key=lambda e: tuple(-r for _, r in e.radii))
    return base


def finest(codomain: Codomain, pts=()) -> Entourage:
    return entourage_base(codomain, pts)[-1]
