"""Functions from a charge space into a codomain.

``TableFunc`` covers finite ground sets.  ``SequenceFunc`` covers the
naturals: an explicit prefix followed by a constant, periodic or affine tail.
Preimages come back as ``CSet`` values, so every preimage of a set of
values (or of a rational interval) is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cset import CSet
from .extreal import fmt
from .space import ChargeSpace, FinCofNat, FiniteExplicit
from .uniform import Codomain, CodomainError


class FuncError(ValueError):
    pass


@dataclass(frozen=True)
class Constant:
    value: object


@dataclass(frozen=True)
class Periodic:
    values: tuple


@dataclass(frozen=True)
class Affine:
    a: Fraction
    b: Fraction


def _in_interval(v, lo, hi, lo_open=True, hi_open=True) -> bool:
    if lo is not None and (v < lo or (lo_open and v == lo)):
        return False
    if hi is not None and (v > hi or (hi_open and v == hi)):
        return False
    return True


class Func:
    space: ChargeSpace
    codomain: Codomain

    finite_range = True

    def values(self) -> tuple:
        """Sorted (or first-seen) tuple of range values; finite range only."""
        raise NotImplementedError

    def preimage(self, pred: Callable) -> CSet:
        raise NotImplementedError

    def preimage_interval(self, lo=None, hi=None, lo_open=True, hi_open=True) -> CSet:
        return self.preimage(lambda v: _in_interval(v, lo, hi, lo_open, hi_open))

    def preimage_values(self, vals) -> CSet:
        vals = set(vals)
        return self.preimage(lambda v: v in vals)

    def map_values(self, g: Callable, codomain: Codomain) -> "Func":
        raise NotImplementedError

    def relevant_values(self) -> list:
        return list(self.values())

    def _sorted(self, vals):
        try:
            return tuple(sorted(set(vals)))
        except TypeError:
            seen = []
            for v in vals:
                if v not in seen:
                    seen.append(v)
            return tuple(seen)


class TableFunc(Func):
    def __init__(self, space: FiniteExplicit, codomain: Codomain, table: dict):
        if not isinstance(space, FiniteExplicit):
            raise FuncError("table functions need a finite ground set")
        self.space, self.codomain = space, codomain
        if set(table) != set(space.points):
            raise FuncError("function table must be total on the ground set")
        for v in table.values():
            try:
                codomain.check_point(v)
            except CodomainError as exc:
                raise FuncError(str(exc)) from None
        self.table = {p: table[p] for p in space.points}

    def __call__(self, x):
        return self.table[x]

    def __eq__(self, other):
        return isinstance(other, TableFunc) and (self.space, self.codomain, self.table) == (other.space, other.codomain, other.table)

    def __hash__(self):
        return hash((self.space, self.codomain, tuple(self.table.items())))

    def __repr__(self):
        return "{" + ", ".join(f"{p}->{self.codomain.format_point(v)}" for p, v in self.table.items()) + "}"

    def values(self) -> tuple:
        return self._sorted(self.table.values())

    def image(self, a: CSet) -> list:
        return self._sorted(self.table[p] for p in a.points)

    def preimage(self, pred) -> CSet:
        return CSet.finite(p for p, v in self.table.items() if pred(v))

    def map_values(self, g, codomain) -> "TableFunc":
        return TableFunc(self.space, codomain, {p: g(v) for p, v in self.table.items()})


class SequenceFunc(Func):
    """``f(n) = prefix[n]`` for ``n < len(prefix)``, then the tail rule."""

    def __init__(self, space: FinCofNat, codomain: Codomain, prefix: Sequence, tail):
        if not isinstance(space, FinCofNat):
            raise FuncError("sequence functions live on the naturals")
        self.space, self.codomain = space, codomain
        self.prefix = tuple(prefix)
        if isinstance(tail, Periodic) and len(tail.values) == 0:
            raise FuncError("periodic tail needs at least one value")
        if isinstance(tail, Periodic) and len(set(tail.values)) == 1:
            tail = Constant(tail.values[0])
        if isinstance(tail, Affine):
            if not codomain.is_real:
                raise FuncError("affine tails need the rational line")
            if tail.a == 0:
                raise FuncError("affine tail needs a nonzero slope")
            tail = Affine(Fraction(tail.a), Fraction(tail.b))
        self.tail = tail
        for v in self.prefix + self._tail_points():
            try:
                codomain.check_point(v)
            except CodomainError as exc:
                raise FuncError(str(exc)) from None
        self.finite_range = not isinstance(tail, Affine)

    def _tail_points(self) -> tuple:
        if isinstance(self.tail, Constant):
            return (self.tail.value,)
        if isinstance(self.tail, Periodic):
            return tuple(self.tail.values)
        return ()

    @property
    def k(self) -> int:
        return len(self.prefix)

    def __call__(self, n: int):
        if n < self.k:
            return self.prefix[n]
        t = self.tail
        if isinstance(t, Constant):
            return t.value
        if isinstance(t, Periodic):
            return t.values[(n - self.k) % len(t.values)]
        return t.a * n + t.b

    def __eq__(self, other):
        return isinstance(other, SequenceFunc) and (self.space, self.codomain, self.prefix, self.tail) == (other.space, other.codomain, other.prefix, other.tail)

    def __hash__(self):
        return hash((self.space, self.codomain, self.prefix, self.tail))

    def tail_text(self) -> str:
        t = self.tail
        fp = self.codomain.format_point
        if isinstance(t, Constant):
            return f"constant {fp(t.value)}"
        if isinstance(t, Periodic):
            return "periodic [" + ", ".join(fp(v) for v in t.values) + "]"
        return f"affine {fmt(t.a)} {fmt(t.b)}"

    def __repr__(self):
        fp = self.codomain.format_point
        return f"[{', '.join(fp(v) for v in self.prefix)}] + {self.tail_text()}"

    def tail_values(self) -> tuple:
        """Values taken infinitely often (empty for affine tails)."""
        return self._sorted(self._tail_points())

    def values(self) -> tuple:
        if not self.finite_range:
            raise FuncError("affine tail has infinite range")
        return self._sorted(self.prefix + self._tail_points())

    def relevant_values(self) -> list:
        if self.finite_range:
            return list(self.values())
        horizon = max(self.k, self.space.m) + 2
        return sorted({self(n) for n in range(horizon)})

    def preimage(self, pred) -> CSet:
        if not self.finite_range:
            raise FuncError("use preimage_interval for affine tails")
        pts = [n for n, v in enumerate(self.prefix) if pred(v)]
        if isinstance(self.tail, Constant):
            return CSet.periodic(pts, 1, [0] if pred(self.tail.value) else [], self.k)
        q = len(self.tail.values)
        res = [r for r in range(q) if pred(self.tail.values[(r - self.k) % q])]
        return CSet.periodic(pts, q, res, self.k)

    def preimage_interval(self, lo=None, hi=None, lo_open=True, hi_open=True) -> CSet:
        if self.finite_range:
            return super().preimage_interval(lo, hi, lo_open, hi_open)
        pts = [n for n, v in enumerate(self.prefix) if _in_interval(v, lo, hi, lo_open, hi_open)]
        a, b = self.tail.a, self.tail.b
        # a*n + b in the interval  <=>  n in [n_lo, n_hi] (possibly unbounded)
        bounds = []
        for t, is_open, upper in ((lo, lo_open, False), (hi, hi_open, True)):
            if t is None:
                bounds.append(None)
                continue
            x = (Fraction(t) - b) / a
            # a > 0 keeps the side; a < 0 flips it
            upper_side = upper if a > 0 else not upper
            if upper_side:
                n = math.floor(x)
                if is_open and n == x:
                    n -= 1
                bounds.append(("hi", n))
            else:
                n = math.ceil(x)
                if is_open and n == x:
                    n += 1
                bounds.append(("lo", n))
        n_lo, n_hi = self.k, None
        for bd in bounds:
            if bd is None:
                continue
            side, n = bd
            if side == "lo":
                n_lo = max(n_lo, n)
            else:
                n_hi = n if n_hi is None else min(n_hi, n)
        tail = CSet.finite() if n_hi is not None and n_hi < n_lo else CSet.interval(n_lo, n_hi)
        return CSet.finite(pts).union(tail)

    def map_values(self, g, codomain) -> "SequenceFunc":
        if isinstance(self.tail, Affine):
            raise FuncError("cannot map an affine tail by an arbitrary table")
        t = self.tail
        tail = Constant(g(t.value)) if isinstance(t, Constant) else Periodic(tuple(g(v) for v in t.values))
        return SequenceFunc(self.space, codomain, [g(v) for v in self.prefix], tail)

    def transform_affine(self, scale, shift) -> "SequenceFunc":
        """``n -> scale * f(n) + shift`` keeping the tail in closed form."""
        g = lambda v: scale * v + shift
        if not isinstance(self.tail, Affine):
            return self.map_values(g, self.codomain)
        t = self.tail
        return SequenceFunc(self.space, self.codomain, [g(v) for v in self.prefix], Affine(scale * t.a, scale * t.b + shift))


def positive_part(f: Func) -> Func:
    return clip(f, +1)


def negative_part(f: Func) -> Func:
    return clip(f, -1)


def clip(f: Func, sign: int) -> Func:
    """``max(sign * f, 0)`` for real-valued ``f``."""
    if not f.codomain.is_real:
        raise FuncError("positive/negative parts need a real codomain")
    g = lambda v: max(sign * v, Fraction(0))
    if isinstance(f, TableFunc) or f.finite_range:
        return f.map_values(g, f.codomain)
    t = f.tail
    a, b = sign * t.a, sign * t.b
    # beyond n0 the sign of a*n + b no longer changes
    n0 = max(f.k, math.ceil(-b / a) + 1 if a != 0 else f.k, 0)
    prefix = [g(f(n)) for n in range(n0)]
    tail = Affine(a, b) if a > 0 else Constant(Fraction(0))
    return SequenceFunc(f.space, f.codomain, prefix, tail)


def affine_image(f: Func, scale, shift) -> Func:
    scale, shift = Fraction(scale), Fraction(shift)
    if isinstance(f, SequenceFunc):
        return f.transform_affine(scale, shift)
    return f.map_values(lambda v: scale * v + shift, f.codomain)


def compose(g: dict, f: Func, codomain: Codomain) -> Func:
    """``g ∘ f`` for a table ``g`` on the (finite) codomain of ``f``."""
    return f.map_values(lambda v: g[v], codomain)
