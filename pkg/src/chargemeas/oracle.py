"""Brute-force definitional oracles.

Everything here is evaluated from the definitions with as little shared
machinery as possible: sets are bitmasks over the ground set (or over a
window ``[0, 2N)`` of the naturals), the field is built by closure, and
entourages are the uniform radii ``2^k`` for ``k = 2, 1, ..., -g``.
Quantifiers over ε become "the minimum over the grid is below ``2^-g``".

On the naturals the window is a truncation: a set counts as cofinite when
it contains ``[N, 2N)`` and as finite when it misses it, and an infinite
charge is detected when a partial sum still grows between ``N`` and ``2N``.
Every oracle verdict on those spaces is sound only up to the cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cset import CSet
from .extreal import INF
from .func import Func, SequenceFunc
from .space import FinCofNat, FiniteExplicit
from .uniform import Codomain, Entourage

DEFAULT_GRID = 6
DEFAULT_CUTOFF = 16


def radii(grid: int = DEFAULT_GRID) -> list[Fraction]:
    """Entourage radii from coarse to fine."""
    return [Fraction(2) ** k for k in range(2, -grid - 1, -1)]


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _sub(a, b):
    if a == INF and b == INF:
        raise ArithmeticError("inf - inf")
    return INF if a == INF else a - b


# -- set models ---------------------------------------------------------------------

class FiniteModel:
    """Every subset of a finite ground set, with the field built by closure."""

    exact = True

    def __init__(self, space: FiniteExplicit):
        self.labels = list(space.points)
        self.index = {p: i for i, p in enumerate(self.labels)}
        self.n = len(self.labels)
        self.full = (1 << self.n) - 1
        self.w = [space.weights[p] for p in self.labels]
        gens = {self.mask(g) for g in space.generators}
        fld = {0, self.full} | gens
        while True:
            grown = set(fld)
            for a in fld:
                grown.add(self.full & ~a)
                for b in fld:
                    grown.add(a | b)
            if grown == fld:
                break
            fld = grown
        self.field = sorted(fld)
        self._field_set = fld
        self._outer = [min(self.mu(c) for c in self.field if c & a == a) for a in range(self.full + 1)]
        self._inner = [max(self.mu(b) for b in self.field if b & a == b) for a in range(self.full + 1)]
        self._gap = [
            min(self.mu(c) - self.mu(b) for c in self.field if c & a == a for b in self.field if b & a == b)
            for a in range(self.full + 1)
        ]

    def mask(self, pts) -> int:
        m = 0
        for p in pts:
            m |= 1 << self.index[p]
        return m

    def cset_mask(self, a: CSet) -> int:
        return self.mask(a.points)

    def points(self):
        return range(self.n)

    def label(self, i):
        return self.labels[i]

    def in_field(self, a: int) -> bool:
        return a in self._field_set

    def mu(self, a: int):
        return sum((self.w[i] for i in _bits(a)), Fraction(0))

    def charge(self, a: int):
        if not self.in_field(a):
            raise ValueError("not a field set")
        return self.mu(a)

    def outer(self, a: int):
        return self._outer[a]

    def inner(self, a: int):
        return self._inner[a]

    def gap(self, a: int):
        """Smallest ``μ(C \\ B)`` over field sets ``B ⊆ a ⊆ C``."""
        return self._gap[a]

    def fbar(self) -> list[int]:
        return [a for a in range(self.full + 1) if self._gap[a] == 0]

    def partitions(self):
        """Every ``(A_0, [A_1..A_n])`` with all parts in the field, nonempty blocks."""
        return _field_partitions(tuple(self.field), self.full)


@lru_cache(maxsize=None)
def _field_partitions(fld: tuple, full: int):
    out = []
    nonempty = [a for a in fld if a]

    def blocks(rest, start):
        if rest == 0:
            yield []
            return
        low = rest & -rest
        for b in nonempty:
            if b & low and b & rest == b:
                for tail in blocks(rest & ~b, 0):
                    yield [b] + tail

    for a0 in fld:
        for bl in blocks(full & ~a0, 0):
            out.append((a0, tuple(bl)))
    return tuple(out)


class WindowModel:
    """The naturals seen through the window ``[0, 2N)``."""

    exact = False

    def __init__(self, space: FinCofNat, cutoff: int = DEFAULT_CUTOFF):
        self.N = cutoff
        self.n = 2 * cutoff
        self.full = (1 << self.n) - 1
        self.tailmask = self.full & ~((1 << cutoff) - 1)
        self.w = [space.weight(i) for i in range(self.n)]
        self.m = min(space.m, self.n)
        self.w_inf = space.w_inf
        self.m_inf = space.m_inf

    def points(self):
        return range(self.n)

    def label(self, i):
        return i

    def cset_mask(self, a: CSet) -> int:
        m = 0
        for i in range(self.n):
            if i in a:
                m |= 1 << i
        return m

    def from_k(self, k: int) -> int:
        return self.full & ~((1 << k) - 1)

    def below_k(self, k: int) -> int:
        return (1 << k) - 1

    def is_finite(self, a: int) -> bool:
        return a & self.tailmask == 0

    def is_cofinite(self, a: int) -> bool:
        return a & self.tailmask == self.tailmask

    def in_field(self, a: int) -> bool:
        return self.is_finite(a) or self.is_cofinite(a)

    def _sum(self, a: int, upto: int):
        a &= self.below_k(upto)
        head = a & self.below_k(self.m)
        total = sum((self.w[i] for i in _bits(head)), Fraction(0))
        return total + self.w_inf * bin(a & ~head).count("1")

    def grows(self, a: int) -> bool:
        return self._sum(a, self.n) > self._sum(a, self.N)

    def charge(self, a: int):
        if self.is_finite(a):
            return self._sum(a, self.n)
        if not self.is_cofinite(a):
            raise ValueError("not a field set")
        if self.m_inf == INF or self.grows(a):
            return INF
        return self.m_inf + self._sum(a, self.n)

    def outer(self, a: int):
        cands = [a | self.from_k(k) for k in range(self.N + 1)]
        if self.is_finite(a):
            cands.append(a)
        return min(self.charge(c) for c in cands)

    def inner(self, a: int):
        if self.is_cofinite(a):
            return self.charge(a)
        # finite subsets a ∩ [0, k); an unbounded increase means inner = ∞
        return INF if self.grows(a) else self._sum(a, self.N)

    def gap(self, a: int):
        if self.in_field(a):
            return Fraction(0)
        if self.m_inf == INF:
            # every upper \ lower is cofinite, hence of infinite charge
            return INF
        # upper \ lower shrinks as either cut moves right, so the diagonal suffices
        best = INF
        for k in range(self.N + 1):
            lower = a & self.below_k(k)
            upper = a | self.from_k(k)
            best = min(best, self.charge(upper & ~lower))
            if best == 0:
                break
        return best


def model_for(space, cutoff: int = DEFAULT_CUTOFF):
    if isinstance(space, FiniteExplicit):
        return _finite_model(space)
    return WindowModel(space, cutoff)


@lru_cache(maxsize=4096)
def _finite_model(space: FiniteExplicit) -> FiniteModel:
    return FiniteModel(space)


# -- per-instance evaluation ---------------------------------------------------------

@dataclass
class OracleVerdict:
    property: str
    holds: bool
    infimum: object = None      # value at the finest radius when it fails
    exact: bool = True          # False for truncated (windowed) evaluations
    detail: dict = field(default_factory=dict)


def _radius_of(e, pid):
    return e if not isinstance(e, Entourage) else e.radius(pid)


def _grid_points(lo, hi, step) -> list[Fraction]:
    n = int((hi - lo) / step)
    return [lo + step * j for j in range(n + 1)]


class OracleContext:
    """Definitional evaluation of one instance."""

    def __init__(self, space, codomain: Codomain, f: Func, grid: int = DEFAULT_GRID,
                 cutoff: int = DEFAULT_CUTOFF):
        self.space, self.cod, self.f = space, codomain, f
        self.grid = grid
        self.radii = radii(grid)
        self.eps = Fraction(1, 2 ** grid)
        self.model = model_for(space, cutoff)
        self.exact = self.model.exact
        self.vals = [f(self.model.label(i)) for i in self.model.points()]
        self.range = sorted(set(self.vals), key=self._key)
        self._cache = {}

    @staticmethod
    def _key(v):
        return (0, v, "") if isinstance(v, Fraction) else (1, 0, str(v))

    # -- primitive geometry, straight from the pseudometrics
    def close(self, e, y, z) -> bool:
        return all(self.cod.dist(pid, y, z) < _radius_of(e, pid) for pid in self.cod.pids)

    def small(self, ys, e) -> bool:
        ys = list(ys)
        return all(self.close(e, a, b) for a in ys for b in ys)

    def pre(self, pred) -> int:
        m = 0
        for i, v in enumerate(self.vals):
            if pred(v):
                m |= 1 << i
        return m

    def vals_of(self, mask: int) -> set:
        return {self.vals[i] for i in _bits(mask)}

    def centres(self, ys) -> list:
        """Candidate values for a simple function on a block."""
        if self.cod.finite:
            return list(self.cod.points)
        if self.cod.is_real:
            ys = sorted(ys)
            den = 1
            for y in ys:
                den = den * y.denominator // _gcd(den, y.denominator)
            step = Fraction(1, 4 * den)
            pts = _grid_points(ys[0] - 1, ys[-1] + 1, step)
            if len(pts) > 96:
                pts = sorted(set(ys) | {(a + b) / 2 for a, b in zip(ys, ys[1:])})
            return pts
        raise ValueError("oracle needs a finite or real codomain")

    def scan_points(self) -> list:
        """Points of the codomain at which balls are examined."""
        if self.cod.finite:
            return list(self.cod.points)
        if not self.cod.is_real:
            raise ValueError("oracle needs a finite or real codomain")
        if self.exact:
            lo, hi = self.range[0] - 1, self.range[-1] + 1
            return sorted(set(_grid_points(lo, hi, Fraction(1, 8))) | set(self.range))
        # balls of radius <= 4 around early values stay clear of [N, 2N)
        head = sorted(set(self.vals[: max(1, self.model.N // 4)]))
        mids = [(a + b) / 2 for a, b in zip(head, head[1:])]
        return sorted(set(head) | set(mids) | {head[0] - 1, head[-1] + 1})

    def thresholds(self) -> list:
        pts = self.scan_points()
        return _refine(pts)

    # -- T2
    def t2_inf(self, e):
        m = self.model
        if self.exact:
            best = INF
            for a0, blocks in m.partitions():
                if all(self.small(self.vals_of(b), e) for b in blocks):
                    best = min(best, m.charge(a0))
            return best
        # one cofinite part [k, 2N) and singletons below k; both the smallness
        # test and the charge of A_0 only improve as k grows, so take k = N
        tail = m.from_k(m.N)
        if self.small(self.vals_of(tail), e):
            return Fraction(0)
        return m.charge(tail)

    # -- T1
    def t1_inf(self, e):
        m = self.model
        if self.exact:
            best = INF
            for a0, blocks in m.partitions():
                if a0:
                    continue
                options = []
                for b in blocks:
                    bad = set()
                    for c in self.centres(self.vals_of(b)):
                        bad.add(self.pre_in(b, lambda v: not self.close(e, c, v)))
                    options.append(sorted(bad))
                for choice in product(*options):
                    u = 0
                    for x in choice:
                        u |= x
                    best = min(best, m.outer(u))
            return best
        # s = f below the cut and a constant on [k, 2N); the bad set shrinks as k grows
        tail = m.from_k(m.N)
        best = INF
        for c in self.centres(self.vals_of(tail)):
            bad = self.pre_in(tail, lambda v: not self.close(e, c, v))
            best = min(best, m.outer(bad))
            if best == 0:
                break
        return best

    def pre_in(self, mask: int, pred) -> int:
        out = 0
        for i in _bits(mask):
            if pred(self.vals[i]):
                out |= 1 << i
        return out

    # -- smooth
    def smooth_inf(self, e):
        m = self.model
        if self.exact:
            best = INF
            rng = self.range
            for bits in range(1 << len(rng)):
                covered = {rng[j] for j in range(len(rng)) if bits >> j & 1}
                # any finite set of values is covered by singletons, which are E-small
                assert all(self.small([y], e) for y in covered)
                best = min(best, m.outer(self.pre(lambda v: v not in covered)))
            return best
        # cover the values seen below the cut by singletons; more cover only helps
        covered = set(self.vals[: m.N])
        return m.outer(self.pre(lambda v: v not in covered))

    # -- balls
    def _dists(self):
        if "dists" not in self._cache:
            ys = self.scan_points()
            self._cache["dists"] = {
                (y, v): {pid: self.cod.dist(pid, y, v) for pid in self.cod.pids}
                for y in ys for v in self.range
            }
        return self._cache["dists"]

    def ball_vals(self, y, r) -> frozenset:
        d = self._dists()
        return frozenset(v for v in self.range if all(x < _radius_of(r, pid) for pid, x in d[y, v].items()))

    def good_nbhd(self, y, r) -> bool:
        """Some neighbourhood of y inside the r-ball has a Jordan-measurable preimage."""
        key = ("nb", y, r)
        if key not in self._cache:
            inner = self.ball_vals(y, self.radii[-1])
            extra = sorted(self.ball_vals(y, r) - inner, key=self._key)
            ok = False
            for bits in range(1 << min(len(extra), 8)):
                s = inner | {extra[j] for j in range(len(extra)) if bits >> j & 1}
                if self.model.gap(self.pre(lambda v: v in s)) == 0:
                    ok = True
                    break
            self._cache[key] = ok
        return self._cache[key]

    def ball_gap(self, y, r):
        s = self.ball_vals(y, r)
        return self.model.gap(self.pre(lambda v: v in s))

    # -- rays
    def ray_gap(self, y, side: str):
        if side == "right":
            return self.model.gap(self.pre(lambda v: v > y))
        return self.model.gap(self.pre(lambda v: v < y))


def _refine(pts) -> list:
    """``pts`` plus the quarter points of each consecutive gap."""
    out = set(pts)
    for a, b in zip(pts, pts[1:]):
        out |= {a + (b - a) * j / 4 for j in (1, 2, 3)}
    return sorted(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- property oracles ------------------------------------------------------------------

ORACLE_PROPERTIES = ("t1", "t2", "smooth", "base", "ubm", "conventional",
                     "ray", "ray-left", "ray-right", "greco")


def _sweep_inf(ctx: OracleContext, prop: str, fn) -> OracleVerdict:
    infs = [fn(r) for r in ctx.radii]
    holds = all(v < ctx.eps for v in infs)
    return OracleVerdict(prop, holds, None if holds else infs[-1], ctx.exact,
                         {"by_radius": dict(zip(ctx.radii, infs))})


def _open_traces(ctx: OracleContext) -> list[frozenset]:
    if ctx.cod.finite:
        pts = list(ctx.cod.points)
        out = []
        for bits in range(1 << len(pts)):
            u = {pts[j] for j in range(len(pts)) if bits >> j & 1}
            is_open = all(
                any(all(z in u for z in pts if ctx.close(r, y, z)) for r in ctx.radii) for y in u
            )
            if is_open:
                out.append(frozenset(u))
        return out
    # on the line every subset of a finite range is the trace of an open set
    rng = ctx.range
    return [frozenset(rng[j] for j in range(len(rng)) if bits >> j & 1) for bits in range(1 << len(rng))]


def _ray_oracle(ctx: OracleContext, prop: str, sides) -> OracleVerdict:
    ts = ctx.thresholds()
    bad = {t: max(ctx.ray_gap(t, s) for s in sides) for t in ts}
    run = [t for t, u in zip(ts, ts[1:]) if bad[t] > 0 and bad[u] > 0]
    holds = not run
    worst = max(bad.values(), default=Fraction(0))
    return OracleVerdict(prop, holds, None if holds else worst, ctx.exact,
                         {"bad_thresholds": [t for t in ts if bad[t] > 0]})


def greco_part_values(ctx: OracleContext, sign: int) -> list:
    return [max(sign * v, Fraction(0)) for v in ctx.vals]


def sandwich_exists(ctx: OracleContext, lower: int, upper: int) -> bool:
    m = ctx.model
    if lower & ~upper:
        return False
    if ctx.exact:
        return any(lower & ~h == 0 and h & ~upper == 0 for h in m.fbar())
    cands = [lower, upper]
    for k in range(m.N + 1):
        cands.append(lower | (upper & m.from_k(k)))
        cands.append(lower | (upper & m.below_k(k)))
    return any(m.gap(h) == 0 for h in cands)


def _greco_oracle(ctx: OracleContext) -> OracleVerdict:
    worst = None
    for sign in (1, -1):
        hv = greco_part_values(ctx, sign)
        top = max(hv)
        if ctx.exact:
            ts = _grid_points(Fraction(1, 8), top + 1, Fraction(1, 8))
        else:
            head = sorted(set(hv[: max(1, ctx.model.N // 4)]) | {Fraction(0)})
            ts = [t for t in _refine(head + [head[-1] + 1]) if t > 0]
        sets = {t: _mask_where(hv, lambda v, t=t: v > t) for t in ts}
        for i, a in enumerate(ts):
            for b in ts[:i]:
                if not sandwich_exists(ctx, sets[a], sets[b]):
                    worst = ctx.model.gap(sets[a])
                    return OracleVerdict("greco", False, worst, ctx.exact,
                                         {"part": "plus" if sign > 0 else "minus", "a": a, "b": b})
    return OracleVerdict("greco", True, None, ctx.exact)


def _mask_where(vals, pred) -> int:
    m = 0
    for i, v in enumerate(vals):
        if pred(v):
            m |= 1 << i
    return m


def oracle_decide(prop: str, space, codomain, f, grid: int = DEFAULT_GRID,
                  cutoff: int = DEFAULT_CUTOFF, ctx: OracleContext | None = None) -> OracleVerdict:
    ctx = ctx or OracleContext(space, codomain, f, grid, cutoff)
    if prop == "t2":
        return _sweep_inf(ctx, prop, ctx.t2_inf)
    if prop == "t1":
        return _sweep_inf(ctx, prop, ctx.t1_inf)
    if prop == "smooth":
        return _sweep_inf(ctx, prop, ctx.smooth_inf)
    if prop == "base":
        ys = ctx.scan_points()
        holds = all(ctx.good_nbhd(y, r) for y in ys for r in ctx.radii)
        inf = None if holds else max(ctx.ball_gap(y, ctx.radii[-1]) for y in ys)
        return OracleVerdict(prop, holds, inf, ctx.exact)
    if prop == "ubm":
        ys = ctx.scan_points()
        good = [all(ctx.ball_gap(y, r) == 0 for y in ys) for r in ctx.radii]
        holds = all(any(good[j:]) for j in range(len(good)))
        inf = None if holds else max(ctx.ball_gap(y, ctx.radii[-1]) for y in ys)
        return OracleVerdict(prop, holds, inf, ctx.exact)
    if prop == "conventional":
        if not ctx.exact:
            raise ValueError("conventional measurability needs a σ-field")
        for u in _open_traces(ctx):
            pre = ctx.pre(lambda v: v in u)
            if not ctx.model.in_field(pre):
                return OracleVerdict(prop, False, ctx.model.gap(pre), True, {"open_set": u})
        return OracleVerdict(prop, True, None, True)
    if prop in ("ray", "ray-left", "ray-right"):
        sides = {"ray": ("left", "right"), "ray-left": ("left",), "ray-right": ("right",)}[prop]
        return _ray_oracle(ctx, prop, sides)
    if prop == "greco":
        return _greco_oracle(ctx)
    raise ValueError(f"no oracle for {prop!r}")


# -- certificate replay ------------------------------------------------------------------

class ReplayError(AssertionError):
    pass


def _need(cond, msg):
    if not cond:
        raise ReplayError(msg)


def _disjoint_cover(m, parts) -> bool:
    seen = 0
    for p in parts:
        if seen & p:
            return False
        seen |= p
    return seen == m.full


def _pointwise_quantize(v, delta, i):
    """``s_i`` at a point where f = v, summing the level indicators directly."""
    unit = Fraction(delta) / 2 ** i
    n_i = i * 2 ** i - 1
    t = v / unit
    lo = max(1, int(abs(t)) - 1)
    hi = min(n_i, int(abs(t)) + 1)
    total = Fraction(0)
    for k in range(lo, hi + 1):
        y_k, y_k1 = k * unit, (k + 1) * unit
        if y_k < v <= y_k1:
            total += y_k
        if -y_k1 <= v < -y_k:
            total -= y_k
    return total


def _replay_regular(ctx: OracleContext, cert: dict, holds: bool, ob):
    m = ctx.model
    delta, depth = cert["delta"], cert["depth"]
    for i in range(1, depth + 1):
        unit = delta / 2 ** i
        for v in set(ctx.vals):
            if v == 0:
                continue
            k = int(abs(v) / unit)
            for kk in (k - 1, k):
                if not 1 <= kk <= i * 2 ** i - 1:
                    continue
                y_k, y_k1 = kk * unit, (kk + 1) * unit
                plus = ctx.pre(lambda x: y_k < x <= y_k1)
                minus = ctx.pre(lambda x: -y_k1 <= x < -y_k)
                for piece in (plus, minus):
                    if piece and m.gap(piece) != 0:
                        _need(not holds, f"piece at depth {i}, level {kk} is not Jordan measurable")
                        if ob is not None and ob.get("depth") == i and ob.get("level") == kk:
                            _need(m.gap(piece) == ob["infimum"], "piece gap differs from the reported infimum")
    s = [_pointwise_quantize(v, delta, depth) for v in ctx.vals]
    for eps, claimed in cert["errors"].items():
        bad = 0
        for j, (a, b) in enumerate(zip(s, ctx.vals)):
            if abs(a - b) > eps:
                bad |= 1 << j
        got = m.outer(bad)
        if ctx.exact:
            _need(got == claimed, f"hazy error at eps={eps}: oracle {got}, decider {claimed}")
        else:
            _need((got == 0) == (claimed == 0), f"hazy error at eps={eps}: oracle {got}, decider {claimed}")


def replay(verdict, space, codomain, f, grid: int = DEFAULT_GRID, cutoff: int = DEFAULT_CUTOFF,
           ctx: OracleContext | None = None) -> None:
    """Check a decider verdict against the definitions; raises ``ReplayError``."""
    ctx = ctx or OracleContext(space, codomain, f, grid, cutoff)
    m = ctx.model
    prop, cert, ob = verdict.property, verdict.certificate, verdict.obstruction
    mk = m.cset_mask

    def fbar_sandwich(pre_mask, sw):
        lo, up = mk(sw.lower), mk(sw.upper)
        _need(lo & ~pre_mask == 0 and pre_mask & ~up == 0, "sandwich does not contain the set")
        _need(m.in_field(lo) and m.in_field(up), "sandwich ends are not field sets")
        _need(m.charge(up & ~lo) == 0, "sandwich has positive charge gap")

    if prop == "regular":
        _replay_regular(ctx, cert, verdict.holds, ob)
        return
    if verdict.holds:
        if prop == "t2":
            for e, parts in cert["per_entourage"]:
                masks = [mk(p) for p in parts]
                _need(all(m.in_field(x) for x in masks), "partition part outside the field")
                _need(_disjoint_cover(m, masks), "parts do not partition the ground set")
                _need(m.charge(masks[0]) == 0, "exceptional part has positive charge")
                for b in masks[1:]:
                    _need(ctx.small(ctx.vals_of(b), e), f"block image is not small for {e}")
        elif prop == "t1":
            for e, (blocks, _bad) in cert["per_entourage"]:
                masks = [mk(b) for b, _ in blocks]
                _need(all(m.in_field(x) for x in masks), "simple function level set outside the field")
                _need(_disjoint_cover(m, masks), "simple function is not total")
                bad = 0
                for (b, c), x in zip(blocks, masks):
                    bad |= ctx.pre_in(x, lambda v: not ctx.close(e, c, v))
                _need(m.outer(bad) == 0, f"simple function is not close for {e}")
        elif prop == "smooth":
            for e, (cover, _unc) in cert["per_entourage"]:
                _need(all(ctx.small(b, e) for b in cover), "cover set is not small")
                covered = {y for b in cover for y in b}
                if ctx.exact:
                    unc = ctx.pre(lambda v: v not in covered)
                else:
                    unc = m.cset_mask(_unc)
                    _need(ctx.pre(lambda v: v not in covered) & ~unc == 0, "uncovered set is understated")
                _need(m.outer(unc) == 0, "uncovered set has positive outer charge")
        elif prop == "base":
            for y, good in cert["neighbourhoods"].items():
                for e, sw in good:
                    fbar_sandwich(ctx.pre(lambda v: ctx.close(e, y, v)), sw)
        elif prop == "ubm":
            for e, per_y in cert["entourages"]:
                for y, sw in per_y.items():
                    fbar_sandwich(ctx.pre(lambda v: ctx.close(e, y, v)), sw)
        elif prop == "conventional":
            for u, pre in cert["open_sets"]:
                x = ctx.pre(lambda v: v in set(u))
                _need(x == mk(pre) and m.in_field(x), "open set preimage is not a field set")
        elif prop.startswith("ray"):
            for side, info in cert.items():
                _need(not info["bad"], "certificate lists bad thresholds")
                for lo, hi, lc, hc, pre, sw in info["good"]:
                    t = lo if side == "right" else hi
                    x = ctx.pre(lambda v: v > t) if side == "right" else ctx.pre(lambda v: v < t)
                    _need(x == mk(pre), "ray preimage mismatch")
                    fbar_sandwich(x, sw)
        elif prop == "greco":
            for part, a, b, h in cert["sandwiches"]:
                hv = greco_part_values(ctx, 1 if part == "plus" else -1)
                lower = _mask_where(hv, lambda v: v > a)
                upper = _mask_where(hv, lambda v: v > b)
                x = mk(h)
                _need(lower & ~x == 0 and x & ~upper == 0, "H is not sandwiched")
                _need(m.gap(x) == 0, "H is not Jordan measurable")
        else:
            raise ReplayError(f"cannot replay {prop}")
        return
    # obstructions: recompute the reported infimum from the definitions
    _need(ob is not None, "failing verdict without obstruction")
    inf = ob.get("infimum")
    if prop in ("t1", "t2", "smooth"):
        e = ob["entourage"]
        got = {"t1": ctx.t1_inf, "t2": ctx.t2_inf, "smooth": ctx.smooth_inf}[prop](e)
        _need(got == inf and got > 0, f"{prop} infimum at {e}: oracle {got}, decider {inf}")
    elif prop in ("base", "ubm"):
        e, y = ob["entourage"], ob["point"]
        got = m.gap(ctx.pre(lambda v: ctx.close(e, y, v)))
        _need(got == inf and got > 0, f"ball gap at {y}: oracle {got}, decider {inf}")
    elif prop == "conventional":
        u = set(ob["open_set"])
        x = ctx.pre(lambda v: v in u)
        _need(not m.in_field(x), "reported open set has a measurable preimage")
        _need(m.gap(x) == ob["gap"], "reported gap differs")
    elif prop.startswith("ray"):
        side, t = ob["side"], ob["threshold"]
        lo, hi, _, _ = ob["interval"]
        _need(lo is None or hi is None or lo < hi, "bad threshold interval is degenerate")
        got = ctx.ray_gap(t, side)
        _need(got == inf and got > 0, f"ray gap at {t}: oracle {got}, decider {inf}")
    elif prop == "greco":
        hv = greco_part_values(ctx, 1 if ob["part"] == "plus" else -1)
        lower = _mask_where(hv, lambda v: v > ob["a"])
        upper = _mask_where(hv, lambda v: v > ob["b"])
        _need(not sandwich_exists(ctx, lower, upper), "a sandwich exists after all")
        got = m.gap(lower)
        _need(got == inf and got > 0, f"greco gap: oracle {got}, decider {inf}")
    else:
        raise ReplayError(f"cannot replay {prop}")
