"""Exact deciders for the measurability notions, with certificates.

Each ``decide_*`` returns a ``Verdict``.  Quantifiers over entourages run
over ``entourage_base``; quantifiers over ``ε`` become "the infimum is 0",
with infima computed in closed form.  Certificates carry the witnessing
objects (partitions, simple functions, sandwiches) so they can be replayed
against the brute-force definitions in ``oracle``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .cset import CSet
from .extreal import INF, fmt
from .func import Affine, Func, SequenceFunc, TableFunc, clip, compose
from .space import ChargeSpace, FinCofNat, FiniteExplicit, PJSandwich
from .uniform import (
    GRID, Codomain, Entourage, RationalLine, critical_thresholds, entourage_base, is_small,
)

PROPERTIES = (
    "t1", "t2", "smooth", "base", "ubm", "conventional",
    "ray", "ray-left", "ray-right", "greco", "regular",
)

REGULAR_DEPTH = 8


class DecideError(ValueError):
    pass


def _record(x):
    if isinstance(x, CSet):
        return x.describe()
    if isinstance(x, Entourage):
        return x.describe()
    if isinstance(x, PJSandwich):
        return x.to_record()
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return fmt(x)
    if isinstance(x, float):
        return fmt(x)
    if isinstance(x, dict):
        return {_key(k): _record(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_record(v) for v in x]
    if isinstance(x, frozenset):
        return sorted((_record(v) for v in x), key=str)
    return x


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return "[" + ", ".join(_key(v) for v in k) + "]"
    return str(_record(k))


@dataclass
class Verdict:
    property: str
    holds: bool
    certificate: dict = field(default_factory=dict)
    obstruction: dict | None = None

    @property
    def infimum(self):
        return None if self.obstruction is None else self.obstruction.get("infimum")

    def to_record(self) -> dict:
        rec = {"property": self.property, "holds": self.holds}
        rec["certificate"] = _record(self.certificate) if self.holds else None
        if self.obstruction is not None:
            ob = dict(self.obstruction)
            rec["entourage"] = _record(ob.pop("entourage", None))
            rec["infimum"] = _record(ob.pop("infimum", None))
            rec["obstruction"] = _record(ob)
        else:
            rec["entourage"] = None
            rec["infimum"] = None
            rec["obstruction"] = None
        return rec


def relevant_points(f: Func) -> list:
    return list(f.relevant_values())


def instance_base(codomain: Codomain, f: Func) -> list[Entourage]:
    return entourage_base(codomain, relevant_points(f))


def _tail_start(space: FinCofNat, f: SequenceFunc) -> int:
    """First index past both the explicit prefix and the weighted prefix."""
    return max(f.k, space.m)


def _singletons(upto: int) -> list[CSet]:
    return [CSet.finite([n]) for n in range(upto)]


# -- T2 ---------------------------------------------------------------------------

def t2_at(space: ChargeSpace, codomain: Codomain, f: Func, e: Entourage):
    """Infimum of μ(A_0) over admissible partitions, plus a realizing partition."""
    if isinstance(space, FiniteExplicit):
        bad, blocks = [], []
        for i, atom in enumerate(space.atoms):
            piece = CSet.finite(atom)
            if not is_small(codomain, f.image(piece), e):
                bad.append(i)
                continue
            # join the first block that stays small, so constant f gives {X}
            for j, b in enumerate(blocks):
                if is_small(codomain, f.image(b.union(piece)), e):
                    blocks[j] = b.union(piece)
                    break
            else:
                blocks.append(piece)
        a0 = space.union_of_atoms(bad)
        return space.charge(a0), [a0] + blocks
    k = _tail_start(space, f)
    tail = CSet.interval(k)
    if f.finite_range and is_small(codomain, f.tail_values(), e):
        return Fraction(0), [CSet.finite()] + _singletons(k) + [tail]
    return space.charge(tail), [tail] + _singletons(k)


def _sweep(prop: str, base: list[Entourage], at) -> Verdict:
    cert, failing = [], None
    for e in base:
        inf, witness = at(e)
        if inf == 0:
            cert.append((e, witness))
        else:
            failing = {"entourage": e, "infimum": inf, "witness": witness}
    if failing is None:
        return Verdict(prop, True, {"per_entourage": cert})
    return Verdict(prop, False, {"per_entourage": cert}, failing)


def decide_T2(space, codomain, f) -> Verdict:
    base = instance_base(codomain, f)
    return _sweep("t2", base, lambda e: t2_at(space, codomain, f, e))


# -- T1 ---------------------------------------------------------------------------

def _covering_center(codomain: Codomain, pts, e: Entourage):
    pts = list(pts)
    for c in codomain.candidate_centers(pts):
        if all(codomain.related(e, c, v) for v in pts):
            return c
    return None


def t1_at(space, codomain, f, e):
    """Infimum of outer({s, f not E-close}) over simple s; witness is (blocks, bad set)."""
    if isinstance(space, FiniteExplicit):
        blocks, bad = [], CSet.finite()
        for atom in space.atoms:
            piece = CSet.finite(atom)
            img = f.image(piece)
            c = _covering_center(codomain, img, e)
            if c is None:
                c = img[0]
                bad = bad.union(CSet.finite(p for p in atom if not codomain.related(e, c, f(p))))
            blocks.append((piece, c))
        return space.outer(bad), (blocks, bad)
    k = _tail_start(space, f)
    tail = CSet.interval(k)
    blocks = [(CSet.finite([n]), f(n)) for n in range(k)]
    c = _covering_center(codomain, f.tail_values(), e) if f.finite_range else None
    if c is not None:
        return Fraction(0), (blocks + [(tail, c)], CSet.finite())
    c = f(k)
    if f.finite_range:
        near = f.preimage(lambda v: codomain.related(e, c, v))
    else:
        r = e.radius("abs")
        near = f.preimage_interval(c - r, c + r)
    bad = tail.difference(near)
    return space.outer(bad), (blocks + [(tail, c)], bad)


def decide_T1(space, codomain, f) -> Verdict:
    base = instance_base(codomain, f)
    return _sweep("t1", base, lambda e: t1_at(space, codomain, f, e))


# -- smooth -----------------------------------------------------------------------

def smooth_at(space, codomain, f, e):
    if f.finite_range:
        cover = [(v,) for v in f.values()]
        return Fraction(0), (cover, CSet.finite())
    k = _tail_start(space, f)
    cover = [(f(n),) for n in range(k)]
    covered = CSet.finite()
    for (v,) in cover:
        covered = covered.union(f.preimage_interval(v, v, False, False))
    uncovered = covered.complement()
    return space.outer(uncovered), (cover, uncovered)


def decide_smooth(space, codomain, f) -> Verdict:
    base = instance_base(codomain, f)
    return _sweep("smooth", base, lambda e: smooth_at(space, codomain, f, e))


# -- base / uniformly base --------------------------------------------------------

def scan_points(codomain: Codomain, f: Func) -> list:
    """Ball centres that exhaust every preimage pattern of the instance."""
    if codomain.finite:
        return list(codomain.points)
    pts = relevant_points(f)
    if codomain.is_real:
        far = max(pts) + 2 * max(GRID) + 1 if pts else Fraction(0)
        return sorted(set(pts) | {far})
    return pts


def ball_preimage(codomain: Codomain, f: Func, e: Entourage, y) -> CSet:
    if f.finite_range:
        return f.preimage(lambda v: codomain.related(e, y, v))
    r = e.radius("abs")
    return f.preimage_interval(y - r, y + r)


def _ball_table(space, codomain, f):
    base = instance_base(codomain, f)
    ys = scan_points(codomain, f)
    table = {}
    for e in base:
        for y in ys:
            table[e, y] = space.pj_membership(ball_preimage(codomain, f, e, y))
    return base, ys, table


def decide_base(space, codomain, f) -> Verdict:
    base, ys, table = _ball_table(space, codomain, f)
    fine = base[-1]
    cert, obstruction = {}, None
    for y in ys:
        good = [(e, table[e, y][1]) for e in base if table[e, y][0]]
        cert[y] = good
        if not table[fine, y][0] and obstruction is None:
            obstruction = {"entourage": fine, "infimum": table[fine, y][1].gap, "point": y,
                           "sandwich": table[fine, y][1]}
    return Verdict("base", obstruction is None, {"neighbourhoods": cert}, obstruction)


def decide_ubm(space, codomain, f) -> Verdict:
    base, ys, table = _ball_table(space, codomain, f)
    good = [e for e in base if all(table[e, y][0] for y in ys)]
    cert = {"entourages": [(e, {y: table[e, y][1] for y in ys}) for e in good]}
    fine = base[-1]
    if fine in good:
        return Verdict("ubm", True, cert)
    worst = max(ys, key=lambda y: table[fine, y][1].gap)
    return Verdict("ubm", False, cert, {"entourage": fine, "infimum": table[fine, worst][1].gap,
                                        "point": worst, "sandwich": table[fine, worst][1]})


# -- conventional -----------------------------------------------------------------

def open_value_sets(codomain: Codomain, f: Func) -> list[frozenset]:
    """Traces on the codomain (or range) of all open sets, up to preimage."""
    if codomain.finite:
        classes = codomain.zero_classes()
    else:
        vals = list(f.values())
        classes = []
        for v in vals:
            for c in classes:
                if all(codomain.dist(pid, v, c[0]) == 0 for pid in codomain.pids):
                    c.append(v)
                    break
            else:
                classes.append([v])
    if len(classes) > 12:
        raise DecideError("too many open sets to enumerate")
    out = []
    for mask in range(2 ** len(classes)):
        out.append(frozenset(y for i, c in enumerate(classes) if mask >> i & 1 for y in c))
    return out


def decide_conventional(space, codomain, f) -> Verdict:
    if not isinstance(space, FiniteExplicit):
        raise DecideError("conventional measurability needs a σ-field; the finite/cofinite field is not one")
    cert = []
    for u in open_value_sets(codomain, f):
        pre = f.preimage_values(u)
        if not space.in_field(pre):
            ok, sw = space.pj_membership(pre)
            return Verdict("conventional", False, {"open_sets": cert},
                           {"open_set": sorted(u, key=str), "preimage": pre, "gap": sw.gap, "sandwich": sw})
        cert.append((sorted(u, key=str), pre))
    return Verdict("conventional", True, {"open_sets": cert})


# -- rays ---------------------------------------------------------------------------

def _require_real(codomain):
    if not codomain.is_real:
        raise DecideError("this notion needs the rational line as codomain")


def ray_bad_intervals(space, f, side: str):
    """Intervals of thresholds whose ray preimage is not Jordan measurable.

    Returns ``(bad, good)`` where each entry is
    ``(lo, hi, lo_closed, hi_closed, set, sandwich)``.
    """
    vals = sorted(f.relevant_values())
    bad, good = [], []
    for i, v in enumerate(vals):
        if side == "right":
            pre = f.preimage_interval(v, None)
            nxt = vals[i + 1] if i + 1 < len(vals) else None
            span = (v, nxt, True, False)
        else:
            pre = f.preimage_interval(None, v)
            prv = vals[i - 1] if i > 0 else None
            span = (prv, v, False, True)
        ok, sw = space.pj_membership(pre)
        (good if ok else bad).append(span + (pre, sw))
    return bad, good


def decide_ray(space, codomain, f, side: str = "both") -> Verdict:
    _require_real(codomain)
    sides = ("right", "left") if side == "both" else (side,)
    name = {"both": "ray", "left": "ray-left", "right": "ray-right"}[side]
    cert, obstruction = {}, None
    for s in sides:
        if not f.finite_range:
            # affine tails: every ray preimage is finite or cofinite
            bad, good = ray_bad_intervals(space, f, s)
            assert not bad
        else:
            bad, good = ray_bad_intervals(space, f, s)
        cert[s] = {"bad": [], "good": good}
        if bad and obstruction is None:
            lo, hi, lc, hc, pre, sw = bad[0]
            obstruction = {"side": s, "interval": (lo, hi, lc, hc), "infimum": sw.gap,
                           "threshold": lo if s == "right" else hi, "preimage": pre, "sandwich": sw}
    return Verdict(name, obstruction is None, cert, obstruction)


# -- Greco (with the Jordan completion as the separating family) -----------------

def _threshold_classes(h: Func) -> list:
    """One ``(b, a)`` pair with ``b < a`` per class of equal super-level sets.

    Classes are ``(0, p_1)``, ``[p_1, p_2)``, ..., ``[p_k, ∞)`` for the positive
    values ``p_i``; ``{h > t}`` is constant on each.
    """
    pos = sorted(v for v in h.relevant_values() if v > 0)
    if not pos:
        return []
    out = [(pos[0] / 4, 3 * pos[0] / 4)]
    for lo, hi in zip(pos, pos[1:] + [pos[-1] + 2]):
        out.append((lo, (lo + hi) / 2))
    return out


def decide_greco(space, codomain, f) -> Verdict:
    _require_real(codomain)
    cert = []
    for part, sign in (("plus", 1), ("minus", -1)):
        h = clip(f, sign)
        classes = _threshold_classes(h)
        sets = [h.preimage_interval(b, None) for b, _ in classes]
        for i in range(len(classes)):
            for j in range(i + 1):
                # a from class i, b from class j <= i
                a = classes[i][1]
                b = classes[j][0]
                lower, upper = sets[i], sets[j]
                hset = space.fbar_between(lower, upper)
                if hset is None:
                    ok, sw = space.pj_membership(lower)
                    return Verdict("greco", False, {"sandwiches": cert},
                                   {"part": part, "a": a, "b": b,
                                    "lower": lower, "upper": upper, "infimum": sw.gap})
                cert.append((part, a, b, hset))
    return Verdict("greco", True, {"sandwiches": cert})


# -- boundary mass limit ---------------------------------------------------------

@dataclass
class PhiProfile:
    support: dict                     # z -> positive finite value
    progression: tuple | None = None  # (start, step, value)
    infinite: tuple = ()

    def on_progression(self, z) -> bool:
        if self.progression is None:
            return False
        start, step, _ = self.progression
        j = (Fraction(z) - start) / step
        return j.denominator == 1 and j >= 0

    def __call__(self, z):
        z = Fraction(z)
        if z in self.infinite:
            return INF
        v = self.support.get(z, Fraction(0))
        if self.on_progression(z):
            v += self.progression[2]
        return v

    def positive_points(self, bound) -> list:
        """Points with φ > 0 and |z| <= bound."""
        pts = set(self.support) | set(self.infinite)
        if self.progression is not None:
            start, step, _ = self.progression
            j = 0
            while True:
                z = start + j * step
                if abs(z) > bound and abs(z + step) > abs(z):
                    break
                if abs(z) <= bound:
                    pts.add(z)
                j += 1
        return sorted(p for p in pts if abs(p) <= bound)

    def dense_finite(self) -> bool:
        """φ^{-1}[0, ∞) is dense: the infinite set is a finite list of points."""
        return isinstance(self.infinite, tuple)

    def to_record(self) -> dict:
        return {
            "support": {fmt(z): fmt(v) for z, v in sorted(self.support.items())},
            "progression": None if self.progression is None else
            {"start": fmt(self.progression[0]), "step": fmt(self.progression[1]), "value": fmt(self.progression[2])},
            "infinite": [fmt(z) for z in self.infinite],
        }


def phi_profile(space, f) -> PhiProfile:
    _require_real(f.codomain)
    support, infinite = {}, []
    if f.finite_range:
        for v in f.values():
            m = space.inner(f.preimage_values([v]))
            if m == INF:
                infinite.append(Fraction(v))
            elif m > 0:
                support[Fraction(v)] = m
        return PhiProfile(support, None, tuple(sorted(infinite)))
    k = _tail_start(space, f)
    for n in range(k):
        w = space.weight(n)
        if w > 0:
            v = Fraction(f(n))
            support[v] = support.get(v, Fraction(0)) + w
    prog = None
    if space.w_inf > 0:
        prog = (Fraction(f(k)), f.tail.a, space.w_inf)
    return PhiProfile(support, prog, ())


def phi(space, f, z):
    return phi_profile(space, f)(z)


# -- regular dyadic sequences -----------------------------------------------------

@dataclass
class RegularSequence:
    delta: Fraction
    depth: int
    pieces: list           # (i, k, sign, CSet, ok, sandwich)
    errors: dict           # i -> {eps: outer charge}

    @property
    def pieces_ok(self) -> bool:
        return all(p[4] for p in self.pieces)

    def final_error(self):
        return max(self.errors[self.depth].values(), default=Fraction(0))


def quantize(v, delta, i):
    """Value of the depth-``i`` level function at a point where f = v."""
    unit = Fraction(delta) / 2 ** i
    top = i * Fraction(delta)
    a = abs(v)
    if a == 0 or a > top:
        return Fraction(0)
    k = math.ceil(a / unit) - 1
    return (k * unit) if v > 0 else -(k * unit)


def _values_up_to(f: Func, bound) -> list:
    """Values f takes with |value| <= bound (finite even for affine tails)."""
    if f.finite_range:
        return [v for v in f.values() if abs(v) <= bound]
    pre = f.preimage_interval(-bound, bound, False, False)
    return sorted({f(n) for n in pre.points})


def default_eps(f: Func) -> list:
    eps = [t for t in critical_thresholds(RationalLine(), f.relevant_values()) if t > 0]
    return eps or list(GRID)


def build_regular_sequence(space, f, delta, depth: int, eps: Iterable | None = None) -> RegularSequence:
    _require_real(f.codomain)
    if depth < 1:
        raise DecideError("depth must be >= 1")
    delta = Fraction(delta)
    if delta <= 0:
        raise DecideError("delta must be positive")
    eps = sorted(set(eps if eps is not None else default_eps(f)))
    pieces, errors = [], {}
    for i in range(1, depth + 1):
        unit = delta / 2 ** i
        top = i * delta
        cells = set()
        for v in _values_up_to(f, top):
            if v == 0:
                continue
            k = math.ceil(abs(v) / unit) - 1
            if k >= 1:
                cells.add((k, 1 if v > 0 else -1))
        for k, sign in sorted(cells):
            lo, hi = k * unit, (k + 1) * unit
            if sign > 0:
                pre = f.preimage_interval(lo, hi, True, False)
            else:
                pre = f.preimage_interval(-hi, -lo, False, True)
            ok, sw = space.pj_membership(pre)
            pieces.append((i, k, sign, pre, ok, sw))
        errors[i] = {e: space.outer(hazy_bad_set(f, delta, i, e)) for e in eps}
    return RegularSequence(delta, depth, pieces, errors)


def hazy_bad_set(f: Func, delta, i: int, eps) -> CSet:
    """``{x : |s_i(x) - f(x)| > eps}`` for the depth-``i`` level function."""
    err = lambda v: abs(quantize(v, delta, i) - v) > eps
    if f.finite_range:
        return f.preimage(err)
    reach = max(i * Fraction(delta), Fraction(eps))
    inside = f.preimage_interval(-reach, reach, False, False)
    far = inside.complement()
    near_bad = CSet.finite(n for n in inside.points if err(f(n)))
    return far.union(near_bad)


def find_regular_delta(space, f, depth: int = REGULAR_DEPTH) -> Fraction:
    """A level spacing whose dyadic levels all avoid the positive support of φ.

    Candidates have denominators 3^j, so their dyadic multiples rarely hit
    the (finite or arithmetic-progression) support; the scale is chosen so
    that ``depth * delta`` exceeds every relevant value.
    """
    prof = phi_profile(space, f)
    m = max((abs(v) for v in f.relevant_values()), default=Fraction(0))
    low = max(m, Fraction(1)) / depth
    scale = 2 ** depth
    for j in range(1, 7):
        for p in range(1, 3 ** j):
            if p % 3 == 0:
                continue
            delta = low * (3 ** j + p) / 3 ** j
            bad = False
            for z in prof.positive_points(depth * delta):
                if z != 0 and (z * scale / delta).denominator == 1:
                    bad = True
                    break
            if not bad:
                return delta
    raise DecideError("no admissible delta among the candidates")


def decide_regular(space, codomain, f, depth: int = REGULAR_DEPTH) -> Verdict:
    _require_real(codomain)
    delta = find_regular_delta(space, f, depth)
    seq = build_regular_sequence(space, f, delta, depth)
    cert = {"delta": delta, "depth": depth, "pieces": len(seq.pieces), "errors": seq.errors[depth]}
    for i, k, sign, pre, ok, sw in seq.pieces:
        if not ok:
            return Verdict("regular", False, cert, {"depth": i, "level": k, "sign": sign, "piece": pre,
                                                    "infimum": sw.gap, "delta": delta})
    for e, v in seq.errors[depth].items():
        if v != 0:
            return Verdict("regular", False, cert, {"depth": depth, "eps": e, "infimum": v, "delta": delta})
    return Verdict("regular", True, cert)


# -- η / ζ constructions ------------------------------------------------------------

def _gap_points(lo, hi, avoid, count=8):
    """A few points strictly inside (lo, hi) not in ``avoid`` (None = unbounded)."""
    out = []
    if lo is None and hi is None:
        lo, hi = Fraction(-1), Fraction(1)
    for j in range(1, count + 1):
        if lo is None:
            z = hi - j
        elif hi is None:
            z = lo + j
        else:
            z = lo + (hi - lo) * Fraction(j, count + 1)
        if not avoid(z):
            out.append(z)
            break
    return out


@dataclass
class EtaZeta:
    eta: list            # (g index, endpoint, side, frozenset of points)
    zeta: list
    eta_bad: dict        # g index -> endpoints with φ = ∞ (excluded from ε_g)
    zeta_bad: dict       # g index -> endpoints with φ > 0 (excluded from κ_g)
    eta_subbase: bool
    entourage_eta_subbase: bool
    zeta_subbase: bool
    entourage_zeta_subbase: bool
    profiles: list


def _ray_family(codomain, g, prof, strict_zero: bool):
    vals = sorted(set(g.values()))
    avoid = (lambda z: prof(z) != 0) if strict_zero else (lambda z: prof(z) == INF)
    ends = [z for z in vals if not avoid(z)]
    bounds = [None] + vals + [None]
    for lo, hi in zip(bounds, bounds[1:]):
        ends += _gap_points(lo, hi, avoid)
    fam = []
    for z in sorted(set(ends)):
        fam.append((z, "<", frozenset(y for y in codomain.points if g[y] < z)))
        fam.append((z, ">", frozenset(y for y in codomain.points if g[y] > z)))
    return fam


def _intersection_closure(sets: list, universe: frozenset) -> set:
    closed = {universe}
    frontier = set(sets)
    while frontier:
        new = set()
        for s in frontier:
            for c in list(closed):
                x = s & c
                if x not in closed:
                    new.add(x)
            closed.add(s)
        frontier = new - closed
        closed |= new
    return closed


def _topology_subbase(codomain, family) -> bool:
    universe = frozenset(codomain.points)
    opens = {frozenset(u) for u in open_value_sets(codomain, None)}
    if any(s not in opens for s in family):
        return False
    members = _intersection_closure(list(family), universe)
    for e in entourage_base(codomain):
        for y in codomain.points:
            ball_set = frozenset(z for z in codomain.points if codomain.related(e, y, z))
            for z in ball_set:
                if not any(z in m and m <= ball_set for m in members):
                    return False
    return True


def _entourage_subbase(codomain, tables, fams) -> bool:
    fine = entourage_base(codomain)[-1]
    relation = {(y, z) for y in codomain.points for z in codomain.points}
    for gi, g in enumerate(tables):
        fam = fams[gi]
        for y in codomain.points:
            rays = [s for (_, _, s) in fam if y in s]
            allowed = frozenset(codomain.points)
            for s in rays:
                allowed &= s
            relation -= {(y, z) for z in codomain.points if z not in allowed}
    return all(codomain.related(fine, y, z) for y, z in relation)


def build_eta_zeta(space, codomain, tables, f) -> EtaZeta:
    if not codomain.finite:
        raise DecideError("the subbase checks need a finite codomain")
    line = RationalLine()
    gs = []
    for t in tables:
        g = dict(t) if isinstance(t, dict) else dict(zip(codomain.points, t))
        g = {y: Fraction(v) for y, v in g.items()}
        if set(g) != set(codomain.points):
            raise DecideError("tables must be total on the codomain")
        for y in codomain.points:
            for z in codomain.points:
                if all(codomain.dist(pid, y, z) == 0 for pid in codomain.pids) and g[y] != g[z]:
                    raise DecideError("table is not uniformly continuous")
        gs.append(g)
    eta, zeta, eta_bad, zeta_bad, profs, fams_e, fams_z = [], [], {}, {}, [], [], []
    for gi, g in enumerate(gs):
        h = compose(g, f, line)
        prof = phi_profile(space, h)
        profs.append(prof)
        gfun = _TableView(g)
        fe = _ray_family(codomain, gfun, prof, strict_zero=False)
        fz = _ray_family(codomain, gfun, prof, strict_zero=True)
        fams_e.append(fe)
        fams_z.append(fz)
        eta += [(gi, z, side, s) for z, side, s in fe]
        zeta += [(gi, z, side, s) for z, side, s in fz]
        eta_bad[gi] = list(prof.infinite)
        zeta_bad[gi] = sorted(set(prof.support) | set(prof.infinite))
    return EtaZeta(
        eta, zeta, eta_bad, zeta_bad,
        _topology_subbase(codomain, [s for *_, s in eta]),
        _entourage_subbase(codomain, gs, fams_e),
        _topology_subbase(codomain, [s for *_, s in zeta]),
        _entourage_subbase(codomain, gs, fams_z),
        profs,
    )


class _TableView(dict):
    def values(self):  # g.values() on a table means its range
        return list(dict.values(self))


# -- dispatch ------------------------------------------------------------------------

def decide(prop: str, space, codomain, f) -> Verdict:
    if prop == "t1":
        return decide_T1(space, codomain, f)
    if prop == "t2":
        return decide_T2(space, codomain, f)
    if prop == "smooth":
        return decide_smooth(space, codomain, f)
    if prop == "base":
        return decide_base(space, codomain, f)
    if prop == "ubm":
        return decide_ubm(space, codomain, f)
    if prop == "conventional":
        return decide_conventional(space, codomain, f)
    if prop == "ray":
        return decide_ray(space, codomain, f, "both")
    if prop == "ray-left":
        return decide_ray(space, codomain, f, "left")
    if prop == "ray-right":
        return decide_ray(space, codomain, f, "right")
    if prop == "greco":
        return decide_greco(space, codomain, f)
    if prop == "regular":
        return decide_regular(space, codomain, f)
    raise DecideError(f"unknown property {prop!r}")
