"""Instance enumeration, theorem suites, counterexample search.

Suites check implications between decider verdicts over a deterministic
enumeration of small instances.  Every violation carries the instance text
so it can be re-parsed and replayed.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .extreal import INF, fmt
from .fixtures import all_instances, fix7_codomain
from .func import Affine, Constant, Periodic, SequenceFunc, TableFunc
from .instance import dump_instance
from .measurability import build_eta_zeta, decide, phi_profile
from .oracle import (DEFAULT_CUTOFF, DEFAULT_GRID, ORACLE_PROPERTIES, OracleContext, ReplayError,
                     oracle_decide, replay)
from .func import affine_image, compose, negative_part, positive_part
from .space import FinCofNat, FiniteExplicit
from .uniform import FiniteMetric, Product, PseudometricFamily, RationalLine, WeakFamily, entourage_base


class HarnessError(ValueError):
    pass


class CapExceeded(HarnessError):
    """The enumeration grew beyond ``InstanceParams.cap``."""


@dataclass(frozen=True)
class InstanceParams:
    max_points: int = 3
    weights: tuple = (0, 1, 2)
    values: tuple = (0, 1, 2)
    distances: tuple = (1, 2)
    max_codomain_points: int = 3
    include_fixtures: bool = True
    include_fincof: bool = True
    cap: int = 100_000

    def __post_init__(self):
        if self.max_points < 0 or self.max_codomain_points < 0:
            raise HarnessError("bounds must be nonnegative")
        if self.max_points > 4 or self.max_codomain_points > 4:
            raise CapExceeded("at most 4 ground or codomain points are supported")


LABELS = ("a", "b", "c", "d")
CODOMAIN_LABELS = ("p", "q", "r", "s")


def set_partitions(items: tuple):
    """All set partitions of ``items`` in a fixed order (blocks keep item order)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield ((first,),) + part
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1:]


def finite_spaces(params: InstanceParams):
    for n in range(1, params.max_points + 1):
        pts = LABELS[:n]
        for part in set_partitions(pts):
            blocks = tuple(sorted(part, key=lambda b: pts.index(b[0])))
            for ws in itertools.product(params.weights, repeat=len(blocks)):
                weights = {p: 0 for p in pts}
                for b, w in zip(blocks, ws):
                    weights[b[0]] = w
                yield FiniteExplicit(pts, [list(b) for b in blocks], weights)


def metric_codomains(params: InstanceParams):
    """Metrics on up to ``max_codomain_points`` points with distances from the set."""
    ds = sorted(set(Fraction(d) for d in params.distances if d > 0))
    for k in range(1, params.max_codomain_points + 1):
        pts = CODOMAIN_LABELS[:k]
        pairs = list(itertools.combinations(range(k), 2))
        for choice in itertools.product(ds, repeat=len(pairs)):
            m = [[Fraction(0)] * k for _ in range(k)]
            for (i, j), d in zip(pairs, choice):
                m[i][j] = m[j][i] = d
            if all(m[i][j] <= m[i][l] + m[l][j] for i in range(k) for j in range(k) for l in range(k)):
                yield FiniteMetric(pts, m)


def codomains(params: InstanceParams):
    yield RationalLine()
    yield from metric_codomains(params)


def _functions(space: FiniteExplicit, cod, params: InstanceParams):
    vals = [Fraction(v) for v in params.values] if cod.is_real else list(cod.points)
    for combo in itertools.product(vals, repeat=len(space.points)):
        yield TableFunc(space, cod, dict(zip(space.points, combo)))


def fincof_instances(params: InstanceParams):
    """A small closed-form family on the naturals, plus the fixture shapes."""
    line, fix7 = RationalLine(), fix7_codomain()
    F = Fraction
    spaces = []
    for prefix in ((), (0,), (1,)):
        for w_inf, m_inf in ((0, 0), (0, 1), (1, 0)):
            spaces.append(FinCofNat(prefix, w_inf, m_inf))
    real_tails = [Constant(F(0)), Constant(F(1)), Periodic((F(0), F(1))), Affine(F(1), F(0)), Affine(F(-1), F(0))]
    metric_tails = [Constant("p"), Constant("r"), Periodic(("p", "r"))]
    for s in spaces:
        for pre in ((), (F(0),), (F(1),)):
            for t in real_tails:
                yield s, line, SequenceFunc(s, line, pre, t)
        for pre in ((), ("p",), ("r",)):
            for t in metric_tails:
                yield s, fix7, SequenceFunc(s, fix7, pre, t)


def _semantic_key(space, cod, f):
    if isinstance(f, TableFunc):
        return (space, cod, f)
    # canonical form: shortest prefix that reproduces the same sequence
    prefix, tail = list(f.prefix), f.tail
    while prefix:
        n = len(prefix) - 1
        trial = SequenceFunc(space, cod, prefix[:-1], _shift_back(tail))
        if trial(n) != prefix[-1] or any(trial(m) != f(m) for m in range(n, n + 8)):
            break
        prefix, tail = prefix[:-1], trial.tail
    return (space, cod, tuple(prefix), tail)


def _shift_back(tail):
    if isinstance(tail, Periodic):
        vs = tail.values
        return Periodic(vs[-1:] + vs[:-1])
    return tail


def enumerate_instances(params: InstanceParams = InstanceParams()):
    """Deterministic, duplicate-free stream of ``(name, space, codomain, f)``.

    Fixtures come first under their names; generated instances are named
    ``E<index>``.
    """
    seen = set()
    count = 0

    def fresh(space, cod, f):
        nonlocal count
        key = _semantic_key(space, cod, f)
        if key in seen:
            return False
        seen.add(key)
        count += 1
        if count > params.cap:
            raise CapExceeded(f"enumeration exceeds the cap of {params.cap} instances")
        return True

    if params.include_fixtures:
        for name, s, c, f in all_instances():
            if isinstance(s, FinCofNat) and not params.include_fincof:
                continue
            if fresh(s, c, f):
                yield name, s, c, f
    idx = 0
    for s in finite_spaces(params):
        for c in codomains(params):
            for f in _functions(s, c, params):
                if fresh(s, c, f):
                    yield f"E{idx}", s, c, f
                idx += 1
    if params.include_fincof:
        for s, c, f in fincof_instances(params):
            if fresh(s, c, f):
                yield f"E{idx}", s, c, f
            idx += 1


def describe(space, cod, f) -> str:
    return dump_instance(space, cod, f)


# -- verdict cache and reports ------------------------------------------------------

REAL_ONLY = ("ray", "ray-left", "ray-right", "greco", "regular")


def applicable(prop: str, space, cod) -> bool:
    if prop in REAL_ONLY and not cod.is_real:
        return False
    if prop == "conventional" and not isinstance(space, FiniteExplicit):
        return False
    return True


class Checker:
    """Memoised decider calls; remembers every verdict for later replay."""

    def __init__(self):
        self._memo = {}
        self.produced = []   # (verdict, space, cod, f) in first-computed order

    def __call__(self, prop: str, space, cod, f) -> bool:
        return self.verdict(prop, space, cod, f).holds

    def verdict(self, prop: str, space, cod, f):
        key = (prop, space, cod, f)
        v = self._memo.get(key)
        if v is None:
            v = decide(prop, space, cod, f)
            self._memo[key] = v
            self.produced.append((v, space, cod, f))
        return v


@dataclass
class Violation:
    suite: str
    instance: str
    claim: str
    verdicts: dict
    descriptor: str

    def to_record(self) -> dict:
        return {"suite": self.suite, "instance": self.instance, "claim": self.claim,
                "verdicts": dict(sorted(self.verdicts.items())), "descriptor": self.descriptor}


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    violations: list = field(default_factory=list)
    skipped: int = 0
    wall: float = 0.0
    replayed: int = 0
    replay_failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.replay_failures

    def to_record(self) -> dict:
        return {
            "suite": self.suite, "checked": self.checked, "skipped": self.skipped,
            "violations": [v.to_record() for v in self.violations],
            "replayed": self.replayed, "replay_failures": list(self.replay_failures),
            "notes": dict(sorted(self.notes.items())), "passed": self.passed,
            "wall": round(self.wall, 3),
        }


class _Scope(Exception):
    """Raised by a suite check when the instance lies outside its hypotheses."""


# -- suites ----------------------------------------------------------------------------

def _implies(a: bool, b: bool) -> bool:
    return (not a) or b


class _Ctx:
    """What a suite check sees: the instance plus a verdict lookup."""

    def __init__(self, suite: str, name: str, space, cod, f, check: Checker, report: SuiteReport):
        self.suite, self.name = suite, name
        self.space, self.cod, self.f = space, cod, f
        self.check, self.report = check, report

    def v(self, prop, space=None, cod=None, f=None) -> bool:
        return self.check(prop, space or self.space, cod or self.cod, f or self.f)

    def expect(self, ok: bool, claim: str, **verdicts):
        if not ok:
            self.report.violations.append(Violation(
                self.suite, self.name, claim, {k: _fmt_verdict(x) for k, x in verdicts.items()},
                describe(self.space, self.cod, self.f)))


def _fmt_verdict(x):
    if isinstance(x, bool):
        return x
    return str(x)


def _require(cond: bool):
    if not cond:
        raise _Scope()


def suite_s1(c: _Ctx):
    t1, t2, sm = c.v("t1"), c.v("t2"), c.v("smooth")
    c.expect(t1 == t2, "t1 <=> t2", t1=t1, t2=t2)
    c.expect(_implies(t2, sm), "t2 => smooth", t2=t2, smooth=sm)


def suite_s2(c: _Ctx):
    _require(isinstance(c.space, FiniteExplicit))
    conv, ubm, t2, base = c.v("conventional"), c.v("ubm"), c.v("t2"), c.v("base")
    c.expect(_implies(conv, ubm), "conventional => ubm", conventional=conv, ubm=ubm)
    if c.space.bounded:
        c.expect(_implies(conv, t2), "bounded and conventional => t2", conventional=conv, t2=t2)
    complete = c.space.is_complete()
    c.expect(_implies(complete and (base or t2), conv), "complete and (base or t2) => conventional",
             complete=complete, base=base, t2=t2, conventional=conv)


def suite_s3(c: _Ctx):
    ubm, base, sm, t2 = c.v("ubm"), c.v("base"), c.v("smooth"), c.v("t2")
    c.expect(_implies(ubm, base), "ubm => base", ubm=ubm, base=base)
    # every codomain backend is uniformly locally compact
    c.expect(_implies(base, ubm), "base => ubm", ubm=ubm, base=base)
    c.expect(_implies(ubm and sm, t2), "ubm and smooth => t2", ubm=ubm, smooth=sm, t2=t2)


def metric_tables(cod) -> list[list[dict]]:
    """Families of real tables on a finite codomain used by S4/S5.

    Distance functions to each point, an index embedding, and a constant.
    """
    pts = list(cod.points)
    pid = cod.pids[0]
    dists = [{z: cod.dist(pid, y, z) for z in pts} for y in pts]
    embed = [{y: Fraction(i) for i, y in enumerate(pts)}]
    const = [{y: Fraction(0) for y in pts}]
    return [dists, embed, const]


def suite_s4(c: _Ctx):
    _require(c.cod.finite and not c.cod.is_real)
    t2, base, ubm = c.v("t2"), c.v("base"), c.v("ubm")
    for fam_id, tables in enumerate(metric_tables(c.cod)):
        ez = build_eta_zeta(c.space, c.cod, tables, c.f)
        tag = f"family {fam_id}"
        c.expect(_implies(t2 and ez.eta_subbase, base), f"t2 and eta subbase => base ({tag})",
                 t2=t2, eta_subbase=ez.eta_subbase, base=base)
        c.expect(_implies(t2 and ez.entourage_eta_subbase, ubm), f"t2 and E subbase => ubm ({tag})",
                 t2=t2, entourage_subbase=ez.entourage_eta_subbase, ubm=ubm)
        c.expect(_implies(ez.eta_subbase, ez.zeta_subbase), f"eta subbase => zeta subbase ({tag})",
                 eta=ez.eta_subbase, zeta=ez.zeta_subbase)
        c.expect(_implies(ez.entourage_eta_subbase, ez.entourage_zeta_subbase), f"E subbase => Z subbase ({tag})",
                 E=ez.entourage_eta_subbase, Z=ez.entourage_zeta_subbase)


def _threshold_samples(vals) -> list:
    vals = sorted(set(Fraction(v) for v in vals))
    if not vals:
        return [Fraction(0)]
    out = [vals[0] - 1, vals[-1] + 1] + vals
    out += [(a + b) / 2 for a, b in zip(vals, vals[1:])]
    return sorted(set(out))


def _topological_boundary(cod, d: frozenset) -> frozenset:
    e = entourage_base(cod)[-1]
    pts = cod.points
    closure = {y for y in pts if any(cod.related(e, y, z) and z in d for z in pts)}
    interior = {y for y in pts if all(z in d for z in pts if cod.related(e, y, z))}
    return frozenset(closure - interior)


def suite_s5(c: _Ctx):
    s, f = c.space, c.f
    if c.cod.is_real:
        _require(c.v("t2"))
        prof = phi_profile(s, f)
        for z in _threshold_samples(f.relevant_values()):
            if prof(z) != 0:
                continue
            inside = f.preimage_interval(None, z)
            edge = f.preimage_interval(z, z, lo_open=False, hi_open=False)
            ok_d, _ = s.pj_membership(inside)
            ok_b, _ = s.pj_membership(edge)
            c.expect(ok_d and ok_b and s.pj_charge(edge) == 0, f"boundary lemma at z={z}",
                     preimage_in_fbar=ok_d, boundary_in_fbar=ok_b)
        return
    _require(c.cod.finite)
    cond = c.v("t2") or c.v("ubm")   # finite codomains are totally bounded
    _require(cond)
    line = RationalLine()
    for tables in metric_tables(c.cod):
        for g in tables:
            h = compose(g, f, line)
            prof = phi_profile(s, h)
            for z in _threshold_samples(g.values()):
                if prof(z) != 0:
                    continue
                d = frozenset(y for y in c.cod.points if g[y] < z)
                edge = _topological_boundary(c.cod, d)
                ok_d, _ = s.pj_membership(f.preimage_values(d))
                pre_edge = f.preimage_values(edge)
                ok_b, _ = s.pj_membership(pre_edge)
                c.expect(ok_d and ok_b and s.pj_charge(pre_edge) == 0, f"boundary lemma at z={z}",
                         preimage_in_fbar=ok_d, boundary_in_fbar=ok_b)


def phi_by_definition(space, f, z, steps=(8, 9, 10)) -> list:
    """Inner charge of ``f^{-1}(z - 2^-k, z + 2^-k)`` for each ``k``."""
    return [space.inner(f.preimage_interval(z - Fraction(1, 2 ** k), z + Fraction(1, 2 ** k))) for k in steps]


def _interval_statements(prof, lo, hi, bound) -> list[bool]:
    """The five statements about φ on the open interval (lo, hi), in order.

    ``None`` ends are unbounded; the scan is limited to ``|z| <= bound``.
    """
    lo_ = lo if lo is not None else -bound
    hi_ = hi if hi is not None else bound
    pos = [p for p in prof.positive_points(bound) if lo_ < p < hi_]
    inf_pts = [p for p in pos if prof(p) == INF]
    # positive points are listed one by one, so any such set is discrete
    s1 = not (len(inf_pts) > 0 and _covers(inf_pts, lo_, hi_))
    s2 = all(not _covers([p for p in pos if prof(p) >= a], lo_, hi_) for a in (Fraction(1, 2), Fraction(1), INF))
    s3 = not _covers(pos, lo_, hi_)
    cuts = [lo_] + pos + [hi_]
    mids = [(a + b) / 2 for a, b in zip(cuts, cuts[1:]) if a < b]
    s4 = all(prof(m) == 0 for m in mids)
    s5 = all(prof(m) != INF for m in mids)
    return [s1, s2, s3, s4, s5]


def _covers(points, lo, hi) -> bool:
    # a finite point set never contains an open interval
    return False


def suite_s6(c: _Ctx):
    _require(c.cod.is_real)
    s, f = c.space, c.f
    prof = phi_profile(s, f)
    vals = f.relevant_values()
    bound = max((abs(Fraction(v)) for v in vals), default=Fraction(0)) + 2
    pos = prof.positive_points(bound)
    for z in _threshold_samples(vals):
        exact = phi_by_definition(s, f, z)
        c.expect(exact[-1] == prof(z) and len(set(exact)) == 1, f"profile matches definition at z={z}",
                 profile=prof(z), definition=exact[-1])
        others = [p for p in pos if p != z]
        gap = min((abs(p - z) for p in others), default=Fraction(1))
        v = prof(z)
        if v == 0:
            # (1): a neighbourhood of a zero with small values
            c.expect(prof(z - gap / 2) == 0 and prof(z + gap / 2) == 0, f"zero neighbourhood at z={z}")
        elif v != INF:
            # (2): nearby mass is below φ(z)
            near = sum((prof(p) for p in others if abs(p - z) < gap), Fraction(0))
            c.expect(near < v, f"isolated positive point at z={z}", phi=v, near=near)
        if v != INF:
            # (4): zeros accumulate at every point with finite φ
            w = z + min(gap, 1) / 1024
            c.expect(prof(w) == 0, f"zeros dense near z={z}", phi_at_w=prof(w))
    c.expect(all(prof(p) == INF for p in prof.infinite), "infinite set is listed exactly")
    cuts = [None] + [Fraction(v) for v in sorted(set(vals))] + [None]
    spans = list(zip(cuts, cuts[1:])) + [(None, None)]
    for lo, hi in spans:
        st = _interval_statements(prof, lo, hi, bound)
        c.expect(len(set(st)) == 1, f"interval statements agree on ({lo}, {hi})", statements=str(st))


HOMEOMORPHISMS = ((Fraction(2), Fraction(0)), (Fraction(-1), Fraction(0)), (Fraction(1, 3), Fraction(1)))


def _homeomorphic_images(f):
    for a, b in HOMEOMORPHISMS:
        yield f"{a}*v+{b}", affine_image(f, a, b)
    if f.finite_range:
        yield "v^3+v", f.map_values(lambda v: v ** 3 + v, f.codomain)


def suite_s7(c: _Ctx):
    _require(c.cod.is_real)
    s, cod, f = c.space, c.cod, c.f
    ray, left, right = c.v("ray"), c.v("ray-left"), c.v("ray-right")
    greco, base, ubm = c.v("greco"), c.v("base"), c.v("ubm")
    c.expect(_implies(ray, left and right), "ray => left and right", ray=ray, left=left, right=right)
    c.expect(_implies(left or right, greco), "left or right => greco", left=left, right=right, greco=greco)
    c.expect(_implies(greco, base), "greco => base", greco=greco, base=base)
    c.expect(ubm == base, "ubm <=> base", ubm=ubm, base=base)
    fp, fm = positive_part(f), negative_part(f)
    rp, rm = c.v("ray", s, cod, fp), c.v("ray", s, cod, fm)
    c.expect(ray == (rp and rm), "ray <=> ray(f+) and ray(f-)", ray=ray, plus=rp, minus=rm)
    for label, g in _homeomorphic_images(f):
        for prop, held in (("ray", ray), ("greco", greco), ("base", base)):
            after = c.v(prop, s, cod, g)
            c.expect(_implies(held, after), f"{prop} survives psi={label}", before=held, after=after)
    if isinstance(s, FiniteExplicit):
        conv = c.v("conventional")
        c.expect(_implies(conv, ray), "conventional => ray", conventional=conv, ray=ray)
        complete = s.is_complete()
        c.expect(_implies(complete and ray, conv), "complete and ray => conventional",
                 complete=complete, ray=ray, conventional=conv)


def has_good_right_ray(space, f) -> bool:
    """Some threshold y has ``f^{-1}(y, ∞)`` Jordan measurable."""
    return any(space.pj_membership(f.preimage_interval(y, None))[0] for y in _threshold_samples(f.relevant_values()))


def density_hypothesis(space, f) -> bool:
    """φ^{-1}[0, ∞) is dense: the infinite set is a finite list of points."""
    prof = phi_profile(space, f)
    return isinstance(prof.infinite, tuple) and all(prof(z) == INF for z in prof.infinite)


def suite_s8(c: _Ctx):
    _require(c.cod.is_real)
    s, cod, f = c.space, c.cod, c.f
    dense = density_hypothesis(s, f)
    c.expect(dense, "density hypothesis")
    _require(dense)
    base = c.v("base")
    good_y = has_good_right_ray(s, f)
    if base and not good_y:
        c.report.notes["base without a measurable ray"] = c.report.notes.get("base without a measurable ray", 0) + 1
    st = {
        "1a": c.v("ray"), "1b": c.v("ray-left"), "1c": c.v("ray-right"), "1d": c.v("greco"),
        "1e": c.v("base", s, cod, positive_part(f)) and c.v("base", s, cod, negative_part(f)),
        "1f": base and good_y,
    }
    c.expect(len(set(st.values())) == 1, "1a-1f equivalent", **st)


def suite_s9(c: _Ctx):
    _require(c.cod.is_real)
    dense = density_hypothesis(c.space, c.f)
    c.expect(dense, "density hypothesis")
    _require(dense)
    sm = c.v("smooth")
    st = {
        "2a": c.v("regular"), "2b": c.v("t1"), "2c": c.v("t2"),
        "2d": c.v("ray") and sm, "2e": c.v("base") and sm,
    }
    c.expect(len(set(st.values())) == 1, "2a-2e equivalent", **st)


def _rehome(f, cod):
    return f.map_values(lambda v: v, cod)


def pullback_pseudometrics(cod) -> list:
    """Pseudometrics pulled back along surjections onto a two-point metric space."""
    pts = list(cod.points)
    out = []
    for part in set_partitions(tuple(pts)):
        if len(part) != 2:
            continue
        side = {y: i for i, block in enumerate(part) for y in block}
        m = [[Fraction(0 if side[y] == side[z] else 1) for z in pts] for y in pts]
        out.append(FiniteMetric(pts, m))
    return out


def _bump(report: SuiteReport, key: str):
    report.notes[key] = report.notes.get(key, 0) + 1


def suite_s10(c: _Ctx):
    _require(c.cod.finite and not c.cod.is_real and isinstance(c.cod, FiniteMetric))
    s, cod, f = c.space, c.cod, c.f
    t2, sm, ubm = c.v("t2"), c.v("smooth"), c.v("ubm")
    coarse = pullback_pseudometrics(cod)
    for j, p in enumerate(coarse):
        g = _rehome(f, p)
        t2c, smc = c.v("t2", s, p, g), c.v("smooth", s, p, g)
        c.expect(_implies(t2, t2c), f"t2 inherited by coarsening {j}", fine=t2, coarse=t2c)
        c.expect(_implies(sm, smc), f"smooth inherited by coarsening {j}", fine=sm, coarse=smc)
        _bump(c.report, "strict coarsenings")
    # joins of pseudometric uniformities
    pms = [cod] + coarse
    for i, j in itertools.combinations(range(len(pms)), 2):
        mats = [pms[i].matrix, pms[j].matrix]
        fam = PseudometricFamily(cod.points, mats)
        g = _rehome(f, fam)
        gi, gj = _rehome(f, pms[i]), _rehome(f, pms[j])
        u_i, u_j, u = c.v("ubm", s, pms[i], gi), c.v("ubm", s, pms[j], gj), c.v("ubm", s, fam, g)
        c.expect(_implies(u_i and u_j, u), f"ubm joins ({i},{j})", first=u_i, second=u_j, join=u)
        t_i, t_j, t = c.v("t2", s, pms[i], gi), c.v("t2", s, pms[j], gj), c.v("t2", s, fam, g)
        c.expect(_implies(t, t_i and t_j), f"t2 passes to members ({i},{j})", join=t, first=t_i, second=t_j)
        _bump(c.report, "pseudometric joins")
    # weak uniformity of the distance functions
    tables = metric_tables(cod)[0]
    weak = WeakFamily(cod.points, tables)
    g = _rehome(f, weak)
    tw, uw = c.v("t2", s, weak, g), c.v("ubm", s, weak, g)
    line = RationalLine()
    parts = [compose(h, f, line) for h in tables]
    t_parts = [c.v("t2", s, line, h) for h in parts]
    u_parts = [c.v("ubm", s, line, h) for h in parts]
    c.expect(_implies(tw, all(t_parts)), "t2 passes to weak components", weak=tw, parts=str(t_parts))
    c.expect(_implies(all(u_parts), uw), "ubm of components gives weak ubm", weak=uw, parts=str(u_parts))
    _bump(c.report, "weak families")
    if isinstance(s, FiniteExplicit) and len(s.points) <= 2:
        other = fix7_codomain()
        prod = Product([cod, other])
        for vals in itertools.product(other.points, repeat=len(s.points)):
            f2 = TableFunc(s, other, dict(zip(s.points, vals)))
            fp = TableFunc(s, prod, {x: (f(x), f2(x)) for x in s.points})
            tp, up, sp = c.v("t2", s, prod, fp), c.v("ubm", s, prod, fp), c.v("smooth", s, prod, fp)
            t2b, ub = c.v("t2", s, other, f2), c.v("ubm", s, other, f2)
            smb = c.v("smooth", s, other, f2)
            c.expect(_implies(tp, t2 and t2b), "t2 passes to factors", product=tp, first=t2, second=t2b)
            c.expect(_implies(sp, sm and smb), "smooth passes to factors", product=sp, first=sm, second=smb)
            c.expect(_implies(ubm and ub, up), "ubm of factors gives product ubm", product=up, first=ubm, second=ub)
            _bump(c.report, "products")


ORACLE_CUTOFFS = (16, 64)


def _oracle_props(space, cod) -> list:
    return [p for p in ORACLE_PROPERTIES if applicable(p, space, cod)]


def compare_with_oracle(space, cod, f, check: Checker, cutoff: int = DEFAULT_CUTOFF,
                        grid: int = DEFAULT_GRID) -> list:
    """Disagreements ``(property, decider, oracle)`` between deciders and the oracle."""
    ctx = OracleContext(space, cod, f, grid, cutoff)
    out = []
    for prop in _oracle_props(space, cod):
        v = check.verdict(prop, space, cod, f)
        o = oracle_decide(prop, space, cod, f, grid, cutoff, ctx=ctx)
        if v.holds != o.holds:
            out.append((prop, v.holds, o.holds))
        elif not v.holds and prop in ("t1", "t2", "smooth") and v.infimum != o.infimum:
            out.append((prop, f"infimum {v.infimum}", f"infimum {o.infimum}"))
    return out


def suite_s11(c: _Ctx):
    cutoffs = (DEFAULT_CUTOFF,)
    if isinstance(c.space, FinCofNat):
        _require(c.name.startswith("FIX"))
        cutoffs = ORACLE_CUTOFFS
    for cut in cutoffs:
        for prop, mine, theirs in compare_with_oracle(c.space, c.cod, c.f, c.check, cut):
            c.expect(False, f"decider agrees with oracle on {prop} (cutoff {cut})", decider=mine, oracle=theirs)
    _bump(c.report, "naturals fixtures" if isinstance(c.space, FinCofNat) else "finite instances")


SUITES = {
    "S1": suite_s1, "S2": suite_s2, "S3": suite_s3, "S4": suite_s4, "S5": suite_s5, "S6": suite_s6,
    "S7": suite_s7, "S8": suite_s8, "S9": suite_s9, "S10": suite_s10, "S11": suite_s11,
}


def replay_verdicts(produced, grid: int = DEFAULT_GRID, cutoff: int = DEFAULT_CUTOFF) -> tuple[int, list]:
    """Replay every verdict through the definitional oracle; returns (count, failures)."""
    contexts = {}
    failures = []
    for v, s, c, f in produced:
        key = (s, c, f)
        ctx = contexts.get(key)
        if ctx is None:
            ctx = contexts[key] = OracleContext(s, c, f, grid, cutoff)
        try:
            replay(v, s, c, f, grid, cutoff, ctx=ctx)
        except ReplayError as exc:
            failures.append(f"{v.property} on {describe(s, c, f)!r}: {exc}")
    return len(produced), failures


def check_instance(suite_id: str, name: str, space, cod, f, check: Checker | None = None,
                   report: SuiteReport | None = None) -> SuiteReport:
    """Run one suite check on one instance (used to replay a violation descriptor)."""
    fn = _suite(suite_id)
    report = report or SuiteReport(suite_id)
    check = check or Checker()
    try:
        fn(_Ctx(suite_id, name, space, cod, f, check, report))
        report.checked += 1
    except _Scope:
        report.skipped += 1
    return report


def _suite(suite_id: str):
    try:
        return SUITES[suite_id.upper()]
    except KeyError:
        raise HarnessError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}") from None


def run_suite(suite_id: str, params: InstanceParams = InstanceParams(), replay_certificates: bool = True,
              check: Checker | None = None) -> SuiteReport:
    suite_id = suite_id.upper()
    _suite(suite_id)
    start = time.perf_counter()
    check = check or Checker()
    first = len(check.produced)
    report = SuiteReport(suite_id)
    for name, s, c, f in enumerate_instances(params):
        check_instance(suite_id, name, s, c, f, check, report)
    if replay_certificates:
        report.replayed, report.replay_failures = replay_verdicts(check.produced[first:])
    report.wall = time.perf_counter() - start
    return report


# -- counterexample search -------------------------------------------------------------

@dataclass
class Claim:
    id: str
    description: str
    expected: str
    props: tuple
    scope: object          # (space, cod) -> bool
    test: object           # (verdicts dict, space) -> bool
    extra: object = None   # (verdicts dict, space) -> dict of reported facts


def _c3_test(v, space):
    return not v["base"].holds and v["base"].infimum == INF


CLAIMS = {
    "C1": Claim("C1", "t2 without conventional measurability on an incomplete space", "FIX3",
                ("t2", "conventional"), lambda s, c: isinstance(s, FiniteExplicit),
                lambda v, s: v["t2"].holds and not v["conventional"].holds and not s.is_complete(),
                lambda v, s: {"complete": s.is_complete()}),
    "C2": Claim("C2", "ray or Greco measurable and base measurable, neither smooth nor t2", "FIX4",
                ("ray", "greco", "base", "smooth", "t2"), lambda s, c: c.is_real,
                lambda v, s: (v["ray"].holds or v["greco"].holds) and v["base"].holds
                and not v["smooth"].holds and not v["t2"].holds),
    "C3": Claim("C3", "not base measurable with an infinite Jordan gap", "FIX5",
                ("base",), lambda s, c: True, _c3_test,
                lambda v, s: {"base_gap": fmt(v["base"].infimum)}),
}


@dataclass
class SearchResult:
    claim: str
    witness: str | None
    expected: str
    searched: int
    verdicts: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)
    descriptor: str | None = None
    wall: float = 0.0

    @property
    def confirmed(self) -> bool:
        """The witness is the pinned one and the oracle agrees at every cutoff."""
        return (self.witness == self.expected
                and all(self.oracle[k] == self.verdicts[k.split("@")[0]] for k in self.oracle))

    def to_record(self) -> dict:
        return {"claim": self.claim, "witness": self.witness, "expected": self.expected,
                "searched": self.searched, "verdicts": dict(sorted(self.verdicts.items())),
                "oracle": dict(sorted(self.oracle.items())), "facts": dict(sorted(self.facts.items())), "confirmed": self.confirmed,
                "descriptor": self.descriptor, "wall": round(self.wall, 3)}


def search_counterexample(claim_id: str, params: InstanceParams = InstanceParams()) -> SearchResult:
    try:
        claim = CLAIMS[claim_id.upper()]
    except KeyError:
        raise HarnessError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIMS)}") from None
    start = time.perf_counter()
    check = Checker()
    searched = 0
    for name, s, c, f in enumerate_instances(params):
        if not claim.scope(s, c):
            continue
        searched += 1
        v = {p: check.verdict(p, s, c, f) for p in claim.props}
        if not claim.test(v, s):
            continue
        res = SearchResult(claim.id, name, claim.expected, searched,
                           {p: x.holds for p, x in v.items()}, descriptor=describe(s, c, f))
        if claim.extra is not None:
            res.facts = claim.extra(v, s)
        cutoffs = ORACLE_CUTOFFS if isinstance(s, FinCofNat) else (DEFAULT_CUTOFF,)
        for cut in cutoffs:
            ctx = OracleContext(s, c, f, DEFAULT_GRID, cut)
            for p in claim.props:
                res.oracle[f"{p}@{cut}"] = oracle_decide(p, s, c, f, DEFAULT_GRID, cut, ctx=ctx).holds
        res.wall = time.perf_counter() - start
        return res
    return SearchResult(claim.id, None, claim.expected, searched, wall=time.perf_counter() - start)
