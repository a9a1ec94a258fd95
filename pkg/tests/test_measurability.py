from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chargemeas.extreal import INF
from chargemeas.fixtures import fix7_codomain, fixture
from chargemeas.func import TableFunc
from chargemeas.measurability import (DecideError, build_eta_zeta, build_regular_sequence, decide,
                                      find_regular_delta, phi_profile, t1_at)
from chargemeas.oracle import oracle_decide, replay
from chargemeas.space import FiniteExplicit
from chargemeas.uniform import Entourage, RationalLine

from conftest import finite_spaces

F = Fraction
LINE = RationalLine()


def run(name, prop):
    s, c, f = fixture(name)
    return decide(prop, s, c, f)


def test_fix2_t2_obstruction():
    v = run("FIX2", "t2")
    assert not v.holds
    assert v.obstruction["entourage"] == Entourage.of({"abs": F(1, 2)})
    assert v.infimum == 2


def test_constant_function_everything_holds():
    s = FiniteExplicit(["a", "b"], [["a"]], [1, 2])
    f = TableFunc(s, LINE, {"a": F(3), "b": F(3)})
    for prop in ("t1", "t2", "smooth", "base", "ubm", "conventional", "ray", "greco", "regular"):
        assert decide(prop, s, LINE, f).holds, prop
    cert = decide("t2", s, LINE, f).certificate["per_entourage"]
    assert all(parts[1:] == [s.universe] for _, parts in cert)


def test_fix1_everything_holds():
    for prop in ("t1", "t2", "smooth", "base", "ubm", "conventional", "ray", "greco", "regular"):
        assert run("FIX1", prop).holds, prop


def test_fix3():
    assert run("FIX3", "t2").holds
    assert run("FIX3", "base").holds and run("FIX3", "ubm").holds and run("FIX3", "greco").holds
    v = run("FIX3", "conventional")
    assert not v.holds and v.obstruction["gap"] == 0


def test_fix4():
    for prop in ("t1", "t2", "smooth"):
        v = run("FIX4", prop)
        assert not v.holds and v.infimum == INF
    for prop in ("base", "ubm", "ray", "ray-right", "greco"):
        assert run("FIX4", prop).holds, prop
    assert not run("FIX4", "regular").holds


def test_fix5():
    for prop in ("base", "ubm", "ray", "greco", "t2"):
        assert not run("FIX5", prop).holds, prop
    v = run("FIX5", "ray-right")
    lo, hi, _, _ = v.obstruction["interval"]
    assert (lo, hi) == (0, 1) and v.infimum == INF
    g = run("FIX5", "greco").obstruction
    assert (g["a"], g["b"]) == (F(3, 4), F(1, 4))


def test_fix6_holds_everywhere():
    for prop in ("t1", "t2", "smooth", "base", "ubm", "ray", "greco", "regular"):
        assert run("FIX6", prop).holds, prop


def test_fix2_greco_fails_under_the_definition():
    v = run("FIX2", "greco")
    assert not v.holds and v.infimum == 2


def test_conventional_rejects_naturals():
    with pytest.raises(DecideError):
        run("FIX4", "conventional")


def test_t1_centre_covers_atom_at_radius_two():
    c = fix7_codomain()
    s = FiniteExplicit(["x"], [], [1])
    f = TableFunc(s, c, {"x": "p"})
    s2 = FiniteExplicit(["x", "y"], [], [1, 0])
    g = TableFunc(s2, c, {"x": "p", "y": "r"})
    # at r = 2 the single atom {x, y} is covered by the centre q
    inf, (blocks, bad) = t1_at(s2, c, g, Entourage.of({"d": 2}))
    assert inf == 0 and blocks[0][1] == "q" and bad.is_empty
    assert decide("t1", s, c, f).holds


def test_phi_profiles():
    s, c, f = fixture("FIX1")
    assert phi_profile(s, f)(0) == 1 and phi_profile(s, f)(1) == 0
    s, c, f = fixture("FIX5")
    p = phi_profile(s, f)
    assert p(0) == INF and p(1) == INF and p(F(1, 2)) == 0
    s, c, f = fixture("FIX4")
    p = phi_profile(s, f)
    assert p.progression == (0, 1, 1)
    assert all(p(n) == 1 for n in range(10)) and p(F(1, 2)) == 0


def test_regular_sequence_fix1_and_fix2():
    s, c, f = fixture("FIX1")
    seq = build_regular_sequence(s, f, F(1), 4)
    assert all(v == 0 for errs in seq.errors.values() for v in errs.values())
    s, c, f = fixture("FIX2")
    delta = find_regular_delta(s, f, 6)
    seq = build_regular_sequence(s, f, delta, 6)
    assert all(v == 0 for v in seq.errors[6].values())
    # no level lands on a point carrying boundary mass
    prof = phi_profile(s, f)
    assert all(prof(k * delta / 2 ** i) == 0 for i in range(1, 7) for k in range(-64, 65) if k)


def test_regular_sequence_fix4_diverges():
    s, c, f = fixture("FIX4")
    seq = build_regular_sequence(s, f, find_regular_delta(s, f, 4), 4)
    assert all(ok for *_, ok, _ in seq.pieces)
    assert all(v == INF for v in seq.errors[4].values())


def test_eta_zeta_embedding_is_subbase():
    c = fix7_codomain()
    s = FiniteExplicit(["a", "b"], [["a"]], [1, 1])
    f = TableFunc(s, c, {"a": "p", "b": "r"})
    ez = build_eta_zeta(s, c, [{"p": 0, "q": 1, "r": 2}], f)
    assert ez.eta_subbase and ez.zeta_subbase
    ez = build_eta_zeta(s, c, [{"p": 0, "q": 0, "r": 0}], f)
    assert not ez.eta_subbase


def test_eta_zeta_parity_on_naturals():
    from chargemeas.func import Periodic, SequenceFunc
    s = fixture("FIX5")[0]
    c = fix7_codomain()
    f = SequenceFunc(s, c, (), Periodic(("p", "r")))
    ez = build_eta_zeta(s, c, [{"p": 0, "q": 1, "r": 2}], f)
    # the endpoints 0 and 2 carry infinite boundary mass
    assert ez.eta_bad[0] == [0, 2]
    assert 0 in ez.zeta_bad[0] and 2 in ez.zeta_bad[0]


def test_records_are_json_friendly():
    import json
    for name in ("FIX2", "FIX4", "FIX5"):
        for prop in ("t2", "base", "ray", "greco"):
            json.dumps(run(name, prop).to_record())


PROPS = ("t1", "t2", "smooth", "base", "ubm", "conventional", "ray", "ray-left", "ray-right", "greco")


@given(finite_spaces(max_points=3), st.data())
def test_deciders_agree_with_oracle_and_replay(s, data):
    vals = data.draw(st.lists(st.sampled_from([F(0), F(1), F(5, 2), F(-1)]),
                              min_size=len(s.points), max_size=len(s.points)))
    f = TableFunc(s, LINE, dict(zip(s.points, vals)))
    for prop in PROPS + ("regular",):
        v = decide(prop, s, LINE, f)
        if prop != "regular":
            assert v.holds == oracle_decide(prop, s, LINE, f).holds, prop
        replay(v, s, LINE, f)
