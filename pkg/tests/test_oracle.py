from fractions import Fraction

import pytest

from chargemeas.fixtures import all_instances, fixture
from chargemeas.measurability import Verdict, decide
from chargemeas.oracle import ORACLE_PROPERTIES, OracleContext, ReplayError, oracle_decide, radii, replay
from chargemeas.uniform import Entourage

F = Fraction


def test_radii_grid():
    assert radii(2) == [4, 2, 1, F(1, 2), F(1, 4)]


def test_fix2_t2_infimum_at_half():
    s, c, f = fixture("FIX2")
    ctx = OracleContext(s, c, f)
    assert ctx.t2_inf(Entourage.of({"abs": F(1, 2)})) == 2
    o = oracle_decide("t2", s, c, f, ctx=ctx)
    assert not o.holds and o.infimum == 2


def test_fix1_all_hold():
    s, c, f = fixture("FIX1")
    assert all(oracle_decide(p, s, c, f).holds for p in ORACLE_PROPERTIES)


def test_fix3_conventional_fails_t2_holds():
    s, c, f = fixture("FIX3")
    assert not oracle_decide("conventional", s, c, f).holds
    assert oracle_decide("t2", s, c, f).holds


@pytest.mark.parametrize("name", ["FIX4", "FIX5", "FIX6"])
def test_larger_cutoff_never_flips(name):
    s, c, f = fixture(name)
    props = [p for p in ORACLE_PROPERTIES if p != "conventional"]
    for p in props:
        seen = {oracle_decide(p, s, c, f, cutoff=k).holds for k in (16, 32, 64)}
        assert seen == {decide(p, s, c, f).holds}, p


@pytest.mark.parametrize("name", [n for n, *_ in all_instances()])
def test_fixture_verdicts_replay(name):
    s, c, f = fixture(name)
    for p in ORACLE_PROPERTIES + ("regular",):
        if p == "conventional" and name in ("FIX4", "FIX5", "FIX6"):
            continue
        replay(decide(p, s, c, f), s, c, f)


def test_forged_certificate_is_rejected():
    s, c, f = fixture("FIX2")
    v = decide("t2", s, c, f)
    forged = Verdict("t2", False, {}, dict(v.obstruction, infimum=F(1)))
    with pytest.raises(ReplayError):
        replay(forged, s, c, f)
    s, c, f = fixture("FIX1")
    good = decide("t2", s, c, f)
    e, parts = good.certificate["per_entourage"][-1]
    # drop the exceptional set: the blocks no longer cover the ground set
    bad = Verdict("t2", True, {"per_entourage": [(e, [parts[0]])]})
    with pytest.raises(ReplayError):
        replay(bad, s, c, f)
