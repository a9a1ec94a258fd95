from fractions import Fraction

import pytest

from chargemeas.fixtures import fixture
from chargemeas.func import TableFunc
from chargemeas.harness import (
    CLAIMS, SUITES, CapExceeded, Checker, HarnessError, InstanceParams, _semantic_key,
    check_instance, enumerate_instances, run_suite, search_counterexample, set_partitions,
)
from chargemeas.instance import parse_instance
from chargemeas.space import FiniteExplicit
from chargemeas.uniform import FiniteMetric, RationalLine

SMALL = InstanceParams(max_points=2, weights=(0, 1), values=(0, 1), include_fixtures=False,
                       include_fincof=False)
TINY = InstanceParams(max_points=2, weights=(0, 1), values=(0, 1), max_codomain_points=2,
                      include_fincof=False)


def _keys(params):
    return [_semantic_key(s, c, f) for _, s, c, f in enumerate_instances(params)]


def test_set_partitions_are_bell_numbers():
    assert [len(list(set_partitions(tuple(range(n))))) for n in range(5)] == [1, 1, 2, 5, 15]


def test_enumeration_is_stable_and_duplicate_free():
    first = [name for name, *_ in enumerate_instances(TINY)]
    second = [name for name, *_ in enumerate_instances(TINY)]
    assert first == second
    keys = _keys(SMALL)
    assert len(keys) == len(set(keys))


def test_pinned_counts():
    # regression values recorded on the first run of the enumerator
    assert len(_keys(SMALL)) == 572
    assert len(_keys(TINY)) == 94


def test_contains_fix3_without_fixture_list():
    keys = set(_keys(SMALL))
    assert _semantic_key(*fixture("FIX3")) in keys


def test_contains_fix2_at_default_bounds():
    params = InstanceParams(include_fixtures=False, include_fincof=False)
    target = _semantic_key(*fixture("FIX2"))
    assert any(_semantic_key(s, c, f) == target for _, s, c, f in enumerate_instances(params))


def test_fixtures_come_first():
    names = [name for name, *_ in enumerate_instances(InstanceParams(max_points=1, include_fincof=True))]
    assert names[:6] == ["FIX1", "FIX2", "FIX3", "FIX4", "FIX5", "FIX6"]


def test_bound_overflow():
    with pytest.raises(CapExceeded):
        InstanceParams(max_points=5)
    with pytest.raises(CapExceeded):
        list(enumerate_instances(InstanceParams(cap=50)))


def test_unknown_suite_and_claim():
    with pytest.raises(HarnessError):
        run_suite("S99", TINY)
    with pytest.raises(HarnessError):
        search_counterexample("C9", TINY)


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_on_small_bounds(suite):
    if suite == "S10":
        params = InstanceParams(max_points=2, weights=(0, 1), values=(0, 1), include_fincof=False)
    else:
        params = TINY
    report = run_suite(suite, params)
    assert report.passed, report.to_record()
    assert report.checked + report.skipped > 0


def test_suite_s10_has_coarsenings_and_products():
    report = run_suite("S10", InstanceParams(max_points=2, weights=(0, 1), values=(0, 1),
                                             include_fincof=False))
    assert report.notes.get("strict coarsenings", 0) > 0
    assert report.notes.get("products", 0) > 0


def test_descriptor_replays_single_instance():
    s, c, f = fixture("FIX2")
    from chargemeas.harness import describe
    s2, c2, f2 = parse_instance(describe(s, c, f))
    report = check_instance("S1", "FIX2", s2, c2, f2)
    assert report.checked == 1 and not report.violations


def test_checker_memoises():
    s, c, f = fixture("FIX2")
    check = Checker()
    check("t2", s, c, f)
    check("t2", s, c, f)
    assert len(check.produced) == 1


def test_real_only_suite_skips_metric_codomains():
    s = FiniteExplicit(["a"], [], {"a": 1})
    metric = FiniteMetric(("p", "q"), [[0, 1], [1, 0]])
    report = check_instance("S8", "x", s, metric, TableFunc(s, metric, {"a": "p"}))
    assert report.skipped == 1 and report.checked == 0
    line = RationalLine()
    assert check_instance("S8", "y", s, line, TableFunc(s, line, {"a": Fraction(1)})).checked == 1


@pytest.mark.parametrize("claim", sorted(CLAIMS))
def test_pinned_counterexamples(claim):
    res = search_counterexample(claim, InstanceParams(max_points=2))
    assert res.witness == CLAIMS[claim].expected
    assert res.confirmed


def test_search_exhausts_without_fixtures():
    res = search_counterexample("C3", InstanceParams(max_points=1, include_fixtures=False, include_fincof=False))
    assert res.witness is None and not res.confirmed
    assert res.searched > 0
