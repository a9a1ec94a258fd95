from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from chargemeas.fixtures import all_instances, fix7_codomain, fixture
from chargemeas.func import TableFunc
from chargemeas.instance import InstanceError, dump_instance, parse_instance, parse_value
from chargemeas.space import FieldCapError
from chargemeas.uniform import Product, PseudometricFamily, WeakFamily

from conftest import finite_spaces

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def test_fixture_shorthand_expands():
    text = "space = FIX2\ncodomain = rational-line\n[function]\na = 0, b = 1, c = 2\n"
    assert parse_instance(text) == fixture("FIX2")


def test_affine_tail_document_is_fix4():
    text = "[space]\nkind = fincof\nwinf = 1\n[codomain]\nkind = rational-line\n[function]\ntail = affine 1 0\n"
    assert parse_instance(text) == fixture("FIX4")


def test_negative_weight_cites_line():
    text = "[space]\nkind = fincof\n\nwinf = -1\n[codomain]\nkind = rational-line\n[function]\ntail = affine 1 0\n"
    with pytest.raises(InstanceError) as exc:
        parse_instance(text)
    assert exc.value.line == 4 and "line 4" in str(exc.value)


@pytest.mark.parametrize("text, line", [
    ("[space]\nkind = finite\npoints = [a]\ncolour = red\n[codomain]\nkind = rational-line\n[function]\na = 0\n", 4),
    ("[space]\nkind = finite\npoints = [a]\n[codomain]\nkind = rational-line\n[function]\nb = 0\n", 7),
    ("[space]\nkind = finite\npoints = [a]\n[space]\nkind = finite\n", 4),
    ("[space]\nkind = finite\npoints = [a]\n[codomain]\nkind = FIX7\n[function]\na = z\n", 7),
])
def test_diagnostics_have_line_numbers(text, line):
    with pytest.raises(InstanceError) as exc:
        parse_instance(text)
    assert exc.value.line == line


def test_field_cap_propagates():
    pts = ", ".join(f"x{i}" for i in range(13))
    gens = ", ".join(f"[x{i}]" for i in range(13))
    text = f"[space]\nkind = finite\npoints = [{pts}]\ngenerators = [{gens}]\n" \
           "[codomain]\nkind = rational-line\n[function]\n" + "".join(f"x{i} = 0\n" for i in range(13))
    with pytest.raises(FieldCapError):
        parse_instance(text)


def test_parse_value():
    assert parse_value("[1/2, inf, [a, 3]]") == [Fraction(1, 2), float("inf"), ["a", 3]]


@pytest.mark.parametrize("name", [n for n, *_ in all_instances()])
def test_fixture_round_trip(name):
    inst = fixture(name)
    assert parse_instance(dump_instance(*inst)) == inst


def test_composite_codomains_round_trip():
    s = fixture("FIX2")[0]
    c = fix7_codomain()
    for cod in (Product([c, c]), WeakFamily(c.points, [{"p": 0, "q": 1, "r": 3}]),
                PseudometricFamily(c.points, [c.matrix, [[0, 0, 1], [0, 0, 1], [1, 1, 0]]])):
        pts = cod.points
        f = TableFunc(s, cod, {"a": pts[0], "b": pts[-1], "c": pts[1]})
        assert parse_instance(dump_instance(s, cod, f)) == (s, cod, f)


@given(finite_spaces(), st.data())
def test_generated_round_trip(s, data):
    c = fix7_codomain()
    f = TableFunc(s, c, {x: data.draw(st.sampled_from(c.points)) for x in s.points})
    assert parse_instance(dump_instance(s, c, f)) == (s, c, f)


@pytest.mark.parametrize("path", sorted(p for p in INSTANCES.glob("*.inst") if p.name != "bad-weight.inst"),
                         ids=lambda p: p.name)
def test_shipped_instance_files_parse(path):
    parse_instance(path.read_text())
