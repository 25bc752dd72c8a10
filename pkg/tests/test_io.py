import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from xalg import fixtures as F
from xalg.errors import SchemaError, StructureIncomplete
from xalg.functors import xmod_to_cat1
from xalg.higher import ad_square, tot_algebra
from xalg.io import dumps, load, loads, rational_to_json, structure_to_document
from xalg.operads import builtin_presentation, presentation_to_dict

LIE = builtin_presentation("lie")


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_fixture_files_roundtrip(path):
    pres, kind, s = load(path)
    assert dumps(pres, s) + "\n" == path.read_text()


def test_fixture_files_match_builders():
    assert load(FIXTURES / "fixA1.json")[2] == F.fix_a1()
    assert load(FIXTURES / "fixBAD.json")[2] == F.fix_bad()
    assert load(FIXTURES / "fixASSOC.json")[2] == F.fix_assoc()


def test_rationals():
    assert rational_to_json(Fraction(3)) == 3
    assert rational_to_json(Fraction(-1, 2)) == "-1/2"
    doc = json.loads(dumps(LIE, F.fix_a1()))
    doc["d"] = [["0"], ["2/4"]]
    assert loads(json.dumps(doc))[2].d.tolist() == [[0], [Fraction(1, 2)]]


def test_custom_presentation():
    doc = json.loads(dumps(LIE, F.aff1()))
    del doc["theory"]
    doc["presentation"] = presentation_to_dict(LIE)
    pres, kind, a = loads(json.dumps(doc))
    assert pres == LIE and a == F.aff1()


@given(st.integers(0, 2**31))
def test_random_structures_roundtrip(seed):
    rng = random.Random(seed)
    pres, cm = F.random_xmod(rng)
    for s in (cm, xmod_to_cat1(pres, cm)):
        p2, _, s2 = loads(dumps(pres, s))
        assert p2 == pres and s2 == s


def test_higher_kinds_roundtrip():
    t = ad_square(LIE, F.fix_a1())
    a = tot_algebra(LIE, t)
    for s in (t, a):
        assert loads(dumps(LIE, s))[2] == s


def mutate(doc_fn):
    doc = json.loads(dumps(LIE, F.fix_a1()))
    doc_fn(doc)
    return json.dumps(doc)


@pytest.mark.parametrize("change", [
    lambda d: d.update(schema=2),
    lambda d: d.update(kind="groupoid"),
    lambda d: d.update(theory="pre-lie"),
    lambda d: d.update(dim0=-1),
    lambda d: d.update(d=[[0]]),
    lambda d: d.update(d=[["x"], [1]]),
    lambda d: d.update(d=[[True], [1]]),
    lambda d: d["mult"].update(extra={}),
    lambda d: d["mult"]["bracket"].update({"11": []}),
    lambda d: d.pop("d"),
])
def test_schema_errors(change):
    with pytest.raises(SchemaError):
        loads(mutate(change))


def test_not_json():
    with pytest.raises(SchemaError):
        loads("{")


def test_missing_nonempty_component():
    with pytest.raises(StructureIncomplete):
        loads(mutate(lambda d: d["mult"]["bracket"].pop("10")))


def test_missing_empty_component_is_allowed():
    doc = structure_to_document(LIE, F.fix_a0())
    for key in ("10", "01"):
        doc["mult"]["bracket"].pop(key, None)
    assert loads(json.dumps(doc))[2] == F.fix_a0()
