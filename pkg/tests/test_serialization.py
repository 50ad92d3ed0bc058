import json
import random

import pytest

from hodgesplit import ParseError, serialization as ser
from hodgesplit.deformation import abelian_lie, sl2
from hodgesplit.dga import gm_fixture, polynomial_truncated, sphere_cohomology
from hodgesplit.fixtures import kummer_shs, random_filtered_complex, random_shs, random_sts
from hodgesplit.splittings import shs_to_frep, shs_to_mhs
from hodgesplit.thom_whitney import interval_cosimplicial


def objects():
    rng = random.Random(3)
    s = random_shs(rng, max_dim=5, weights=(-3, 3))
    yield s
    yield shs_to_mhs(s)
    yield shs_to_frep(s)
    yield shs_to_mhs(s).W
    yield random_sts(rng)
    yield random_filtered_complex(rng, max_total=8)
    yield sphere_cohomology(2)
    yield polynomial_truncated(2, 3)
    yield gm_fixture("a+2b")
    yield sl2()
    yield interval_cosimplicial()
    yield (kummer_shs(1), kummer_shs(2))


@pytest.mark.parametrize("obj", list(objects()), ids=lambda o: type(o).__name__)
def test_round_trip(obj):
    doc = ser.dump_object(obj)
    assert doc["kind"] in ser.KINDS
    assert ser.load_object(doc) == obj
    assert ser.loads(ser.dumps(obj)) == obj


def test_dumps_is_canonical():
    text = ser.dumps(kummer_shs(1))
    assert text.endswith("\n")
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"


def test_scalar_strings():
    doc = ser.dump_object(shs_to_mhs(kummer_shs(1)))
    assert "0+1*i" in json.dumps(doc)


def test_defcone_documents():
    kind, G, g = ser.load_object({"kind": "defcone-input", "gysin": ser.dump_object(gm_fixture()),
                                  "lie": ser.dump_object(abelian_lie(1))})
    assert kind == "gysin" and G == gm_fixture() and g == abelian_lie(1)
    kind, args = ser.load_object({"kind": "defcone-explicit", "h1": 1, "h0r1": 0, "b_ww": [[["1"]]]})
    assert kind == "explicit" and args["h1"] == 1


@pytest.mark.parametrize("text", ["{", "[1, 2]", '{"kind": "nope"}', '{"kind": "mhs"}',
                                  '{"kind": "dga", "degrees": [0, 1], "products": [[0, 1]]}'])
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        ser.loads(text)


def test_json_error_reports_position():
    with pytest.raises(ParseError) as info:
        ser.loads('{\n  "kind": }')
    assert "line 2" in str(info.value)
