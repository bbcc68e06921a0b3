import json
from fractions import Fraction as F

import pytest

from incknap.io import (InstanceFileError, parse_instance, read_instance, serialize_instance,
                        write_instance)
from incknap.model import IikInstance, MinkInstance


def test_mink_document():
    m = parse_instance('{"type":"mink","costs":[1,"3/5","0.5"],"weights":[3,2,2],"demand":4}')
    assert isinstance(m, MinkInstance)
    assert m.costs == (1, F(3, 5), F(1, 2))


def test_decreasing_capacities():
    doc = {"type": "iik", "profits": [1], "weights": [1], "capacities": [2, 1]}
    with pytest.raises(InstanceFileError, match="capacities must be nondecreasing"):
        parse_instance(doc)


def test_decimals_are_exact():
    m = parse_instance('{"type":"mink","costs":["0.1", 0.1],"weights":[1,1],"demand":1}')
    assert m.costs == (F(1, 10), F(1, 10))


@pytest.mark.parametrize("text, msg", [
    ("[1, 2]", "top level"),
    ("{", "syntax"),
    ('{"type":"tree"}', "unknown instance type"),
    ('{"type":"mink","costs":[1],"weights":[1]}', "demand"),
    ('{"type":"iik","n":2,"profits":[1],"weights":[1],"capacities":[1]}', "n is 2"),
    ('{"type":"iik","profits":[1],"weights":[1],"capacities":[1],"discounts":["1/2"]}',
     "integer"),
    ('{"type":"mink","costs":[true],"weights":[1],"demand":1}', "number"),
])
def test_errors(text, msg):
    with pytest.raises(InstanceFileError, match=msg):
        parse_instance(text)


def test_roundtrip_with_options(tmp_path):
    inst = IikInstance([1, F(3, 5)], [2, 1], [2, 3], discounts=(1, 2), multiplicities=(2, None))
    path = tmp_path / "a.json"
    write_instance(inst, path)
    assert read_instance(path) == inst
    assert serialize_instance(read_instance(path)) == path.read_text()
    doc = json.loads(path.read_text())
    assert doc["multiplicities"] == [2, None] and doc["profits"] == [1, "3/5"]


def test_canonical_text_is_stable():
    text = serialize_instance(MinkInstance([1, F(3, 5)], [3, 2], F(7, 2)))
    assert text.endswith("\n")
    assert serialize_instance(parse_instance(text)) == text
