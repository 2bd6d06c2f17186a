import json
from fractions import Fraction
from pathlib import Path

import pytest

from tricoalg import documents
from tricoalg.documents import SCHEMAS, DocumentError, dumps, parse, print_document, to_dict
from tricoalg.examples import artinian_asymmetry, divided_power, example_4_2
from tricoalg.exactla import GF, GFElement

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = sorted((ROOT / "docs" / "golden").glob("*.json"))


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_golden_round_trip_is_byte_exact(path):
    text = path.read_text(encoding="utf-8")
    doc = parse(text)
    assert print_document(doc.value) == text


@pytest.mark.parametrize("kind", documents.KINDS)
def test_schema_files_match_module(kind):
    on_disk = json.loads((ROOT / "docs" / "schemas" / f"{kind}.schema.json").read_text())
    assert on_disk == SCHEMAS[kind]


def test_scalars():
    assert documents.parse_scalar({"num": 3, "den": 6}, documents.QQ, "/x") == Fraction(1, 2)
    assert documents.parse_scalar(4, documents.QQ, "/x") == 4
    F = GF(5)
    assert documents.parse_scalar({"mod": 5, "val": 7}, F, "/x") == F(2)
    assert documents.print_scalar(Fraction(-2, 4)) == {"num": -1, "den": 2}
    assert documents.print_scalar(GFElement(3, 5)) == {"mod": 5, "val": 3}


def test_json_error_has_line():
    with pytest.raises(DocumentError) as info:
        parse('{\n  "kind": "coalgebra",\n  oops\n}')
    assert info.value.category == "json" and info.value.line == 3


def test_float_rejected():
    d = to_dict(divided_power(1))
    text = dumps(d).replace('"num": 1', '"num": 1.0', 1)
    with pytest.raises(DocumentError) as info:
        parse(text)
    assert info.value.category == "schema"


def test_schema_error_has_path():
    d = to_dict(divided_power(1))
    del d["counit"]
    with pytest.raises(DocumentError) as info:
        documents.from_dict(d)
    assert info.value.category == "schema"


def test_unknown_kind():
    with pytest.raises(DocumentError) as info:
        documents.from_dict({"kind": "nonsense"})
    assert info.value.path == "/kind"


def test_dangling_label_is_resolution_error():
    d = to_dict(divided_power(1))
    d["delta"]["c1"][0][0] = "c9"
    with pytest.raises(DocumentError) as info:
        documents.from_dict(d)
    assert info.value.category == "resolution"
    assert info.value.path.startswith("/delta/c1")


@pytest.mark.parametrize("value", [divided_power(3), example_4_2(2).spec, example_4_2(2).data,
                                   artinian_asymmetry(), artinian_asymmetry(True)])
def test_round_trip_values(value):
    text = print_document(value)
    again = print_document(parse(text).value)
    assert again == text and text.endswith("\n")
