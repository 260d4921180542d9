import json
import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mincusco import generators as gen
from mincusco.domain import Q, SpaceX
from mincusco.games import GameKind
from mincusco.serialize import (
    ParseError,
    dump_any,
    dump_q,
    load_any,
    load_cusco,
    load_fn,
    load_game_script,
    load_nbhd,
    load_region,
    parse_text,
    read_document,
)

FIXTURES = Path(__file__).parent / "fixtures"
TYPED = [
    p
    for p in sorted(FIXTURES.glob("*.json"))
    if p.name != "malformed.json"
    and json.loads(p.read_text()).get("type")
    in ("piecewise", "cusco", "region", "tube", "nbhd")
]


@pytest.mark.parametrize("path", TYPED, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    doc = read_document(str(path))
    assert dump_any(load_any(doc)) == doc


@pytest.mark.parametrize("name", ["shrinking-8.json", "vietoris-2.transcript.json"])
def test_game_documents_load(name):
    kind, space, moves = load_game_script(read_document(str(FIXTURES / name)))
    assert isinstance(kind, GameKind) and space == SpaceX(-1, 1) and moves


def test_numbers():
    assert dump_q(Q(-3, 4)) == "-3/4" and dump_q(Q(2)) == "2"
    assert dump_q(float("inf")) == "inf"
    doc = {
        "type": "piecewise",
        "space": {"a": [-2, 2], "b": "1"},
        "vertices": [[-1, 0], ["1", "1/2"]],
    }
    f = load_fn(doc)
    assert f.space == SpaceX(-1, 1) and f(1) == Q(1, 2)


def test_piecewise_read_as_single_valued(X):
    f = load_cusco(read_document(str(FIXTURES / "identity.json")))
    assert f.lower == f.upper


def test_bare_region_is_upper_only():
    N = load_nbhd(read_document(str(FIXTURES / "band.json")))
    assert N.lowers == ()


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as err:
        read_document(str(FIXTURES / "malformed.json"))
    assert err.value.where.endswith(":4:3")


@pytest.mark.parametrize(
    "doc, where",
    [
        (
            {"type": "piecewise", "space": {"a": 0, "b": 1}, "breakpoints": ["x"]},
            "$.breakpoints[0]",
        ),
        ({"type": "cusco", "lower": {}}, "$.lower"),
        ({"type": "region", "boxes": [[0, 1, 2]]}, "$.boxes[0]"),
        ({"type": "region", "boxes": [[0, 0, 0, 1]]}, "$.boxes[0]"),
        (
            {"type": "nbhd", "upper": {"type": "region", "boxes": []}, "lowers": [1]},
            "$.lowers[0]",
        ),
        ({"type": "mystery"}, "$"),
    ],
)
def test_error_paths(doc, where):
    with pytest.raises(ParseError) as err:
        load_any(doc) if doc["type"] == "mystery" else {
            "piecewise": load_fn,
            "cusco": load_cusco,
            "region": load_region,
            "nbhd": load_nbhd,
        }[doc["type"]](doc)
    assert err.value.where == where


def test_invalid_cusco_reports_path():
    doc = read_document(str(FIXTURES / "step.json"))
    doc["lower"], doc["upper"] = doc["upper"], doc["lower"]
    with pytest.raises(ParseError) as err:
        load_cusco(doc)
    assert err.value.where == "$"


def test_parse_text():
    assert parse_text('{"a": 1}') == {"a": 1}
    with pytest.raises(ParseError):
        parse_text("{", "src")


@given(st.integers(0, 10**6))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    sp = gen.space(rng, rng.randint(0, 2))
    F = gen.cusco(rng, sp)
    for obj in (F.lower, F, gen.covering_region(rng, F)):
        doc = dump_any(obj)
        assert load_any(json.loads(json.dumps(doc))) == obj
