import json

import pytest

from relcomp import Lift, Signature, Structure
from relcomp.errors import NotAGraphError, StructureParseError
from relcomp.formats import detect_format, parse_graph6_lines, parse_structure, serialize_structure
from relcomp.generators import cycle, petersen
from tests.utils import graph


def test_json_structure():
    text = '{"vertices": 3, "signature": [2, 1], "names": ["E", "red"], "relations": [[[0, 1], [1, 0]], [[2]]]}'
    s = parse_structure(text)

    assert isinstance(s, Structure)
    assert s.sig == Signature((2, 1), ("E", "red"))
    assert s.rels == (((0, 1), (1, 0)), ((2,),))


def test_json_lift():
    document = {
        "vertices": 2,
        "signature": [2],
        "relations": [[[0, 1], [1, 0]]],
        "extended_signature": [1],
        "extended_names": ["mark"],
        "extended_relations": [[[1]]],
    }
    lift = parse_structure(json.dumps(document))

    assert isinstance(lift, Lift)
    assert lift.shadow == graph(2, "0-1")
    assert lift.ext_slots() == [("mark", 1, ((1,),))]
    assert parse_structure(serialize_structure(lift)) == lift


def test_json_serialization_is_deterministic():
    g = graph(3, "2-1 0-1")

    assert serialize_structure(g) == b'{"vertices": 3, "signature": [2], "relations": [[[0, 1], [1, 0], [1, 2], [2, 1]]]}\n'
    assert serialize_structure(parse_structure(serialize_structure(g))) == serialize_structure(g)


@pytest.mark.parametrize(
    "text, line",
    (
        ('{"vertices": 3,\n "signature": [2],\n "relations": [[[0, 3]]]}', 1),
        ('{"vertices": 3,\n "signature": [2]\n "relations": []}', 3),
        ('{"signature": [2], "relations": [[]]}', 1),
        ('[1, 2]', 1),
        ('{"vertices": true, "signature": [2], "relations": [[]]}', 1),
    ),
)
def test_json_errors(text, line):
    with pytest.raises(StructureParseError) as exception_info:
        parse_structure(text, "json")
    assert exception_info.value.line == line


def test_edge_list():
    text = "# a path\n4; 0-1 1-2\n2-3\n"

    assert parse_structure(text) == graph(4, "0-1 1-2 2-3")
    assert serialize_structure(cycle(4), "edges") == b"4; 0-1 0-3 1-2 2-3\n"
    assert parse_structure(serialize_structure(cycle(4), "edges")) == cycle(4)


@pytest.mark.parametrize(
    "text, line, offset",
    (
        ("x; 0-1", 1, 0),
        ("3 0-1", 1, 2),
        ("3;\n0-1\n1-7", 3, 0),
        ("3; 0-1 2-2", 1, 7),
        ("3; 0_1", 1, 3),
    ),
)
def test_edge_list_errors(text, line, offset):
    with pytest.raises(StructureParseError) as exception_info:
        parse_structure(text, "edges")
    assert (exception_info.value.line, exception_info.value.offset) == (line, offset)


def test_graph6():
    encoded = serialize_structure(petersen(), "graph6")

    assert parse_structure(encoded) == petersen()
    assert parse_graph6_lines(b">>graph6<<" + encoded + b"\n" + serialize_structure(cycle(5), "graph6")) == [
        petersen(),
        cycle(5),
    ]


def test_graph6_errors():
    with pytest.raises(StructureParseError) as exception_info:
        parse_graph6_lines("Bw\nC\n")
    assert exception_info.value.line == 2
    with pytest.raises(StructureParseError):
        parse_structure("Bw\nBw\n", "graph6")


def test_detect_format():
    assert detect_format('{"vertices": 0}') == "json"
    assert detect_format("# comment; with semicolon\n3; 0-1") == "edges"
    assert detect_format("Bw") == "graph6"


def test_non_graphs_only_serialize_to_json():
    unary = Structure(2, Signature((1,)), ([(0,)],))

    with pytest.raises(NotAGraphError):
        serialize_structure(unary, "edges")
    with pytest.raises(NotAGraphError):
        serialize_structure(Lift(cycle(3)), "graph6")
    with pytest.raises(StructureParseError):
        serialize_structure(cycle(3), "dot")


def test_invalid_utf8():
    with pytest.raises(StructureParseError):
        parse_structure(b"\xff\xfe")
