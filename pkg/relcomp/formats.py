"""Reading and writing structures: canonical JSON, edge lists and graph6."""
import json
import logging
import re
from typing import Any

import networkx as nx

from relcomp.core import Lift, Signature, Structure, from_networkx, require_graph, to_networkx
from relcomp.errors import InvalidStructureError, NotAGraphError, StructureParseError

logger = logging.getLogger(__name__)

FORMATS = ("json", "edges", "graph6")


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    return line, index - (text.rfind("\n", 0, index) + 1)


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise StructureParseError("input is not valid UTF-8", offset=e.start)


def detect_format(text: str) -> str:
    stripped = re.sub(r"#[^\n]*", "", text).strip()
    if stripped.startswith("{"):
        return "json"
    if ";" in stripped:
        return "edges"
    return "graph6"


def parse_structure(data: bytes | str, fmt: str | None = None) -> Structure | Lift:
    """Parse one structure; JSON documents with extended keys come back as a Lift."""
    text = _decode(data)
    fmt = fmt or detect_format(text)
    if fmt == "json":
        return _parse_json(text)
    if fmt == "edges":
        return _parse_edges(text)
    if fmt == "graph6":
        graphs = parse_graph6_lines(text)
        if len(graphs) != 1:
            raise StructureParseError(f"expected one graph6 line, got {len(graphs)}")
        return graphs[0]
    raise StructureParseError(f"unknown format {fmt!r}")


def _parse_json(text: str) -> Structure | Lift:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureParseError(e.msg, line=e.lineno, offset=e.colno - 1)
    if not isinstance(document, dict):
        raise StructureParseError("top-level value must be an object")
    for key in ("vertices", "signature", "relations"):
        if key not in document:
            raise StructureParseError(f"missing key {key!r}")
    try:
        base = Structure(
            _integer(document["vertices"], "vertices"),
            Signature(tuple(document["signature"]), _names(document.get("names"))),
            tuple(_relation(r) for r in document["relations"]),
        )
        if "extended_signature" not in document and "extended_relations" not in document:
            return base
        return Lift(
            base,
            Signature(tuple(document.get("extended_signature", [])), _names(document.get("extended_names"))),
            tuple(_relation(r) for r in document.get("extended_relations", [])),
        )
    except (InvalidStructureError, TypeError, ValueError) as e:
        raise StructureParseError(str(e))


def _integer(value: Any, key: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise StructureParseError(f"{key} must be an integer")
    return value


def _names(value: Any) -> tuple[str, ...] | None:
    return None if value is None else tuple(value)


def _relation(value: Any) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(t) for t in value)


_EDGE_TOKEN = re.compile(r"#[^\n]*|;|[^\s;#]+")


def _parse_edges(text: str) -> Structure:
    tokens = [(m.group(0), m.start()) for m in _EDGE_TOKEN.finditer(text) if not m.group(0).startswith("#")]
    if not tokens:
        raise StructureParseError("empty edge list")

    def fail(message: str, index: int) -> StructureParseError:
        line, offset = _position(text, index)
        return StructureParseError(message, line, offset)

    count, start = tokens[0]
    if not count.isdigit():
        raise fail(f"expected vertex count, got {count!r}", start)
    if len(tokens) < 2 or tokens[1][0] != ";":
        raise fail("expected ';' after the vertex count", tokens[1][1] if len(tokens) > 1 else len(text))
    n = int(count)
    edges = []
    for token, index in tokens[2:]:
        match = re.fullmatch(r"(\d+)-(\d+)", token)
        if not match:
            raise fail(f"expected an edge a-b, got {token!r}", index)
        u, v = int(match.group(1)), int(match.group(2))
        if u >= n or v >= n:
            raise fail(f"edge {token} leaves the vertex range [0, {n})", index)
        if u == v:
            raise fail(f"loop {token}", index)
        edges.append((u, v))
    return Structure.graph(n, edges)


def parse_graph6_lines(data: bytes | str) -> list[Structure]:
    """One graph per non-empty line; an optional >>graph6<< header is skipped."""
    text = _decode(data)
    graphs = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<") :]
        if not line:
            continue
        try:
            graphs.append(from_networkx(nx.from_graph6_bytes(line.encode("ascii"))))
        except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
            raise StructureParseError(str(e), line=number)
    return graphs


def _json_document(x: Structure | Lift) -> dict:
    base = x.base if isinstance(x, Lift) else x
    document: dict[str, Any] = {
        "vertices": base.n,
        "signature": list(base.sig.arities),
        "relations": [[list(t) for t in rel] for rel in base.rels],
    }
    if base.sig.names is not None:
        document["names"] = list(base.sig.names)
    if isinstance(x, Lift):
        document["extended_signature"] = list(x.ext_sig.arities)
        document["extended_relations"] = [[list(t) for t in rel] for rel in x.ext_rels]
        if x.ext_sig.names is not None:
            document["extended_names"] = list(x.ext_sig.names)
    return document


def serialize_structure(x: Structure | Lift, fmt: str = "json") -> bytes:
    """Deterministic encoding; tuples appear in sorted order."""
    if fmt == "json":
        return (json.dumps(_json_document(x), separators=(", ", ": ")) + "\n").encode("utf-8")
    if isinstance(x, Lift):
        raise NotAGraphError(f"lifts can only be written as JSON, not {fmt}")
    require_graph(x)
    if fmt == "edges":
        edges = " ".join(f"{u}-{v}" for u, v in x.edges())
        return f"{x.n}; {edges}\n".encode("utf-8")
    if fmt == "graph6":
        return nx.to_graph6_bytes(to_networkx(x), header=False)
    raise StructureParseError(f"unknown format {fmt!r}")
