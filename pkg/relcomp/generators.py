"""Graph families, cograph expressions, permutation-group graphs and isomorphism-type enumeration."""
import itertools
import logging
import re
from functools import lru_cache
from typing import Callable, Sequence

import networkx as nx

from relcomp import configurator
from relcomp.core import Structure, complement, disjoint_union, from_networkx, relabel
from relcomp.errors import PreconditionError, StructureParseError
from relcomp.labeling import canonical_labeling
from relcomp.perm import Permutation, PermGroup, group_elements

logger = logging.getLogger(__name__)


def complete(n: int) -> Structure:
    _require(n >= 0, f"complete graph needs n >= 0, got {n}")
    return from_networkx(nx.complete_graph(n))


def cycle(n: int) -> Structure:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return from_networkx(nx.cycle_graph(n))


def path(n: int) -> Structure:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return from_networkx(nx.path_graph(n))


def empty(n: int) -> Structure:
    _require(n >= 0, f"empty graph needs n >= 0, got {n}")
    return from_networkx(nx.empty_graph(n))


def complete_multipartite(*sizes: int) -> Structure:
    _require(all(s >= 1 for s in sizes), f"part sizes must be positive, got {list(sizes)}")
    return from_networkx(nx.complete_multipartite_graph(*sizes))


def disjoint_copies(m: int, base: Structure) -> Structure:
    _require(m >= 1, f"need at least one copy, got {m}")
    result = base
    for _ in range(m - 1):
        result = disjoint_union(result, base)
    return result


def matching(m: int) -> Structure:
    return disjoint_copies(m, complete(2))


def petersen() -> Structure:
    return kneser(5, 2)


def _colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def kneser(n: int, k: int) -> Structure:
    """k-subsets of an n-set in colex order, adjacent when disjoint."""
    _require(n >= 1 and 0 <= k <= n, f"kneser needs 0 <= k <= n, got n={n}, k={k}")
    subsets = _colex_subsets(n, k)
    return Structure.graph(
        len(subsets),
        ((i, j) for i, j in itertools.combinations(range(len(subsets)), 2) if not set(subsets[i]) & set(subsets[j])),
    )


def johnson(n: int, k: int) -> Structure:
    """k-subsets of an n-set in colex order, adjacent when they share k - 1 points."""
    _require(n >= 1 and 0 <= k <= n, f"johnson needs 0 <= k <= n, got n={n}, k={k}")
    subsets = _colex_subsets(n, k)
    return Structure.graph(
        len(subsets),
        (
            (i, j)
            for i, j in itertools.combinations(range(len(subsets)), 2)
            if len(set(subsets[i]) & set(subsets[j])) == k - 1
        ),
    )


def line_graph_k33() -> Structure:
    return from_networkx(nx.line_graph(nx.complete_bipartite_graph(3, 3)))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PreconditionError(message)


FAMILIES: dict[str, Callable[..., Structure]] = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "empty": empty,
    "complete_multipartite": complete_multipartite,
    "matching": matching,
    "petersen": petersen,
    "kneser": kneser,
    "johnson": johnson,
    "line_graph_K33": line_graph_k33,
}


def gen(family: str, *params: int) -> Structure:
    if family not in FAMILIES:
        raise PreconditionError(f"Unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    try:
        return FAMILIES[family](*params)
    except TypeError as e:
        raise PreconditionError(f"Bad parameters {list(params)} for {family}: {e}")


_NAMED = re.compile(r"^(?:(?P<copies>\d+))?(?P<kind>[KCPE])(?P<n>\d+)$")


def named(name: str) -> Structure:
    """Structures by short name: K4, C5, P3, E2, 3K2 (disjoint copies), petersen, or any family without params."""
    if name in FAMILIES:
        return gen(name)
    match = _NAMED.match(name)
    if not match:
        raise StructureParseError(f"unknown structure name {name!r}")
    base = {"K": complete, "C": cycle, "P": path, "E": empty}[match.group("kind")](int(match.group("n")))
    copies = match.group("copies")
    return disjoint_copies(int(copies), base) if copies else base


_TOKEN = re.compile(r"\s*(K1|union|complement|join|\(|\)|,)")


def gen_cograph(expr: str) -> Structure:
    """Evaluate an expression over K1, union(...), complement(...) and join(...)."""
    tokens: list[tuple[str, int]] = []
    position = 0
    while position < len(expr):
        if expr[position:].strip() == "":
            break
        match = _TOKEN.match(expr, position)
        if not match:
            raise StructureParseError(f"unexpected text {expr[position:]!r}", offset=position)
        tokens.append((match.group(1), match.start(1)))
        position = match.end()
    result, consumed = _parse_cograph(tokens, 0, expr)
    if consumed != len(tokens):
        raise StructureParseError(f"trailing input {tokens[consumed][0]!r}", offset=tokens[consumed][1])
    return result


def _parse_cograph(tokens: list[tuple[str, int]], index: int, expr: str) -> tuple[Structure, int]:
    if index >= len(tokens):
        raise StructureParseError("unexpected end of expression", offset=len(expr))
    token, offset = tokens[index]
    if token == "K1":
        return complete(1), index + 1
    if token not in ("union", "complement", "join"):
        raise StructureParseError(f"unexpected {token!r}", offset=offset)
    if index + 1 >= len(tokens) or tokens[index + 1][0] != "(":
        raise StructureParseError(f"{token} must be followed by '('", offset=offset)
    operands = []
    index += 2
    while True:
        operand, index = _parse_cograph(tokens, index, expr)
        operands.append(operand)
        if index >= len(tokens):
            raise StructureParseError("missing ')'", offset=len(expr))
        separator, offset = tokens[index]
        index += 1
        if separator == ")":
            break
        if separator != ",":
            raise StructureParseError(f"expected ',' or ')', got {separator!r}", offset=offset)
    if token == "complement":
        if len(operands) != 1:
            raise StructureParseError("complement takes exactly one operand", offset=tokens[index - 1][1])
        return complement(operands[0]), index
    if token == "join":
        operands = [complement(o) for o in operands]
    result = operands[0]
    for operand in operands[1:]:
        result = disjoint_union(result, operand)
    return (complement(result) if token == "join" else result), index


def gen_permutation_graph(generators: Sequence[Permutation], degree: int, cap: int | None = None) -> Structure:
    """Graph whose control vertices 0..degree-1 carry the permutation group generated by `generators`.

    Every group element p contributes a path of degree + 1 vertices whose i-th vertex (i < degree) is joined to
    control vertex p(i). Elements are taken in breadth-first discovery order, identity first.
    """
    group = PermGroup(degree, tuple(generators))
    elements = group_elements(group, cap)
    edges = []
    for e, p in enumerate(elements):
        start = degree + e * (degree + 1)
        edges.extend((start + a, start + a + 1) for a in range(degree))
        edges.extend((start + i, p[i]) for i in range(degree))
    return Structure.graph(degree + len(elements) * (degree + 1), edges)


def _canonical_sorted(structures: dict[tuple, Structure]) -> list[Structure]:
    return [structures[code] for code in sorted(structures)]


@lru_cache(maxsize=None)
def _graphs_on(n: int) -> tuple[Structure, ...]:
    if n == 0:
        return (empty(0),)
    found: dict[tuple, Structure] = {}
    for smaller in _graphs_on(n - 1):
        for mask in range(1 << (n - 1)):
            g = Structure.graph(n, smaller.edges() + [(v, n - 1) for v in range(n - 1) if mask >> v & 1])
            code, labels = canonical_labeling(g)
            if code not in found:
                found[code] = relabel(g, labels)
    return tuple(_canonical_sorted(found))


def enumerate_graphs(n: int, cap: int | None = None) -> list[Structure]:
    """One canonical representative per isomorphism type of graphs on n vertices."""
    cap = configurator.limit("enumerate_max_vertices", cap)
    _require(0 <= n <= cap, f"graph enumeration needs 0 <= n <= {cap}, got {n}")
    return list(_graphs_on(n))


def enumerate_graphs_exhaustive(n: int) -> list[Structure]:
    """Reference enumeration over every labeled graph; practical up to six vertices."""
    _require(0 <= n <= 6, f"exhaustive enumeration needs 0 <= n <= 6, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    found: dict[tuple, Structure] = {}
    for mask in range(1 << len(pairs)):
        g = Structure.graph(n, [pair for i, pair in enumerate(pairs) if mask >> i & 1])
        code, labels = canonical_labeling(g)
        if code not in found:
            found[code] = relabel(g, labels)
    return _canonical_sorted(found)


def enumerate_trees(n: int, cap: int | None = None) -> list[Structure]:
    cap = configurator.limit("tree_max_vertices", cap)
    _require(1 <= n <= cap, f"tree enumeration needs 1 <= n <= {cap}, got {n}")
    if n == 1:
        return [complete(1)]
    return [from_networkx(tree) for tree in nx.nonisomorphic_trees(n)]


@lru_cache(maxsize=None)
def _cographs_on(n: int) -> tuple[Structure, ...]:
    if n == 1:
        return (complete(1),)
    found: dict[tuple, Structure] = {}
    for i in range(1, n // 2 + 1):
        for a in _cographs_on(i):
            for b in _cographs_on(n - i):
                union = disjoint_union(a, b)
                for g in (union, complement(union)):
                    code, labels = canonical_labeling(g)
                    if code not in found:
                        found[code] = relabel(g, labels)
    return tuple(_canonical_sorted(found))


def enumerate_cographs(n: int, cap: int | None = None) -> list[Structure]:
    """Cographs on n vertices: each is a union of two smaller cographs or the complement of one."""
    cap = configurator.limit("enumerate_max_vertices", cap)
    _require(1 <= n <= cap, f"cograph enumeration needs 1 <= n <= {cap}, got {n}")
    return list(_cographs_on(n))
