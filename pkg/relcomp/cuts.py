"""Minimal g-separating cuts of the Gaifman graph and their types under automorphisms."""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from relcomp import configurator
from relcomp.core import Lift, Structure, as_structure, to_networkx
from relcomp.errors import PreconditionError, SearchLimitExceeded
from relcomp.perm import automorphism_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GCut:
    cut: tuple[int, ...]
    components: tuple[tuple[int, ...], tuple[int, ...]]
    inclusion_minimal: bool = True

    @property
    def size(self) -> int:
        return len(self.cut)


@dataclass(frozen=True)
class CutClass:
    size: int
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]


def _neighbourhood(graph: nx.Graph, vertices: Iterable[int]) -> frozenset[int]:
    inside = set(vertices)
    return frozenset(y for x in inside for y in graph[x] if y not in inside)


def _separated_pair(graph: nx.Graph, cut: frozenset[int]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two components of G - cut whose neighbourhoods intersect exactly in `cut`."""
    rest = graph.subgraph(set(graph) - cut)
    components = sorted(tuple(sorted(c)) for c in nx.connected_components(rest))
    borders = [_neighbourhood(graph, c) for c in components]
    for i, j in itertools.combinations(range(len(components)), 2):
        if borders[i] & borders[j] == cut:
            return components[i], components[j]
    return None


def _as_cuts(graph: nx.Graph, candidates: Iterable[frozenset[int]]) -> list[GCut]:
    found = []
    for cut in candidates:
        pair = _separated_pair(graph, cut)
        if pair is not None:
            found.append((cut, pair))
    sets = [cut for cut, _ in found]
    return sorted(
        (
            GCut(tuple(sorted(cut)), pair, not any(other < cut for other in sets))
            for cut, pair in found
        ),
        key=lambda c: (c.size, c.cut),
    )


def minimal_g_separating_cuts(x: Structure | Lift, limit: int | None = None) -> list[GCut]:
    """Every non-empty minimal separator of the Gaifman graph.

    Candidates are generated from closed neighbourhoods and closed under S ∪ N(x) for x in S, taking the
    neighbourhoods of the resulting components; each candidate is then validated against the definition.
    """
    graph = to_networkx(x)
    separator_limit = configurator.limit("separator_limit", limit)
    seen: set[frozenset[int]] = set()
    queue: deque[frozenset[int]] = deque()

    def collect(removed: set[int]) -> None:
        for component in nx.connected_components(graph.subgraph(set(graph) - removed)):
            border = _neighbourhood(graph, component)
            if border and border not in seen:
                if len(seen) >= separator_limit:
                    raise SearchLimitExceeded("minimal separators", separator_limit)
                seen.add(border)
                queue.append(border)

    for v in sorted(graph):
        collect(set(graph[v]) | {v})
    while queue:
        separator = queue.popleft()
        for v in sorted(separator):
            collect(set(separator) | set(graph[v]))
    cuts = _as_cuts(graph, seen)
    logger.debug("%d g-cuts in %s", len(cuts), as_structure(x))
    return cuts


def exhaustive_g_separating_cuts(x: Structure | Lift, max_vertices: int | None = None) -> list[GCut]:
    """Reference enumeration over all non-empty proper vertex subsets."""
    graph = to_networkx(x)
    cap = configurator.limit("exhaustive_cut_max_vertices", max_vertices)
    if graph.number_of_nodes() > cap:
        raise PreconditionError(f"Exhaustive cut search is limited to {cap} vertices")
    vertices = sorted(graph)
    candidates = (
        frozenset(subset) for size in range(1, len(vertices)) for subset in itertools.combinations(vertices, size)
    )
    return _as_cuts(graph, candidates)


def max_gcut_size(family: Iterable[Structure | Lift], limit: int | None = None) -> int:
    members = list(family)
    if not members:
        raise PreconditionError("Family must not be empty")
    return max(max((c.size for c in minimal_g_separating_cuts(f, limit=limit)), default=0) for f in members)


def cut_types(x: Structure | Lift, limit: int | None = None) -> list[CutClass]:
    """Cut sets grouped into orbits of Aut(x), ordered by size and then by least member."""
    cuts = [frozenset(c.cut) for c in minimal_g_separating_cuts(x, limit=limit)]
    group = automorphism_group(x, limit=limit)
    remaining = set(cuts)
    classes = []
    for cut in sorted(cuts, key=lambda c: (len(c), sorted(c))):
        if cut not in remaining:
            continue
        orbit = {cut}
        queue = deque([cut])
        while queue:
            current = queue.popleft()
            for g in group.generators:
                image = frozenset(g[v] for v in current)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        remaining -= orbit
        members = tuple(sorted(tuple(sorted(m)) for m in orbit))
        classes.append(CutClass(len(cut), members[0], members))
    return classes
