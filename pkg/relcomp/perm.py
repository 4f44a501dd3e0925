"""Permutation groups: automorphism groups of structures and their orbits on tuples."""
import itertools
import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from relcomp import configurator
from relcomp.core import Lift, Signature, Structure, as_structure
from relcomp.errors import InvalidStructureError, PreconditionError, SearchLimitExceeded, StructureParseError
from relcomp.labeling import AutomorphismSearch, individualize, refine
from relcomp.utils import NodeBudget, UnionFind

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    return tuple(q[x] for x in p)


def inverse(p: Permutation) -> Permutation:
    result = [0] * len(p)
    for x, y in enumerate(p):
        result[y] = x
    return tuple(result)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        for g in gens:
            if sorted(g) != list(range(self.degree)):
                raise InvalidStructureError(f"{list(g)} is not a permutation of degree {self.degree}")
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class OrbitPartition:
    k: int
    injective: bool
    orbit_of: dict[tuple[int, ...], int]
    representatives: tuple[tuple[int, ...], ...]
    orbits: tuple[tuple[tuple[int, ...], ...], ...]

    def __len__(self) -> int:
        return len(self.orbits)


def automorphism_group(x: Structure | Lift, limit: int | None = None) -> PermGroup:
    """Strong generators of Aut(x), found by individualizing a base and searching each level bottom-up.

    At every level only candidates outside the orbit already generated are searched.
    """
    structure = as_structure(x)
    n = structure.n
    budget = NodeBudget("automorphism search", configurator.limit("search_nodes", limit))
    search = AutomorphismSearch(structure, budget)
    base: list[int] = []
    colorings = [refine(structure, [0] * n)]
    while len(set(colorings[-1])) < n:
        colors = colorings[-1]
        cell_color = min(c for c in set(colors) if colors.count(c) > 1)
        v = colors.index(cell_color)
        base.append(v)
        colorings.append(refine(structure, individualize(colors, v)))

    generators: list[Permutation] = []
    for level in reversed(range(len(base))):
        prefix = base[:level]
        v = base[level]
        colors = colorings[level]
        orbits = UnionFind(n)
        for g in generators:
            for y in range(n):
                orbits.union(y, g[y])
        for w in range(n):
            if w == v or colors[w] != colors[v] or orbits.find(w) == orbits.find(v):
                continue
            found = search.extend([(b, b) for b in prefix] + [(v, w)])
            if found is None:
                continue
            g = tuple(found)
            generators.append(g)
            for y in range(n):
                orbits.union(y, g[y])
    logger.debug("automorphism group of %s: base %s, %d generators", structure, base, len(generators))
    return PermGroup(n, tuple(generators))


def group_elements(group: PermGroup, cap: int | None = None) -> list[Permutation]:
    """Every element, identity first, in breadth-first discovery order over the generators."""
    cap = configurator.limit("group_order_cap", cap)
    start = identity(group.degree)
    seen = {start}
    elements = [start]
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in group.generators:
            q = compose(p, g)
            if q not in seen:
                if len(seen) >= cap:
                    raise SearchLimitExceeded("group order", cap)
                seen.add(q)
                elements.append(q)
                queue.append(q)
    return elements


def group_order(group: PermGroup, cap: int | None = None) -> int:
    return len(group_elements(group, cap))


def orbits_on_tuples(group: PermGroup, k: int, injective: bool = True, limit: int | None = None) -> OrbitPartition:
    """Orbits of the group on k-tuples, numbered in the order of their lexicographically least member."""
    if k < 0:
        raise PreconditionError(f"Tuple length must be non-negative, got {k}")
    n = group.degree
    tuple_limit = configurator.limit("tuple_limit", limit)
    count = _tuple_count(n, k, injective)
    if count > tuple_limit:
        raise SearchLimitExceeded(f"{k}-tuples on {n} vertices", tuple_limit)
    tuples = list(itertools.permutations(range(n), k) if injective else itertools.product(range(n), repeat=k))
    index = {t: i for i, t in enumerate(tuples)}
    classes = UnionFind(len(tuples))
    for g in group.generators:
        for i, t in enumerate(tuples):
            classes.union(i, index[tuple(g[x] for x in t)])
    orbits = tuple(tuple(tuples[i] for i in members) for members in classes.classes())
    orbit_of = {t: orbit_id for orbit_id, members in enumerate(orbits) for t in members}
    return OrbitPartition(k, injective, orbit_of, tuple(members[0] for members in orbits), orbits)


def _tuple_count(n: int, k: int, injective: bool) -> int:
    if not injective:
        return n**k
    count = 1
    for i in range(k):
        count *= max(n - i, 0)
    return count


def vertex_orbits(group: PermGroup) -> list[list[int]]:
    orbits = UnionFind(group.degree)
    for g in group.generators:
        for x in range(group.degree):
            orbits.union(x, g[x])
    return orbits.classes()


def is_k_transitive(group: PermGroup, k: int) -> bool:
    if not 1 <= k <= group.degree:
        raise PreconditionError(f"Transitivity degree must lie in [1, {group.degree}], got {k}")
    return len(orbits_on_tuples(group, k, injective=True)) <= 1


def restrict(group: PermGroup, points: Sequence[int]) -> PermGroup:
    """Action on an invariant point set, renumbered by sorted position."""
    chosen = sorted(set(points))
    position = {x: i for i, x in enumerate(chosen)}
    restricted = []
    for g in group.generators:
        if any(g[x] not in position for x in chosen):
            raise PreconditionError(f"Points {chosen} are not invariant under {format_permutation(g)}")
        restricted.append(tuple(position[g[x]] for x in chosen))
    return PermGroup(len(chosen), tuple(restricted))


def setwise_stabilizer(x: Structure | Lift, points: Iterable[int], limit: int | None = None) -> PermGroup:
    """Automorphisms of x mapping `points` onto itself."""
    marked = Lift.of(x)
    flat = marked.flatten()
    mark = Lift(flat, Signature((1,), ("__marked__",)), (tuple((p,) for p in sorted(set(points))),))
    return automorphism_group(mark, limit=limit)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Read cycle notation such as "(0 1 2)(3 4)"; "()" is the identity."""
    image = list(range(degree))
    stripped = text.strip()
    position = 0
    seen: set[int] = set()
    for match in _CYCLE.finditer(stripped):
        if stripped[position : match.start()].strip():
            raise StructureParseError(f"unexpected text {stripped[position:match.start()]!r}", offset=position)
        position = match.end()
        try:
            cycle = [int(token) for token in match.group(1).replace(",", " ").split()]
        except ValueError:
            raise StructureParseError(f"non-integer point in cycle {match.group(0)!r}", offset=match.start())
        for point in cycle:
            if not 0 <= point < degree or point in seen:
                raise StructureParseError(f"bad point {point} in cycle {match.group(0)!r}", offset=match.start())
            seen.add(point)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            image[a] = b
    if stripped[position:].strip():
        raise StructureParseError(f"unexpected text {stripped[position:]!r}", offset=position)
    return tuple(image)


def format_permutation(p: Permutation) -> str:
    seen: set[int] = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = p[x]
        cycles.append("(" + " ".join(str(y) for y in cycle) + ")")
    return "".join(cycles) or "()"
