"""Amalgamation in hereditary graph classes and enumeration of minimal amalgamation failures."""
import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

from relcomp import configurator
from relcomp.core import Signature, Structure, induced_substructure, require_graph
from relcomp.errors import InvalidStructureError, InvariantViolation, NotAGraphError, PreconditionError
from relcomp.generators import enumerate_graphs
from relcomp.labeling import canonical_form
from relcomp.morphisms import ClassSpec, find_embedding, is_embedding, is_member
from relcomp.utils import NodeBudget

logger = logging.getLogger(__name__)

TRIPLE_SIGNATURE = Signature((2, 1, 1, 1), ("edge", "core", "left", "right"))


@dataclass(frozen=True)
class AmalgamInstance:
    """Embeddings alpha: C -> A and beta: C -> B, each given as the list of images of C's vertices."""

    a: Structure
    b: Structure
    c: Structure
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if not is_embedding(dict(enumerate(self.alpha)), self.c, self.a):
            raise InvalidStructureError("alpha is not an embedding of C into A")
        if not is_embedding(dict(enumerate(self.beta)), self.c, self.b):
            raise InvalidStructureError("beta is not an embedding of C into B")

    @classmethod
    def over_prefix(cls, a: Structure, b: Structure, core_size: int) -> "AmalgamInstance":
        """Instance where C is induced on the first `core_size` vertices of both A and B."""
        c, _ = induced_substructure(a, range(core_size))
        return cls(a, b, c, tuple(range(core_size)), tuple(range(core_size)))


@dataclass(frozen=True)
class Amalgam:
    d: Structure
    gamma: tuple[int, ...]
    delta: tuple[int, ...]


@dataclass(frozen=True)
class Failure:
    instance: AmalgamInstance
    minimal: bool = True


def _require_graph_spec(spec: ClassSpec) -> None:
    if spec.sig.arities != (2,):
        raise NotAGraphError("amalgamation is implemented for graph classes only")


def amalgamate(inst: AmalgamInstance, spec: ClassSpec, limit: int | None = None) -> Amalgam | None:
    """First amalgam of the instance inside the class, or None when there is none.

    Identifications of B's free vertices with A's free vertices are tried by increasing size, starting from
    none; the remaining cross pairs are decided row by row with every partial result checked for membership.
    """
    _require_graph_spec(spec)
    for s in (inst.a, inst.b, inst.c):
        require_graph(s)
    if not all(is_member(spec, s, limit=limit) for s in (inst.a, inst.b, inst.c)):
        raise PreconditionError("A, B and C must belong to the class")
    budget = NodeBudget("amalgamation search", configurator.limit("search_nodes", limit))
    a_free = [x for x in range(inst.a.n) if x not in inst.alpha]
    b_free = [y for y in range(inst.b.n) if y not in inst.beta]
    forced = dict(zip(inst.beta, inst.alpha))
    for size in range(min(len(a_free), len(b_free)) + 1):
        for chosen in itertools.combinations(b_free, size):
            for targets in itertools.permutations(a_free, size):
                delta = dict(forced)
                delta.update(zip(chosen, targets))
                found = _complete(inst, spec, delta, b_free, budget, limit)
                if found is not None:
                    return found
    return None


def _complete(
    inst: AmalgamInstance, spec: ClassSpec, delta: dict[int, int], b_free: list[int], budget: NodeBudget, limit: int | None
) -> Amalgam | None:
    a, b = inst.a, inst.b
    fresh = [y for y in b_free if y not in delta]
    for j, y in enumerate(fresh):
        delta[y] = a.n + j
    size = a.n + len(fresh)
    for y1, y2 in itertools.combinations(range(b.n), 2):
        if delta[y1] < a.n and delta[y2] < a.n and b.holds(0, (y1, y2)) != a.holds(0, (delta[y1], delta[y2])):
            return None
    edges = set(a.edges()) | {(delta[y1], delta[y2]) for y1, y2 in b.edges()}
    identified = set(delta.values())
    rows = [x for x in range(a.n) if x not in identified]
    new_vertices = list(range(a.n, size))

    def place(i: int, current: set[tuple[int, int]]) -> Structure | None:
        budget.tick()
        graph = Structure.graph(size, current)
        placed = [v for v in range(size) if v not in rows[i:]]
        if not is_member(spec, induced_substructure(graph, placed)[0], limit=limit):
            return None
        if i == len(rows):
            return graph
        for mask in range(1 << len(new_vertices)):
            row = {(rows[i], v) for j, v in enumerate(new_vertices) if mask >> j & 1}
            found = place(i + 1, current | row)
            if found is not None:
                return found
        return None

    d = place(0, edges)
    if d is None:
        return None
    amalgam = Amalgam(d, tuple(range(a.n)), tuple(delta[y] for y in range(b.n)))
    if not (
        is_embedding(dict(enumerate(amalgam.gamma)), a, d) and is_embedding(dict(enumerate(amalgam.delta)), b, d)
    ):
        raise InvariantViolation("Amalgam maps are not embeddings")
    return amalgam


def _triple_structure(inst: AmalgamInstance, swap: bool = False) -> Structure:
    """C, A-only and B-only vertices in one structure, the three parts marked by unary relations."""
    c_size = inst.c.n
    a_map = {x: i for i, x in enumerate(inst.alpha)}
    for x in range(inst.a.n):
        if x not in a_map:
            a_map[x] = len(a_map)
    b_map = {y: i for i, y in enumerate(inst.beta)}
    for y in range(inst.b.n):
        if y not in b_map:
            b_map[y] = len(a_map) + len(b_map) - c_size
    n = inst.a.n + inst.b.n - c_size
    edges = [(a_map[u], a_map[v]) for u, v in inst.a.rels[0]] + [(b_map[u], b_map[v]) for u, v in inst.b.rels[0]]
    left = [(v,) for v in range(c_size, inst.a.n)]
    right = [(v,) for v in range(inst.a.n, n)]
    if swap:
        left, right = right, left
    return Structure(n, TRIPLE_SIGNATURE, (edges, [(v,) for v in range(c_size)], left, right))


def _triple_code(inst: AmalgamInstance) -> tuple:
    return min(canonical_form(_triple_structure(inst)), canonical_form(_triple_structure(inst, swap=True)))


def _extensions(c: Structure, m: int, spec: ClassSpec) -> list[Structure]:
    """Class members on c.n + 1 .. m vertices inducing C on their first c.n vertices, up to isomorphism fixing C."""
    found: dict[tuple, Structure] = {}
    base_edges = c.edges()
    for n in range(c.n + 1, m + 1):
        pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if v >= c.n]
        colors = list(range(c.n)) + [c.n] * (n - c.n)
        for mask in range(1 << len(pairs)):
            g = Structure.graph(n, base_edges + [p for i, p in enumerate(pairs) if mask >> i & 1])
            if not is_member(spec, g):
                continue
            code = canonical_form(g, colors)
            if code not in found:
                found[code] = g
    return [found[code] for code in sorted(found)]


def _is_reducible(smaller: AmalgamInstance, larger: AmalgamInstance) -> bool:
    target = _triple_structure(larger)
    return any(find_embedding(_triple_structure(smaller, swap), target) is not None for swap in (False, True))


def minimal_failures(spec: ClassSpec, m: int, limit: int | None = None) -> list[Failure]:
    """Every amalgamation failure with |A|, |B| <= m up to isomorphism, flagged minimal when no smaller one embeds."""
    _require_graph_spec(spec)
    cap = configurator.limit("amalgam_max_size")
    if not 1 <= m <= cap:
        raise PreconditionError(f"Failure enumeration needs 1 <= m <= {cap}, got {m}")
    seen: set[tuple] = set()
    failing: list[tuple[tuple, AmalgamInstance]] = []
    for c_size in range(m):
        for c in enumerate_graphs(c_size):
            if not is_member(spec, c):
                continue
            extensions = _extensions(c, m, spec)
            for i, j in itertools.combinations_with_replacement(range(len(extensions)), 2):
                inst = AmalgamInstance.over_prefix(extensions[i], extensions[j], c_size)
                code = _triple_code(inst)
                if code in seen:
                    continue
                seen.add(code)
                if amalgamate(inst, spec, limit=limit) is None:
                    failing.append((code, inst))
    failing.sort(key=lambda item: (item[1].c.n, item[1].a.n + item[1].b.n, item[0]))
    failures = []
    for code, inst in failing:
        smaller = [other for other_code, other in failing if other_code != code]
        failures.append(Failure(inst, not any(_is_reducible(other, inst) for other in smaller)))
    logger.info("%d failures, %d minimal", len(failures), sum(f.minimal for f in failures))
    return failures


def has_amalgamation_property(spec: ClassSpec, m: int, limit: int | None = None) -> tuple[bool, Failure | None]:
    """Whether no failure exists up to size m, with the first failure as counterexample."""
    failures = minimal_failures(spec, m, limit=limit)
    return not failures, (failures[0] if failures else None)


def failure_bound(failures: Sequence[Failure]) -> int:
    """Largest |C| over the minimal failures, 0 when there are none.

    When the minimal failures of an age are all known, this bounds the relational and lift complexity of the
    universal structure of that age.
    """
    return max((f.instance.c.n for f in failures if f.minimal), default=0)
