"""Finite relational structures, lifts and elementary structure algebra.

Vertices are the dense integers ``0..n-1``. Every relation is stored as a sorted tuple of tuples, so two
structures compare equal exactly when they carry the same tuples, and reports built from them are stable.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from relcomp.errors import InvalidStructureError, NotAGraphError, SignatureMismatchError

logger = logging.getLogger(__name__)

Tuple = tuple[int, ...]
Relation = tuple[Tuple, ...]


@dataclass(frozen=True)
class Signature:
    arities: tuple[int, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "arities", tuple(int(a) for a in self.arities))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(str(name) for name in self.names))
        if any(a < 1 for a in self.arities):
            raise InvalidStructureError(f"Every arity must be at least 1, got {list(self.arities)}")
        if self.names is not None:
            if len(self.names) != len(self.arities):
                raise InvalidStructureError("Slot names must match the number of slots")
            if len(set(self.names)) != len(self.names):
                raise InvalidStructureError(f"Slot names must be unique, got {list(self.names)}")

    def __len__(self) -> int:
        return len(self.arities)

    def slot_names(self, default_prefix: str = "R") -> tuple[str, ...]:
        return self.names if self.names is not None else tuple(f"{default_prefix}{i}" for i in range(len(self)))

    def compatible(self, other: "Signature") -> bool:
        return self.arities == other.arities

    def require_compatible(self, other: "Signature") -> None:
        if not self.compatible(other):
            raise SignatureMismatchError(list(self.arities), list(other.arities))


GRAPH_SIGNATURE = Signature((2,))


def _normalize_relation(n: int, arity: int, tuples: Iterable[Sequence[int]], slot: int) -> Relation:
    normalized = set()
    for raw in tuples:
        t = tuple(int(x) for x in raw)
        if len(t) != arity:
            raise InvalidStructureError(f"Slot {slot}: tuple {list(t)} has length {len(t)}, expected {arity}")
        for x in t:
            if not 0 <= x < n:
                raise InvalidStructureError(f"Slot {slot}: vertex {x} of tuple {list(t)} is outside [0, {n})")
        normalized.add(t)
    return tuple(sorted(normalized))


@dataclass(frozen=True)
class Structure:
    n: int
    sig: Signature
    rels: tuple[Relation, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidStructureError(f"Vertex count must be non-negative, got {self.n}")
        rels = tuple(self.rels)
        if len(rels) != len(self.sig):
            raise InvalidStructureError(f"Expected {len(self.sig)} relations, got {len(rels)}")
        object.__setattr__(
            self,
            "rels",
            tuple(_normalize_relation(self.n, a, r, i) for i, (a, r) in enumerate(zip(self.sig.arities, rels))),
        )

    @classmethod
    def graph(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Structure":
        """Build a GraphView from undirected edges, storing both orientations."""
        tuples = set()
        for u, v in edges:
            if u == v:
                raise NotAGraphError(f"loop at vertex {u}")
            tuples.add((u, v))
            tuples.add((v, u))
        return cls(n, GRAPH_SIGNATURE, (tuple(tuples),))

    @classmethod
    def empty(cls, sig: Signature = GRAPH_SIGNATURE, n: int = 0) -> "Structure":
        return cls(n, sig, tuple(() for _ in sig.arities))

    @cached_property
    def rel_sets(self) -> tuple[frozenset[Tuple], ...]:
        return tuple(frozenset(r) for r in self.rels)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int, Tuple], ...], ...]:
        """Per vertex, every (slot, position, tuple) with the vertex at that position."""
        incident: list[list[tuple[int, int, Tuple]]] = [[] for _ in range(self.n)]
        for slot, rel in enumerate(self.rels):
            for t in rel:
                for pos, x in enumerate(t):
                    incident[x].append((slot, pos, t))
        return tuple(tuple(entries) for entries in incident)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Gaifman neighbourhoods."""
        neighbours: list[set[int]] = [set() for _ in range(self.n)]
        for rel in self.rels:
            for t in rel:
                for x in t:
                    neighbours[x].update(t)
        for x in range(self.n):
            neighbours[x].discard(x)
        return tuple(frozenset(s) for s in neighbours)

    @property
    def tuple_count(self) -> int:
        return sum(len(r) for r in self.rels)

    def holds(self, slot: int, t: Tuple) -> bool:
        return t in self.rel_sets[slot]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges u < v of a GraphView."""
        require_graph(self)
        return [(u, v) for u, v in self.rels[0] if u < v]

    def __str__(self) -> str:
        counts = ", ".join(f"{name}:{len(r)}" for name, r in zip(self.sig.slot_names(), self.rels))
        return f"Structure(n={self.n}, {counts})"


@dataclass(frozen=True)
class Lift:
    """A structure together with extended relations; dropping them gives back the shadow."""

    base: Structure
    ext_sig: Signature = field(default_factory=lambda: Signature(()))
    ext_rels: tuple[Relation, ...] = ()

    def __post_init__(self) -> None:
        rels = tuple(self.ext_rels)
        if len(rels) != len(self.ext_sig):
            raise InvalidStructureError(f"Expected {len(self.ext_sig)} extended relations, got {len(rels)}")
        object.__setattr__(
            self,
            "ext_rels",
            tuple(
                _normalize_relation(self.base.n, a, r, len(self.base.sig) + i)
                for i, (a, r) in enumerate(zip(self.ext_sig.arities, rels))
            ),
        )
        names = self.base.sig.slot_names() + self.ext_sig.slot_names("X")
        if len(set(names)) != len(names):
            raise InvalidStructureError("Extended slot names clash with base slot names")

    @classmethod
    def of(cls, structure: "Structure | Lift") -> "Lift":
        return structure if isinstance(structure, Lift) else cls(structure)

    @classmethod
    def from_slots(cls, base: Structure, slots: Sequence[tuple[str, int, Iterable[Sequence[int]]]]) -> "Lift":
        """Build a lift from (name, arity, tuples) triples."""
        sig = Signature(tuple(a for _, a, _ in slots), tuple(name for name, _, _ in slots))
        return cls(base, sig, tuple(tuple(tuple(t) for t in tuples) for _, _, tuples in slots))

    @property
    def shadow(self) -> Structure:
        return self.base

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def max_ext_arity(self) -> int:
        return max(self.ext_sig.arities, default=0)

    @cached_property
    def flat(self) -> Structure:
        sig = Signature(
            self.base.sig.arities + self.ext_sig.arities,
            self.base.sig.slot_names() + self.ext_sig.slot_names("X"),
        )
        return Structure(self.base.n, sig, self.base.rels + self.ext_rels)

    def flatten(self) -> Structure:
        return self.flat if len(self.ext_sig) else self.base

    def ext_slots(self) -> list[tuple[str, int, Relation]]:
        return list(zip(self.ext_sig.slot_names("X"), self.ext_sig.arities, self.ext_rels))


def as_structure(x: "Structure | Lift") -> Structure:
    return x.flatten() if isinstance(x, Lift) else x


@dataclass(frozen=True)
class PartialMap:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(a), int(b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        sources = [a for a, _ in pairs]
        targets = [b for _, b in pairs]
        if len(set(sources)) != len(sources):
            raise InvalidStructureError("Partial map is not functional")
        if len(set(targets)) != len(targets):
            raise InvalidStructureError("Partial map is not injective")

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "PartialMap":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.pairs)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.pairs)

    def extend(self, v: int, w: int) -> "PartialMap":
        return PartialMap(self.pairs + ((v, w),))

    def is_partial_isomorphism(self, a: "Structure | Lift", b: "Structure | Lift | None" = None) -> bool:
        """True iff the map preserves and reflects every relation between the substructures it induces."""
        source = as_structure(a)
        target = as_structure(b) if b is not None else source
        source.sig.require_compatible(target.sig)
        mapping = self.as_dict()
        inverse = {w: v for v, w in mapping.items()}
        if any(not 0 <= v < source.n for v in mapping) or any(not 0 <= w < target.n for w in inverse):
            return False
        for slot in range(len(source.sig)):
            for t in source.rels[slot]:
                if all(x in mapping for x in t) and tuple(mapping[x] for x in t) not in target.rel_sets[slot]:
                    return False
            for t in target.rels[slot]:
                if all(x in inverse for x in t) and tuple(inverse[x] for x in t) not in source.rel_sets[slot]:
                    return False
        return True

    def __len__(self) -> int:
        return len(self.pairs)


def is_graph_view(a: Structure) -> bool:
    if a.sig.arities != (2,):
        return False
    edges = a.rel_sets[0]
    return all(u != v and (v, u) in edges for u, v in edges)


def require_graph(a: "Structure | Lift") -> Structure:
    if isinstance(a, Lift):
        raise NotAGraphError("lifts are not graphs")
    if a.sig.arities != (2,):
        raise NotAGraphError(f"expected a single binary slot, got arities {list(a.sig.arities)}")
    for u, v in a.rels[0]:
        if u == v:
            raise NotAGraphError(f"loop at vertex {u}")
        if (v, u) not in a.rel_sets[0]:
            raise NotAGraphError(f"edge ({u}, {v}) is missing its reverse orientation")
    return a


def induced_substructure(a: Structure, vertices: Iterable[int]) -> tuple[Structure, list[int]]:
    """Substructure induced on `vertices`, re-indexed by sorted order, and the new-to-old index mapping."""
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < a.n:
            raise InvalidStructureError(f"Vertex {v} is outside [0, {a.n})")
    index = {v: i for i, v in enumerate(chosen)}
    rels = tuple(tuple(tuple(index[x] for x in t) for t in rel if all(x in index for x in t)) for rel in a.rels)
    return Structure(len(chosen), a.sig, rels), chosen


def relabel(a: Structure, perm: Sequence[int]) -> Structure:
    """Image of `a` under the vertex bijection v -> perm[v]."""
    if sorted(perm) != list(range(a.n)):
        raise InvalidStructureError("Relabeling must be a permutation of the vertices")
    return Structure(a.n, a.sig, tuple(tuple(tuple(perm[x] for x in t) for t in rel) for rel in a.rels))


def disjoint_union(a: Structure, b: Structure) -> Structure:
    a.sig.require_compatible(b.sig)
    shift = a.n
    rels = tuple(ra + tuple(tuple(x + shift for x in t) for t in rb) for ra, rb in zip(a.rels, b.rels))
    return Structure(a.n + b.n, a.sig, rels)


def complement(g: Structure) -> Structure:
    require_graph(g)
    edges = g.rel_sets[0]
    flipped = ((u, v) for u in range(g.n) for v in range(g.n) if u != v and (u, v) not in edges)
    return Structure(g.n, g.sig, (tuple(flipped),))


def gaifman_graph(a: "Structure | Lift") -> Structure:
    structure = as_structure(a)
    return Structure.graph(structure.n, ((u, v) for u in range(structure.n) for v in structure.adjacency[u] if u < v))


def to_networkx(a: "Structure | Lift") -> nx.Graph:
    """Gaifman graph as a networkx graph on the nodes 0..n-1."""
    structure = as_structure(a)
    graph = nx.Graph()
    graph.add_nodes_from(range(structure.n))
    graph.add_edges_from((u, v) for u in range(structure.n) for v in structure.adjacency[u] if u < v)
    return graph


def from_networkx(graph: nx.Graph) -> Structure:
    """GraphView of a networkx graph, vertices numbered in sorted node order."""
    relabeled = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    return Structure.graph(relabeled.number_of_nodes(), relabeled.edges())


def connected_components(a: "Structure | Lift") -> list[list[int]]:
    return sorted(sorted(component) for component in nx.connected_components(to_networkx(a)))


def is_connected(a: "Structure | Lift") -> bool:
    return as_structure(a).n > 0 and len(connected_components(a)) == 1


def find_isomorphism(a: Structure, b: Structure, limit: int | None = None) -> dict[int, int] | None:
    """A bijection preserving and reflecting every relation, or None."""
    from relcomp.labeling import search_isomorphism

    a.sig.require_compatible(b.sig)
    found = search_isomorphism(a, b, (), limit=limit)
    return None if found is None else dict(enumerate(found))


def is_isomorphic(a: Structure, b: Structure, limit: int | None = None) -> bool:
    return find_isomorphism(a, b, limit=limit) is not None
