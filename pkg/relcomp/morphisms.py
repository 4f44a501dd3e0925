"""Homomorphisms, embeddings, cores, and classes defined by forbidden structures."""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from relcomp import configurator
from relcomp.core import GRAPH_SIGNATURE, Signature, Structure, induced_substructure, relabel
from relcomp.errors import PreconditionError
from relcomp.labeling import canonical_labeling
from relcomp.perm import automorphism_group, vertex_orbits
from relcomp.utils import NodeBudget

logger = logging.getLogger(__name__)


def _search_map(source: Structure, target: Structure, injective: bool, induced: bool, limit: int | None) -> dict | None:
    """Backtracking over source vertices by descending Gaifman degree; candidates tried in ascending order."""
    source.sig.require_compatible(target.sig)
    if injective and source.n > target.n:
        return None
    budget = NodeBudget("homomorphism search", configurator.limit("search_nodes", limit))
    order = sorted(range(source.n), key=lambda v: (-len(source.adjacency[v]), v))
    mapping: dict[int, int] = {}
    inverse: dict[int, int] = {}

    def consistent(v: int, w: int) -> bool:
        for slot, _, t in source.incidence[v]:
            if all(x in mapping for x in t) and tuple(mapping[x] for x in t) not in target.rel_sets[slot]:
                return False
        if induced:
            for slot, _, t in target.incidence[w]:
                if all(y in inverse for y in t) and tuple(inverse[y] for y in t) not in source.rel_sets[slot]:
                    return False
        return True

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        budget.tick()
        v = order[depth]
        for w in range(target.n):
            if injective and w in inverse:
                continue
            mapping[v] = w
            if injective:
                inverse[w] = v
            if consistent(v, w) and extend(depth + 1):
                return True
            del mapping[v]
            if injective:
                del inverse[w]
        return False

    return dict(sorted(mapping.items())) if extend(0) else None


def find_homomorphism(f: Structure, a: Structure, limit: int | None = None) -> dict[int, int] | None:
    return _search_map(f, a, injective=False, induced=False, limit=limit)


def find_embedding(a: Structure, b: Structure, limit: int | None = None) -> dict[int, int] | None:
    """An injective map preserving and reflecting every relation, or None."""
    if a == b:
        return {v: v for v in range(a.n)}
    return _search_map(a, b, injective=True, induced=True, limit=limit)


def is_embedding(mapping: dict[int, int], a: Structure, b: Structure) -> bool:
    if sorted(mapping) != list(range(a.n)) or len(set(mapping.values())) != a.n:
        return False
    if any(not 0 <= w < b.n for w in mapping.values()):
        return False
    inverse = {w: v for v, w in mapping.items()}
    for slot in range(len(a.sig)):
        for t in a.rels[slot]:
            if tuple(mapping[x] for x in t) not in b.rel_sets[slot]:
                return False
        for t in b.rels[slot]:
            if all(y in inverse for y in t) and tuple(inverse[y] for y in t) not in a.rel_sets[slot]:
                return False
    return True


def is_core(a: Structure, limit: int | None = None) -> bool:
    """True iff no homomorphism maps `a` into a proper induced substructure of itself.

    Only A - v needs checking, for one v per vertex orbit.
    """
    for orbit in vertex_orbits(automorphism_group(a, limit=limit)):
        smaller, _ = induced_substructure(a, [u for u in range(a.n) if u != orbit[0]])
        if find_homomorphism(a, smaller, limit=limit) is not None:
            return False
    return True


def core_of(a: Structure, limit: int | None = None) -> Structure:
    """A core homomorphically equivalent to `a`, obtained by deleting retractable vertices."""
    current = a
    shrunk = True
    while shrunk:
        shrunk = False
        for v in range(current.n):
            smaller, _ = induced_substructure(current, [u for u in range(current.n) if u != v])
            if find_homomorphism(current, smaller, limit=limit) is not None:
                current, shrunk = smaller, True
                break
    return current


class ClassKind(str, Enum):
    FORBIDDEN_INDUCED = "induced"
    FORBIDDEN_HOM = "hom"


@dataclass(frozen=True)
class ClassSpec:
    kind: ClassKind
    forbidden: tuple[Structure, ...]
    sig: Signature = GRAPH_SIGNATURE
    size_cap: int | None = None

    def __post_init__(self) -> None:
        for f in self.forbidden:
            self.sig.require_compatible(f.sig)

    @classmethod
    def induced(cls, *forbidden: Structure, size_cap: int | None = None) -> "ClassSpec":
        return cls(ClassKind.FORBIDDEN_INDUCED, tuple(forbidden), _common_sig(forbidden), size_cap)

    @classmethod
    def hom(cls, *forbidden: Structure, size_cap: int | None = None) -> "ClassSpec":
        return cls(ClassKind.FORBIDDEN_HOM, tuple(forbidden), _common_sig(forbidden), size_cap)

    @classmethod
    def everything(cls, sig: Signature = GRAPH_SIGNATURE) -> "ClassSpec":
        return cls(ClassKind.FORBIDDEN_INDUCED, (), sig)


def _common_sig(forbidden: Iterable[Structure]) -> Signature:
    structures = list(forbidden)
    return structures[0].sig if structures else GRAPH_SIGNATURE


def is_member(spec: ClassSpec, a: Structure, limit: int | None = None) -> bool:
    spec.sig.require_compatible(a.sig)
    if spec.size_cap is not None and a.n > spec.size_cap:
        return False
    if spec.kind is ClassKind.FORBIDDEN_INDUCED:
        return all(find_embedding(f, a, limit=limit) is None for f in spec.forbidden)
    return all(find_homomorphism(f, a, limit=limit) is None for f in spec.forbidden)


def is_minimal_family(family: Iterable[Structure], limit: int | None = None) -> bool:
    """True iff every member is a core and no member maps homomorphically to another."""
    members = list(family)
    if not all(is_core(f, limit=limit) for f in members):
        return False
    for i, j in itertools.permutations(range(len(members)), 2):
        if find_homomorphism(members[i], members[j], limit=limit) is not None:
            return False
    return True


@dataclass(frozen=True)
class AgeSet:
    bound: int
    representatives: tuple[Structure, ...]

    def __len__(self) -> int:
        return len(self.representatives)

    def sizes(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for r in self.representatives:
            counts[r.n] = counts.get(r.n, 0) + 1
        return counts


def age(a: Structure, bound: int, limit: int | None = None) -> AgeSet:
    """Isomorphism types of induced substructures with 1..bound vertices, as canonical representatives."""
    if bound < 0:
        raise PreconditionError(f"Age bound must be non-negative, got {bound}")
    found: dict[tuple, Structure] = {}
    for size in range(1, min(bound, a.n) + 1):
        for subset in itertools.combinations(range(a.n), size):
            sub, _ = induced_substructure(a, subset)
            code, labels = canonical_labeling(sub, limit=limit)
            if code not in found:
                found[code] = relabel(sub, labels)
    return AgeSet(bound, tuple(found[code] for code in sorted(found)))
