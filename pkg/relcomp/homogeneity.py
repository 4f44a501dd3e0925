"""Ultrahomogeneity checking with failure witnesses.

A structure is ultrahomogeneous when every isomorphism between finite substructures extends to an automorphism.
The check walks a tree of vertex tuples: at each node the vertices outside the tuple are grouped by their
one-point type over it, and each group must be a single orbit of the pointwise stabilizer of the tuple. One
representative per group is then appended, so each orbit of tuples is visited once.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

from relcomp import configurator
from relcomp.core import Lift, PartialMap, Structure, as_structure
from relcomp.errors import InvariantViolation, PreconditionError
from relcomp.labeling import AutomorphismSearch
from relcomp.utils import NodeBudget, UnionFind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomogeneityReport:
    verdict: bool
    witness: PartialMap | None = None
    vertex: int | None = None
    obstruction: PartialMap | None = None

    def __bool__(self) -> bool:
        return self.verdict


def _one_point_type(structure: Structure, prefix: tuple[int, ...], v: int) -> tuple:
    position = {x: i for i, x in enumerate(prefix)}
    position[v] = len(prefix)
    atoms = {(slot, tuple(position[x] for x in t)) for slot, _, t in structure.incidence[v] if all(x in position for x in t)}
    return tuple(sorted(atoms))


def is_ultrahomogeneous(
    x: Structure | Lift,
    limit: int | None = None,
    automorphisms: Sequence[Sequence[int]] = (),
    trusted_depth: int = 0,
) -> HomogeneityReport:
    """Ultrahomogeneity verdict, with a one-point extension witness on failure.

    `automorphisms` are known automorphisms of x; they and every automorphism found during the walk are applied
    before any new search. For tuples shorter than `trusted_depth` the one-point type classes are taken to be
    orbits of the pointwise stabilizer, which holds for lifts carrying every automorphism orbit of tuples up to
    that length.
    """
    structure = as_structure(x)
    budget = NodeBudget("ultrahomogeneity search", configurator.limit("search_nodes", limit))
    search = AutomorphismSearch(structure, budget)
    known = [tuple(g) for g in automorphisms]
    stack: list[tuple[int, ...]] = [()]
    while stack:
        prefix = stack.pop()
        budget.tick()
        groups: dict[tuple, list[int]] = {}
        for v in range(structure.n):
            if v not in prefix:
                groups.setdefault(_one_point_type(structure, prefix, v), []).append(v)
        classes = sorted(groups.values())
        if all(len(members) == 1 for members in classes):
            continue
        if len(prefix) >= trusted_depth:
            fixed = [(p, p) for p in prefix]
            orbits = UnionFind(structure.n)
            for g in known:
                if all(g[p] == p for p in prefix):
                    for y in range(structure.n):
                        orbits.union(y, g[y])
            for members in classes:
                rep = members[0]
                for w in members[1:]:
                    if orbits.find(rep) == orbits.find(w):
                        continue
                    found = search.extend(fixed + [(rep, w)])
                    if found is None:
                        logger.debug("no automorphism fixing %s maps %d to %d", prefix, rep, w)
                        return _failure(structure, PartialMap(tuple(fixed) + ((rep, w),)))
                    known.append(tuple(found))
                    for y in range(structure.n):
                        orbits.union(y, found[y])
        for members in reversed(classes):
            stack.append(prefix + (members[0],))
    return HomogeneityReport(True)


def _extends(structure: Structure, mapping: dict[int, int], inverse: dict[int, int], v: int, w: int) -> bool:
    """True iff mapping + {v -> w} is still a partial isomorphism."""
    mapping[v] = w
    inverse[w] = v
    try:
        for slot, _, t in structure.incidence[v]:
            if all(y in mapping for y in t) and tuple(mapping[y] for y in t) not in structure.rel_sets[slot]:
                return False
        for slot, _, t in structure.incidence[w]:
            if all(y in inverse for y in t) and tuple(inverse[y] for y in t) not in structure.rel_sets[slot]:
                return False
        return True
    finally:
        del mapping[v]
        del inverse[w]


def _failure(structure: Structure, obstruction: PartialMap) -> HomogeneityReport:
    """Extend the obstruction greedily until some vertex has no admissible image."""
    mapping = obstruction.as_dict()
    inverse = {w: v for v, w in mapping.items()}
    while len(mapping) < structure.n:
        v = min(u for u in range(structure.n) if u not in mapping)
        images = [w for w in range(structure.n) if w not in inverse and _extends(structure, mapping, inverse, v, w)]
        if not images:
            return HomogeneityReport(False, PartialMap.from_dict(mapping), v, obstruction)
        mapping[v] = images[0]
        inverse[images[0]] = v
    raise InvariantViolation(f"Obstruction {obstruction.pairs} extended to an automorphism")


def brute_force_uh(x: Structure | Lift, max_vertices: int | None = None) -> bool:
    """Reference check: compare all partial isomorphisms against the restrictions of all automorphisms."""
    structure = as_structure(x)
    cap = configurator.limit("brute_force_max_vertices", max_vertices)
    if structure.n > cap:
        raise PreconditionError(f"Brute-force check is limited to {cap} vertices, got {structure.n}")
    n = structure.n
    automorphisms = [
        p for p in itertools.permutations(range(n)) if PartialMap(tuple(enumerate(p))).is_partial_isomorphism(structure)
    ]
    restrictions = set()
    for p in automorphisms:
        for size in range(n + 1):
            for subset in itertools.combinations(range(n), size):
                restrictions.add(tuple((v, p[v]) for v in subset))
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            for images in itertools.permutations(range(n), size):
                pairs = tuple(zip(subset, images))
                if pairs in restrictions:
                    continue
                if PartialMap(pairs).is_partial_isomorphism(structure):
                    return False
    return True


def verify_report(x: Structure | Lift, report: HomogeneityReport) -> bool:
    """Re-check a negative verdict: the witness is a partial isomorphism with no admissible image for its vertex."""
    if report.verdict:
        return report.witness is None
    structure = as_structure(x)
    if report.witness is None or report.vertex is None:
        return False
    if not report.witness.is_partial_isomorphism(structure):
        return False
    mapping = report.witness.as_dict()
    if not 0 <= report.vertex < structure.n or report.vertex in mapping:
        return False
    inverse = {w: v for v, w in mapping.items()}
    return not any(
        _extends(structure, mapping, inverse, report.vertex, w) for w in range(structure.n) if w not in inverse
    )
