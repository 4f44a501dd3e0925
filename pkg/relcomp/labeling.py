"""Colour refinement, isomorphism search and canonical forms.

Colours are dense ranks of invariant keys, so two structures refined from matching initial colourings get matching
colour names. Individualization puts the chosen vertex in front of the rest of its cell.
"""
import logging
from typing import Hashable, Sequence

from relcomp import configurator
from relcomp.core import Structure, disjoint_union, relabel
from relcomp.utils import NodeBudget

logger = logging.getLogger(__name__)

CanonicalCode = tuple


def _rank(keys: Sequence[Hashable]) -> list[int]:
    order = {key: i for i, key in enumerate(sorted(set(keys)))}  # type: ignore[type-var]
    return [order[key] for key in keys]


def refine(structure: Structure, colors: Sequence[int]) -> list[int]:
    """Coarsest equitable refinement of `colors` with respect to every relation of the structure."""
    current = _rank(colors)
    classes = len(set(current))
    incidence = structure.incidence
    while True:
        keys = [
            (current[v], tuple(sorted((slot, pos, tuple(current[x] for x in t)) for slot, pos, t in incidence[v])))
            for v in range(structure.n)
        ]
        refined = _rank(keys)
        refined_classes = len(set(refined))
        if refined_classes == classes:
            return refined
        current, classes = refined, refined_classes


def individualize(colors: Sequence[int], v: int) -> list[int]:
    return _rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)])


def _first_cell(colors: Sequence[int]) -> list[int]:
    sizes: dict[int, int] = {}
    for c in colors:
        sizes[c] = sizes.get(c, 0) + 1
    target = min(c for c, size in sizes.items() if size > 1)
    return [v for v, c in enumerate(colors) if c == target]


def _is_discrete(colors: Sequence[int]) -> bool:
    return len(set(colors)) == len(colors)


def search_isomorphism(
    a: Structure,
    b: Structure,
    fixed_pairs: Sequence[tuple[int, int]] = (),
    limit: int | None = None,
    budget: NodeBudget | None = None,
) -> list[int] | None:
    """An isomorphism a -> b extending `fixed_pairs`, as the list of images, or None.

    Both sides are refined jointly on their disjoint union, then individualized vertex by vertex.
    """
    a.sig.require_compatible(b.sig)
    if a.n != b.n or [len(r) for r in a.rels] != [len(r) for r in b.rels]:
        return None
    budget = budget or NodeBudget("isomorphism search", configurator.limit("search_nodes", limit))
    colors = _pin(a.n, fixed_pairs)
    if colors is None:
        return None
    return _search(disjoint_union(a, b), a.n, colors, budget)


def _pin(n: int, fixed_pairs: Sequence[tuple[int, int]]) -> list[int] | None:
    colors = [0] * (2 * n)
    for i, (x, y) in enumerate(fixed_pairs, start=1):
        if colors[x] or colors[n + y]:
            return None
        colors[x] = i
        colors[n + y] = i
    return colors


class AutomorphismSearch:
    """Repeated automorphism queries on one structure, sharing its doubled copy between queries."""

    def __init__(self, structure: Structure, budget: NodeBudget) -> None:
        self.n = structure.n
        self.union = disjoint_union(structure, structure)
        self.budget = budget

    def extend(self, fixed_pairs: Sequence[tuple[int, int]]) -> list[int] | None:
        colors = _pin(self.n, fixed_pairs)
        if colors is None:
            return None
        return _search(self.union, self.n, colors, self.budget)


def _search(union: Structure, n: int, colors: list[int], budget: NodeBudget) -> list[int] | None:
    budget.tick()
    colors = refine(union, colors)
    left: dict[int, list[int]] = {}
    right: dict[int, list[int]] = {}
    for v in range(n):
        left.setdefault(colors[v], []).append(v)
        right.setdefault(colors[n + v], []).append(v)
    if {c: len(vs) for c, vs in left.items()} != {c: len(vs) for c, vs in right.items()}:
        return None
    open_cells = [c for c, vs in left.items() if len(vs) > 1]
    if not open_cells:
        mapping = [0] * n
        for c, (x,) in left.items():
            mapping[x] = right[c][0]
        return mapping if _preserves(union, n, mapping) else None
    cell = min(open_cells)
    x = left[cell][0]
    for y in right[cell]:
        fresh = max(colors) + 1
        trial = list(colors)
        trial[x] = fresh
        trial[n + y] = fresh
        found = _search(union, n, trial, budget)
        if found is not None:
            return found
    return None


def _preserves(union: Structure, n: int, mapping: list[int]) -> bool:
    for slot, rel in enumerate(union.rels):
        target = union.rel_sets[slot]
        for t in rel:
            if t[0] >= n:
                break
            if tuple(mapping[x] + n for x in t) not in target:
                return False
    return True


def _transposition_is_automorphism(structure: Structure, u: int, v: int) -> bool:
    def swap(x: int) -> int:
        return v if x == u else u if x == v else x

    for slot, _, t in structure.incidence[u] + structure.incidence[v]:
        if tuple(swap(x) for x in t) not in structure.rel_sets[slot]:
            return False
    return True


def canonical_labeling(
    structure: Structure, colors: Sequence[int] | None = None, limit: int | None = None
) -> tuple[CanonicalCode, list[int]]:
    """Canonical code and the labeling v -> position that produces it.

    With `colors`, only colour-preserving relabelings are considered equivalent.
    """
    n = structure.n
    initial = list(colors) if colors is not None else [0] * n
    budget = NodeBudget("canonical labeling", configurator.limit("search_nodes", limit))
    twins: dict[tuple[int, int], bool] = {}
    best: list = [None, None]

    def is_twin(u: int, v: int) -> bool:
        key = (min(u, v), max(u, v))
        if key not in twins:
            twins[key] = _transposition_is_automorphism(structure, u, v)
        return twins[key]

    def visit(current: list[int]) -> None:
        budget.tick()
        current = refine(structure, current)
        if _is_discrete(current):
            code = _encode(structure, current, initial)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, current
            return
        tried: list[int] = []
        for v in _first_cell(current):
            if any(is_twin(u, v) for u in tried):
                continue
            tried.append(v)
            visit(individualize(current, v))

    visit(initial)
    return best[0], best[1]


def _encode(structure: Structure, labels: Sequence[int], initial: Sequence[int]) -> CanonicalCode:
    by_position = [0] * structure.n
    for v, position in enumerate(labels):
        by_position[position] = initial[v]
    rels = tuple(tuple(sorted(tuple(labels[x] for x in t) for t in rel)) for rel in structure.rels)
    return (structure.n, structure.sig.arities, tuple(by_position), rels)


def canonical_form(structure: Structure, colors: Sequence[int] | None = None) -> CanonicalCode:
    return canonical_labeling(structure, colors)[0]


def canonical_structure(structure: Structure) -> Structure:
    """The isomorphic copy of `structure` relabeled by its canonical labeling."""
    _, labels = canonical_labeling(structure)
    return relabel(structure, labels)
