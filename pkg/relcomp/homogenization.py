"""Constructive homogenizations of arity at most 2: metric lifts and the inductive tree lift."""
import logging
from typing import Sequence

import networkx as nx

from relcomp.core import Lift, Structure, induced_substructure, is_connected, require_graph, to_networkx
from relcomp.errors import PreconditionError
from relcomp.homogeneity import is_ultrahomogeneous
from relcomp.perm import automorphism_group

logger = logging.getLogger(__name__)

Slot = tuple[str, int, list[tuple[int, ...]]]


def metric_lift(g: Structure) -> Lift:
    """One symmetric binary slot dist_<d> per distance d >= 2 occurring in the connected graph g."""
    require_graph(g)
    if not is_connected(g):
        raise PreconditionError("Metric lift needs a connected graph")
    by_distance: dict[int, list[tuple[int, int]]] = {}
    for u, lengths in nx.all_pairs_shortest_path_length(to_networkx(g)):
        for v, d in lengths.items():
            if d >= 2:
                by_distance.setdefault(d, []).append((u, v))
    return Lift.from_slots(g, [(f"dist_{d}", 2, pairs) for d, pairs in sorted(by_distance.items())])


def _require_tree(t: Structure) -> None:
    require_graph(t)
    if not is_connected(t) or len(t.edges()) != t.n - 1:
        raise PreconditionError("Input is not a tree")


def tree_homogenize(t: Structure, colors: Sequence[object] | None = None) -> Lift:
    """Ultrahomogeneous lift of a vertex-coloured tree using relations of arity at most 2.

    Leaves are stripped and every remaining vertex is recoloured by its colour followed by the sorted codes of
    its leaf sons. The smaller tree is lifted recursively, and leaves are related to each other and to the
    smaller tree through the relations of that lift as seen from their fathers.
    """
    _require_tree(t)
    if colors is not None and len(colors) != t.n:
        raise PreconditionError(f"Expected {t.n} colours, got {len(colors)}")
    codes = [str(c) for c in colors] if colors is not None else ["0"] * t.n
    return Lift.from_slots(t, _tree_slots(t, codes))


def _colour_slots(n: int, codes: list[str]) -> list[Slot]:
    classes: dict[str, list[tuple[int, ...]]] = {}
    for v in range(n):
        classes.setdefault(codes[v], []).append((v,))
    return [(f"color[{code}]", 1, members) for code, members in sorted(classes.items())]


def _tree_slots(t: Structure, codes: list[str]) -> list[Slot]:
    slots = _colour_slots(t.n, codes)
    leaves = [v for v in range(t.n) if len(t.adjacency[v]) == 1]
    if t.n <= 2:
        return slots

    inner = [v for v in range(t.n) if v not in leaves]
    smaller, to_outer = induced_substructure(t, inner)
    father = {leaf: next(iter(t.adjacency[leaf])) for leaf in leaves}
    sons: dict[int, list[int]] = {v: [] for v in inner}
    for leaf, f in father.items():
        sons[f].append(leaf)
    smaller_codes = [
        codes[v] + "(" + ",".join(sorted(codes[s] for s in sons[v])) + ")" for v in to_outer
    ]
    inner_slots = [
        (f"t.{name}", arity, [tuple(to_outer[x] for x in tup) for tup in tuples])
        for name, arity, tuples in _tree_slots(smaller, smaller_codes)
    ]
    mirror = [(u, v) for u, v in t.rels[0] if u not in father and v not in father]
    binary = [("mirror", mirror)] + [(name, tuples) for name, arity, tuples in inner_slots if arity == 2]
    unary = [(name, {tup[0] for tup in tuples}) for name, arity, tuples in inner_slots if arity == 1]

    derived: list[Slot] = []
    for name, members in unary:
        derived.append((f"u({name})", 1, [(leaf,) for leaf in leaves if father[leaf] in members]))
        derived.append(
            (
                f"b({name})",
                2,
                [(a, b) for a in leaves for b in leaves if a != b and father[a] == father[b] and father[a] in members],
            )
        )
    for name, pairs in binary:
        related = set(pairs)
        derived.append((f"b({name})", 2, [(a, b) for a in leaves for b in leaves if (father[a], father[b]) in related]))
        derived.append((f"lb({name})", 2, [(a, y) for a in leaves for y in inner if (father[a], y) in related]))
        derived.append((f"bl({name})", 2, [(y, a) for a in leaves for y in inner if (y, father[a]) in related]))

    return [slot for slot in slots + [("mirror", 2, mirror)] + inner_slots + derived if slot[2]]


def verify_rc_witness(x: Lift) -> bool:
    """True iff x is ultrahomogeneous and every extended relation is a union of Aut(shadow)-orbits."""
    if not is_ultrahomogeneous(x):
        return False
    group = automorphism_group(x.shadow)
    for rel in x.ext_rels:
        tuples = set(rel)
        if any(tuple(g[v] for v in t) not in tuples for g in group.generators for t in rel):
            return False
    return True
