"""Relational complexity and lift complexity, with the lifts that witness them."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from relcomp import configurator
from relcomp.core import Lift, Structure, disjoint_union, find_isomorphism, is_connected
from relcomp.errors import InvariantViolation, PreconditionError, SearchLimitExceeded
from relcomp.homogeneity import is_ultrahomogeneous
from relcomp.perm import OrbitPartition, PermGroup, automorphism_group, orbits_on_tuples

logger = logging.getLogger(__name__)


class ComplexityMode(str, Enum):
    RELATIONAL = "relational"
    LIFT = "lift"


@dataclass(frozen=True)
class ComplexityWitness:
    value: int
    lift: Lift
    mode: ComplexityMode


def _orbit_slots(partition: OrbitPartition) -> list[tuple[str, int, tuple[tuple[int, ...], ...]]]:
    return [(f"orb_{partition.k}_{i}", partition.k, members) for i, members in enumerate(partition.orbits)]


def invariant_lift(
    a: Structure, k: int, group: PermGroup | None = None, limit: int | None = None
) -> Lift:
    """Lift of `a` by every Aut(a)-orbit of injective tuples of length 1..k.

    Slots are named orb_<arity>_<index> and ordered by arity, then by the least tuple of the orbit.
    """
    if k < 0:
        raise PreconditionError(f"Lift arity must be non-negative, got {k}")
    group = group or automorphism_group(a, limit=limit)
    orbit_cap = configurator.limit("orbit_limit")
    slots = []
    for arity in range(1, min(k, a.n) + 1):
        partition = orbits_on_tuples(group, arity, injective=True)
        if len(slots) + len(partition) > orbit_cap:
            raise SearchLimitExceeded(f"orbits of {arity}-tuples", orbit_cap)
        slots.extend(_orbit_slots(partition))
    return Lift.from_slots(a, slots)


def relational_complexity(a: Structure, limit: int | None = None) -> ComplexityWitness:
    """Least k such that adding the Aut(a)-orbits of tuples of length at most k makes `a` ultrahomogeneous."""
    if a.n < 1:
        raise PreconditionError("Relational complexity needs at least one vertex")
    group = automorphism_group(a, limit=limit)
    slots: list = []
    for k in range(a.n):
        if k >= 1:
            slots.extend(_orbit_slots(orbits_on_tuples(group, k, injective=True)))
        lift = Lift.from_slots(a, slots)
        if is_ultrahomogeneous(lift, limit=limit, automorphisms=group.generators, trusted_depth=k):
            logger.info("relational complexity of %s is %d", a, k)
            return ComplexityWitness(k, lift, ComplexityMode.RELATIONAL)
    raise InvariantViolation(f"No invariant lift of arity below {a.n} is ultrahomogeneous")


def lift_complexity(a: Structure, limit: int | None = None) -> ComplexityWitness:
    """0 when `a` is already ultrahomogeneous, otherwise 1 via a distinct colour per vertex."""
    if a.n < 1:
        raise PreconditionError("Lift complexity needs at least one vertex")
    if is_ultrahomogeneous(a, limit=limit):
        return ComplexityWitness(0, Lift(a), ComplexityMode.LIFT)
    lift = Lift.from_slots(a, [(f"color_{v}", 1, [(v,)]) for v in range(a.n)])
    if not is_ultrahomogeneous(lift, limit=limit):
        raise InvariantViolation("Rigid colouring is not ultrahomogeneous")
    return ComplexityWitness(1, lift, ComplexityMode.LIFT)


def complexity(a: Structure, mode: ComplexityMode, limit: int | None = None) -> ComplexityWitness:
    if mode is ComplexityMode.RELATIONAL:
        return relational_complexity(a, limit=limit)
    return lift_complexity(a, limit=limit)


def predict_disjoint_union(parts: Sequence[Structure], mode: ComplexityMode, limit: int | None = None) -> int:
    """Complexity of the disjoint union of connected parts that is not itself ultrahomogeneous.

    Relational: the maximum over the parts, raised to 2 when two parts are isomorphic and their union needs 2.
    Lift: the maximum over the parts, raised to 1.
    """
    if len(parts) < 2:
        raise PreconditionError("Prediction needs at least two parts")
    if not all(is_connected(part) for part in parts):
        raise PreconditionError("Every part must be connected")
    union = parts[0]
    for part in parts[1:]:
        union = disjoint_union(union, part)
    if is_ultrahomogeneous(union, limit=limit):
        raise PreconditionError("The union is ultrahomogeneous")

    if mode is ComplexityMode.LIFT:
        return max([1] + [lift_complexity(part, limit=limit).value for part in parts])

    floor = 1
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if floor < 2 and find_isomorphism(parts[i], parts[j], limit=limit) is not None:
                pair = disjoint_union(parts[i], parts[j])
                if relational_complexity(pair, limit=limit).value > 1:
                    floor = 2
    return max([floor] + [relational_complexity(part, limit=limit).value for part in parts])


def verify_witness(a: Structure, witness: ComplexityWitness, limit: int | None = None) -> bool:
    """Re-check a witness: same shadow, ultrahomogeneous, arity bound, and invariance in relational mode."""
    lift = witness.lift
    if lift.shadow != a:
        return False
    if lift.max_ext_arity > witness.value:
        return False
    if not is_ultrahomogeneous(lift, limit=limit):
        return False
    if witness.mode is ComplexityMode.RELATIONAL:
        group = automorphism_group(a, limit=limit)
        for rel in lift.ext_rels:
            tuples = set(rel)
            for g in group.generators:
                if any(tuple(g[x] for x in t) not in tuples for t in rel):
                    return False
    return True


def parts_of_monadic_lift(x: Lift) -> list[list[int]]:
    """Vertex classes of a lift whose extended relations are all unary, grouped by the set of colours they carry."""
    if any(arity != 1 for arity in x.ext_sig.arities):
        raise PreconditionError("Lift has extended relations of arity above 1")
    colours: dict[tuple[int, ...], list[int]] = {}
    for v in range(x.n):
        carried = tuple(i for i, rel in enumerate(x.ext_rels) if (v,) in rel)
        colours.setdefault(carried, []).append(v)
    return sorted(colours.values())
