import math

import pytest
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyGroup

from relcomp import Lift
from relcomp.errors import InvalidStructureError, PreconditionError, SearchLimitExceeded, StructureParseError
from relcomp.generators import complete, complete_multipartite, cycle, line_graph_k33, path, petersen
from relcomp.perm import (
    PermGroup,
    automorphism_group,
    compose,
    format_permutation,
    group_elements,
    group_order,
    identity,
    inverse,
    is_k_transitive,
    orbits_on_tuples,
    parse_permutation,
    restrict,
    setwise_stabilizer,
    vertex_orbits,
)
from tests.utils import graph

RIGID = graph(6, "0-1 1-2 2-3 3-4 2-5 3-5")


def sympy_order(group: PermGroup) -> int:
    if not group.generators:
        return 1
    return SympyGroup([SympyPermutation(list(g)) for g in group.generators]).order()


@pytest.mark.parametrize(
    "structure, order",
    (
        (petersen(), 120),
        (cycle(5), 10),
        (cycle(8), 16),
        (path(4), 2),
        (complete(5), 120),
        (complete_multipartite(2, 2, 2), 48),
        (line_graph_k33(), 72),
        (RIGID, 1),
    ),
)
def test_automorphism_group_order(structure, order):
    group = automorphism_group(structure)

    assert group_order(group) == order
    assert sympy_order(group) == order


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graph_has_full_symmetric_group(n):
    assert sympy_order(automorphism_group(complete(n))) == math.factorial(n)


def test_generators_are_automorphisms():
    g = petersen()
    for p in automorphism_group(g).generators:
        assert {(p[u], p[v]) for u, v in g.rels[0]} == set(g.rels[0])


def test_rigid_graph_has_no_generators():
    assert automorphism_group(RIGID).generators == ()
    assert vertex_orbits(automorphism_group(RIGID)) == [[v] for v in range(6)]


def test_lift_colours_break_symmetry():
    lift = Lift.from_slots(cycle(5), [("red", 1, [(0,)])])

    assert group_order(automorphism_group(lift)) == 2


def test_petersen_orbits_on_pairs():
    group = automorphism_group(petersen())

    injective = orbits_on_tuples(group, 2)
    assert len(injective) == 2
    assert sorted(len(orbit) for orbit in injective.orbits) == [30, 60]
    assert all(r[0] == 0 for r in injective.representatives)
    assert len({injective.orbit_of[t] for t in petersen().rels[0]}) == 1

    assert len(orbits_on_tuples(group, 2, injective=False)) == 3
    assert len(orbits_on_tuples(group, 0)) == 1


def test_orbit_partition_covers_every_tuple():
    group = automorphism_group(path(4))
    partition = orbits_on_tuples(group, 2)

    assert len(partition.orbit_of) == 12
    assert sum(len(orbit) for orbit in partition.orbits) == 12
    assert partition.representatives == tuple(min(orbit) for orbit in partition.orbits)
    assert list(partition.representatives) == sorted(partition.representatives)


def test_orbits_on_tuples_limit():
    with pytest.raises(SearchLimitExceeded):
        orbits_on_tuples(automorphism_group(cycle(5)), 3, limit=10)
    with pytest.raises(PreconditionError):
        orbits_on_tuples(automorphism_group(cycle(5)), -1)


def test_is_k_transitive():
    assert is_k_transitive(automorphism_group(complete(4)), 4)
    assert is_k_transitive(automorphism_group(cycle(5)), 1)
    assert not is_k_transitive(automorphism_group(cycle(5)), 2)


@pytest.mark.parametrize("k", (0, 6))
def test_is_k_transitive_outside_degree(k):
    with pytest.raises(PreconditionError):
        is_k_transitive(automorphism_group(cycle(5)), k)


def test_group_elements_identity_first_and_cap():
    group = automorphism_group(cycle(4))
    elements = group_elements(group)

    assert elements[0] == identity(4)
    assert len(set(elements)) == 8
    with pytest.raises(SearchLimitExceeded):
        group_elements(automorphism_group(complete(5)), cap=10)


def test_compose_and_inverse():
    p = (1, 2, 0)
    q = (0, 2, 1)

    assert compose(p, q) == (2, 1, 0)
    assert compose(p, inverse(p)) == identity(3)


def test_restrict_and_setwise_stabilizer():
    star = graph(5, "0-1 0-2 0-3 3-4")
    stabilizer = setwise_stabilizer(star, [1, 2])

    assert group_order(restrict(stabilizer, [1, 2])) == 2
    with pytest.raises(PreconditionError):
        restrict(PermGroup(3, ((1, 2, 0),)), [0, 1])


def test_perm_group_validates_generators():
    with pytest.raises(InvalidStructureError):
        PermGroup(3, ((0, 0, 1),))


def test_parse_and_format_permutation():
    p = parse_permutation("(0 1 2)(3 4)", 5)

    assert p == (1, 2, 0, 4, 3)
    assert format_permutation(p) == "(0 1 2)(3 4)"
    assert parse_permutation("()", 3) == identity(3)
    assert format_permutation(identity(3)) == "()"
    assert parse_permutation("(0,2)", 3) == (2, 1, 0)


@pytest.mark.parametrize("text", ("(0 5)", "(0 1)(1 2)", "x(0 1)", "(0 1) y", "(a b)"))
def test_parse_permutation_rejects_bad_text(text):
    with pytest.raises(StructureParseError):
        parse_permutation(text, 5)


@pytest.mark.parametrize("structure", (petersen(), cycle(6), complete(4), line_graph_k33()))
def test_k_transitivity_is_monotone(structure):
    group = automorphism_group(structure)
    flags = [is_k_transitive(group, k) for k in range(1, 5)]

    assert flags == sorted(flags, reverse=True)
