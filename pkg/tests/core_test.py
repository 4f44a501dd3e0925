import networkx as nx
import pytest

from relcomp import GRAPH_SIGNATURE, Lift, PartialMap, Signature, Structure
from relcomp.core import (
    complement,
    connected_components,
    disjoint_union,
    find_isomorphism,
    from_networkx,
    gaifman_graph,
    induced_substructure,
    is_connected,
    is_graph_view,
    is_isomorphic,
    relabel,
    require_graph,
    to_networkx,
)
from relcomp.errors import InvalidStructureError, NotAGraphError, SignatureMismatchError
from relcomp.generators import enumerate_graphs
from tests.utils import graph


def test_structure_normalizes_relations():
    s = Structure(3, Signature((2,)), ([(2, 1), (0, 1), (2, 1)],))

    assert s.rels == (((0, 1), (2, 1)),)
    assert s.tuple_count == 2
    assert s.holds(0, (2, 1))
    assert not s.holds(0, (1, 2))


@pytest.mark.parametrize(
    "n, sig, rels",
    (
        (-1, Signature((2,)), ((),)),
        (2, Signature((2,)), ([(0, 2)],)),
        (2, Signature((2,)), ([(0,)],)),
        (2, Signature((2, 1)), ((),)),
    ),
)
def test_structure_rejects_bad_input(n, sig, rels):
    with pytest.raises(InvalidStructureError):
        Structure(n, sig, rels)


def test_signature_validation():
    with pytest.raises(InvalidStructureError):
        Signature((0,))
    with pytest.raises(InvalidStructureError):
        Signature((1, 2), ("a", "a"))
    with pytest.raises(InvalidStructureError):
        Signature((1, 2), ("a",))

    assert Signature((1, 2)).slot_names() == ("R0", "R1")
    assert Signature((1, 2)).slot_names("X") == ("X0", "X1")
    with pytest.raises(SignatureMismatchError):
        Signature((1,)).require_compatible(Signature((2,)))


def test_graph_view():
    g = graph(3, "0-1 1-2")

    assert g.sig == GRAPH_SIGNATURE
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.adjacency[1] == frozenset({0, 2})
    assert is_graph_view(g)
    assert require_graph(g) is g

    with pytest.raises(NotAGraphError):
        Structure.graph(2, [(1, 1)])


def test_require_graph_rejects_directed_and_lifts():
    directed = Structure(2, GRAPH_SIGNATURE, ([(0, 1)],))

    assert not is_graph_view(directed)
    with pytest.raises(NotAGraphError):
        require_graph(directed)
    with pytest.raises(NotAGraphError):
        require_graph(Lift(graph(2, "0-1")))
    with pytest.raises(NotAGraphError):
        require_graph(Structure.empty(Signature((1,)), 2))


def test_lift_flatten_and_names():
    base = graph(3, "0-1")
    lift = Lift.from_slots(base, [("red", 1, [(2,)]), ("far", 2, [(0, 2), (2, 0)])])

    assert lift.shadow is base
    assert lift.n == 3
    assert lift.max_ext_arity == 2
    assert lift.flatten().sig == Signature((2, 1, 2), ("R0", "red", "far"))
    assert [name for name, _, _ in lift.ext_slots()] == ["red", "far"]
    assert Lift(base).flatten() is base
    assert Lift.of(lift) is lift


def test_lift_name_clash():
    with pytest.raises(InvalidStructureError):
        Lift.from_slots(graph(2), [("R0", 1, [])])


def test_partial_map():
    p = PartialMap(((2, 0), (0, 1)))

    assert p.pairs == ((0, 1), (2, 0))
    assert p.domain == (0, 2)
    assert p.image == (1, 0)
    assert len(p.extend(1, 2)) == 3
    with pytest.raises(InvalidStructureError):
        PartialMap(((0, 1), (0, 2)))
    with pytest.raises(InvalidStructureError):
        PartialMap(((0, 1), (2, 1)))


def test_partial_isomorphism_reflects_relations():
    p3 = graph(3, "0-1 1-2")

    assert PartialMap(((0, 2), (1, 1))).is_partial_isomorphism(p3)
    # preserves the non-edge 0,2 but maps the non-adjacent pair onto an edge
    assert not PartialMap(((0, 0), (2, 1))).is_partial_isomorphism(p3)
    assert PartialMap(()).is_partial_isomorphism(p3)


def test_induced_substructure_reindexes():
    c4 = graph(4, "0-1 1-2 2-3 3-0")
    sub, old = induced_substructure(c4, [3, 0, 1])

    assert old == [0, 1, 3]
    assert sub.edges() == [(0, 1), (0, 2)]


def test_relabel_and_isomorphism():
    p4 = graph(4, "0-1 1-2 2-3")
    image = relabel(p4, [2, 0, 3, 1])

    found = find_isomorphism(p4, image)
    assert found is not None
    assert PartialMap.from_dict(found).is_partial_isomorphism(p4, image)
    assert not is_isomorphic(p4, graph(4, "0-1 1-2 2-0"))

    with pytest.raises(InvalidStructureError):
        relabel(p4, [0, 0, 1, 2])


def test_disjoint_union_and_complement():
    union = disjoint_union(graph(2, "0-1"), graph(3, "0-1 1-2"))

    assert union.edges() == [(0, 1), (2, 3), (3, 4)]
    assert connected_components(union) == [[0, 1], [2, 3, 4]]
    assert not is_connected(union)
    assert complement(graph(3, "0-1")).edges() == [(0, 2), (1, 2)]
    assert complement(complement(union)) == union


def test_is_connected_empty():
    assert not is_connected(Structure.empty())
    assert is_connected(graph(1))


def test_gaifman_graph_of_ternary_structure():
    s = Structure(4, Signature((3,)), ([(0, 1, 2)],))

    assert gaifman_graph(s).edges() == [(0, 1), (0, 2), (1, 2)]


def test_networkx_round_trip():
    petersen = from_networkx(nx.petersen_graph())

    assert petersen.n == 10
    assert len(petersen.edges()) == 15
    assert nx.is_isomorphic(to_networkx(petersen), nx.petersen_graph())


def test_complement_of_c5_is_c5():
    c5 = graph(5, "0-1 1-2 2-3 3-4 4-0")

    assert is_isomorphic(complement(c5), c5)
    assert complement(graph(3, "0-1 1-2 2-0")).edges() == []


def test_gaifman_graph_of_a_graph_is_itself():
    g = graph(5, "0-1 1-2 3-4")

    assert gaifman_graph(g) == g
    assert is_isomorphic(induced_substructure(g, range(5))[0], g)


@pytest.mark.parametrize("n", range(1, 6))
def test_find_isomorphism_is_symmetric(n):
    graphs = enumerate_graphs(n)
    shuffled = [relabel(g, list(reversed(range(n)))) for g in graphs]
    for i, g in enumerate(graphs):
        for j, h in enumerate(shuffled):
            assert (find_isomorphism(g, h) is not None) == (find_isomorphism(h, g) is not None) == (i == j)
