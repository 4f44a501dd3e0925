import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from relcomp import Signature, Structure
from relcomp.core import relabel
from relcomp.generators import cycle, petersen
from relcomp.labeling import (
    AutomorphismSearch,
    canonical_form,
    canonical_labeling,
    canonical_structure,
    refine,
    search_isomorphism,
)
from relcomp.utils import NodeBudget
from tests.utils import graph


@st.composite
def relabeled_graphs(draw, max_vertices=7):
    n = draw(st.integers(min_value=0, max_value=max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    edges = [pair for pair in pairs if draw(st.booleans())]
    perm = draw(st.permutations(list(range(n))))
    g = Structure.graph(n, edges)
    return g, relabel(g, perm)


@settings(max_examples=60, deadline=None)
@given(pair=relabeled_graphs())
def test_canonical_form_is_relabeling_invariant(pair):
    g, h = pair

    assert canonical_form(g) == canonical_form(h)
    assert canonical_structure(g) == canonical_structure(h)


@settings(max_examples=60, deadline=None)
@given(pair=relabeled_graphs())
def test_search_isomorphism_finds_a_relabeling(pair):
    g, h = pair

    found = search_isomorphism(g, h)
    assert found is not None
    assert relabel(g, found) == h


def test_refine_splits_path_by_distance_to_ends():
    colors = refine(graph(5, "0-1 1-2 2-3 3-4"), [0] * 5)

    assert colors[0] == colors[4]
    assert colors[1] == colors[3]
    assert len(set(colors)) == 3


def test_refine_keeps_regular_graph_in_one_cell():
    assert len(set(refine(petersen(), [0] * 10))) == 1


def test_canonical_form_separates_non_isomorphic_regular_graphs():
    two_triangles = graph(6, "0-1 1-2 2-0 3-4 4-5 5-3")

    assert canonical_form(two_triangles) != canonical_form(cycle(6))
    assert search_isomorphism(two_triangles, cycle(6)) is None


def test_canonical_labeling_respects_colors():
    p3 = graph(3, "0-1 1-2")

    assert canonical_form(p3, [1, 0, 0]) == canonical_form(p3, [0, 0, 1])
    assert canonical_form(p3, [1, 0, 0]) != canonical_form(p3, [0, 1, 0])


def test_canonical_labeling_is_a_bijection():
    code, labels = canonical_labeling(petersen())

    assert sorted(labels) == list(range(10))
    assert code[0] == 10


def test_search_isomorphism_with_fixed_pairs():
    p3 = graph(3, "0-1 1-2")

    assert search_isomorphism(p3, p3) == [0, 1, 2]
    assert search_isomorphism(p3, p3, [(0, 2)]) == [2, 1, 0]
    assert search_isomorphism(p3, p3, [(0, 1)]) is None


def test_canonical_form_of_non_graph_structure():
    s = Structure(3, Signature((3,)), ([(0, 1, 2)],))
    t = Structure(3, Signature((3,)), ([(2, 0, 1)],))
    u = Structure(3, Signature((1, 1)), ([(0,)], []))

    assert canonical_form(s) == canonical_form(t)
    assert canonical_form(Structure.empty(Signature((1, 1)), 3)) != canonical_form(u)


def test_automorphism_search_reuses_one_structure():
    c5 = cycle(5)
    search = AutomorphismSearch(c5, NodeBudget("test", 1000))

    rotation = search.extend([(0, 1)])
    reflection = search.extend([(0, 0), (1, 4)])

    assert rotation is not None and rotation[0] == 1
    assert reflection == [0, 4, 3, 2, 1]
    for g in (rotation, reflection):
        assert sorted(tuple(sorted((g[u], g[v]))) for u, v in c5.edges()) == c5.edges()
    assert search.extend([(0, 0), (1, 2)]) is None
    assert search.extend([(0, 1), (0, 2)]) is None
