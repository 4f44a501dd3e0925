import pytest

from relcomp import Lift, Structure
from relcomp.complexity import invariant_lift
from relcomp.core import complement, connected_components, induced_substructure, is_isomorphic, relabel
from relcomp.errors import PreconditionError, SearchLimitExceeded
from relcomp.generators import (
    complete,
    complete_multipartite,
    cycle,
    disjoint_copies,
    enumerate_graphs,
    line_graph_k33,
    path,
    petersen,
)
from relcomp.homogeneity import HomogeneityReport, brute_force_uh, is_ultrahomogeneous, verify_report
from relcomp.perm import automorphism_group


def _is_union_of_equal_cliques(g: Structure) -> bool:
    components = connected_components(g)
    sizes = {len(c) for c in components}
    if len(sizes) != 1:
        return False
    return all(len(induced_substructure(g, c)[0].edges()) == len(c) * (len(c) - 1) // 2 for c in components)


def expected_uh(g: Structure) -> bool:
    """Finite ultrahomogeneous graphs: mK_r, their complements, C5 and L(K3,3)."""
    return (
        _is_union_of_equal_cliques(g)
        or _is_union_of_equal_cliques(complement(g))
        or is_isomorphic(g, cycle(5))
        or is_isomorphic(g, line_graph_k33())
    )


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 8))
def test_classification_of_small_graphs(n):
    for g in enumerate_graphs(n):
        report = is_ultrahomogeneous(g)
        assert report.verdict == expected_uh(g), g
        assert verify_report(g, report)


@pytest.mark.parametrize("n", range(0, 6))
def test_agrees_with_brute_force(n):
    for g in enumerate_graphs(n):
        assert bool(is_ultrahomogeneous(g)) == brute_force_uh(g)


@pytest.mark.parametrize(
    "structure",
    (
        cycle(5),
        line_graph_k33(),
        complete(6),
        disjoint_copies(3, complete(3)),
        complete_multipartite(3, 3, 3),
        Structure.empty(),
        complete(1),
    ),
)
def test_known_ultrahomogeneous(structure):
    report = is_ultrahomogeneous(structure)

    assert report
    assert report == HomogeneityReport(True)


@pytest.mark.parametrize("structure", (path(3), cycle(6), petersen(), complete_multipartite(1, 2)))
def test_failure_witness(structure):
    report = is_ultrahomogeneous(structure)

    assert not report
    assert report.witness is not None
    assert report.obstruction is not None
    assert report.witness.is_partial_isomorphism(structure)
    assert set(report.obstruction.pairs) <= set(report.witness.pairs)
    assert report.vertex not in report.witness.domain
    assert verify_report(structure, report)


def test_verify_report_rejects_forged_witness():
    p3 = path(3)
    report = is_ultrahomogeneous(p3)
    forged = HomogeneityReport(False, report.witness, None, report.obstruction)

    assert not verify_report(p3, forged)
    assert not verify_report(p3, HomogeneityReport(True, report.witness))


def test_colouring_every_vertex_makes_a_graph_ultrahomogeneous():
    lift = Lift.from_slots(petersen(), [(f"c{v}", 1, [(v,)]) for v in range(10)])

    assert is_ultrahomogeneous(lift)


def test_search_limit():
    with pytest.raises(SearchLimitExceeded):
        is_ultrahomogeneous(petersen(), limit=1)


def test_brute_force_cap():
    with pytest.raises(PreconditionError):
        brute_force_uh(cycle(7))


@pytest.mark.parametrize("n", range(1, 7))
def test_verdict_survives_complement_and_relabeling(n):
    reverse = list(reversed(range(n)))
    rotate = [(v + 1) % n for v in range(n)]
    for g in enumerate_graphs(n):
        verdict = bool(is_ultrahomogeneous(g))

        assert bool(is_ultrahomogeneous(complement(g))) == verdict
        assert bool(is_ultrahomogeneous(relabel(g, reverse))) == verdict
        assert bool(is_ultrahomogeneous(relabel(g, rotate))) == verdict


@pytest.mark.parametrize("n", range(1, 6))
def test_known_automorphisms_and_trusted_depth_on_invariant_lifts(n):
    for g in enumerate_graphs(n):
        generators = automorphism_group(g).generators
        for k in range(n):
            lift = invariant_lift(g, k)
            hinted = is_ultrahomogeneous(lift, automorphisms=generators, trusted_depth=k)

            assert bool(hinted) == bool(is_ultrahomogeneous(lift)) == brute_force_uh(lift)
            assert verify_report(lift, hinted)
