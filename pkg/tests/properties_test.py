import pytest

from relcomp.generators import cycle, petersen
from relcomp.properties import check_graph, run_suite
from tests.utils import graph


def test_check_connected_graph():
    report = check_graph(cycle(6))

    assert (report.rc, report.lc) == (2, 1)
    assert report.ok
    assert set(report.checks) == {"complement_closed", "lift_below_relational", "upper_bounds"}


def test_check_disconnected_graph_includes_union_prediction():
    report = check_graph(graph(3, "0-1"))

    assert report.checks["disjoint_union"]
    assert report.ok


def test_check_skips_union_prediction_for_ultrahomogeneous_unions():
    assert "disjoint_union" not in check_graph(graph(4, "0-1 2-3")).checks


def test_petersen_complement_has_the_same_complexities():
    report = check_graph(petersen())

    assert (report.rc, report.lc) == (3, 1)
    assert report.checks["complement_closed"]


@pytest.mark.slow
def test_suite_up_to_five_vertices():
    reports = run_suite(5)

    assert len(reports) == 1 + 2 + 4 + 11 + 34
    assert all(r.ok for r in reports), [r.checks for r in reports if not r.ok]


@pytest.mark.slow
def test_suite_up_to_six_vertices():
    reports = run_suite(6)

    assert len(reports) == 1 + 2 + 4 + 11 + 34 + 156
    assert all(r.ok for r in reports), [r.checks for r in reports if not r.ok]
