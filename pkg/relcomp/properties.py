"""Property suite checking the general bounds on relational and lift complexity over a graph corpus."""
import logging
from dataclasses import dataclass, field

from relcomp.complexity import ComplexityMode, lift_complexity, predict_disjoint_union, relational_complexity
from relcomp.core import Structure, complement, connected_components, induced_substructure, require_graph
from relcomp.generators import enumerate_graphs
from relcomp.homogeneity import is_ultrahomogeneous

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PropertyReport:
    graph: Structure
    rc: int
    lc: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_graph(g: Structure, limit: int | None = None) -> PropertyReport:
    """Evaluate complement closure, lc <= rc, the general upper bounds, and disjoint-union prediction."""
    require_graph(g)
    rc = relational_complexity(g, limit=limit).value
    lc = lift_complexity(g, limit=limit).value
    co = complement(g)
    checks = {
        "complement_closed": relational_complexity(co, limit=limit).value == rc
        and lift_complexity(co, limit=limit).value == lc,
        "lift_below_relational": lc <= rc,
        "upper_bounds": lc <= 1 and rc <= max(g.n - 1, 0),
    }
    components = connected_components(g)
    if len(components) > 1 and not is_ultrahomogeneous(g, limit=limit):
        parts = [induced_substructure(g, c)[0] for c in components]
        checks["disjoint_union"] = (
            predict_disjoint_union(parts, ComplexityMode.RELATIONAL, limit=limit) == rc
            and predict_disjoint_union(parts, ComplexityMode.LIFT, limit=limit) == lc
        )
    return PropertyReport(g, rc, lc, checks)


def run_suite(max_vertices: int, limit: int | None = None) -> list[PropertyReport]:
    reports = []
    for n in range(1, max_vertices + 1):
        for g in enumerate_graphs(n):
            report = check_graph(g, limit=limit)
            if not report.ok:
                logger.warning("property check failed for %s: %s", g, report.checks)
            reports.append(report)
    return reports
