"""Command-line front end.

Reports go to stdout (text, or JSON with --json), logs to stderr. Exit codes: 0 success, 1 failed verification or
internal invariant violation, 2 unreadable input or unmet precondition, 3 search limit exceeded.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from relcomp import configurator
from relcomp.amalgamation import failure_bound, minimal_failures
from relcomp.complexity import (
    ComplexityMode,
    ComplexityWitness,
    lift_complexity,
    relational_complexity,
    verify_witness,
)
from relcomp.core import Lift, Structure, as_structure
from relcomp.cuts import cut_types, minimal_g_separating_cuts
from relcomp.errors import (
    InvalidStructureError,
    InvariantViolation,
    NotAGraphError,
    PreconditionError,
    RelcompError,
    SearchLimitExceeded,
    SignatureMismatchError,
    StructureParseError,
)
from relcomp.formats import parse_graph6_lines, parse_structure, serialize_structure
from relcomp.generators import (
    enumerate_cographs,
    enumerate_graphs,
    enumerate_trees,
    gen,
    gen_cograph,
    gen_permutation_graph,
    named,
)
from relcomp.homogeneity import is_ultrahomogeneous, verify_report
from relcomp.homogenization import metric_lift, tree_homogenize, verify_rc_witness
from relcomp.labeling import canonical_form
from relcomp.morphisms import ClassSpec, core_of, find_homomorphism, is_core
from relcomp.perm import automorphism_group, format_permutation, group_order, orbits_on_tuples, parse_permutation
from relcomp.properties import run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3

Report = dict[str, Any]


def load_structure(argument: str) -> Structure | Lift:
    """A file path (JSON, edge list or graph6) or a structure name such as petersen, C6 or 3K2."""
    path = Path(argument)
    if path.is_file():
        return parse_structure(path.read_bytes())
    return named(argument)


def parse_class_spec(text: str) -> ClassSpec:
    """`all`, `induced:P4`, `hom:C3,C5` or `hom:@file.json`."""
    if text == "all":
        return ClassSpec.everything()
    kind, _, members = text.partition(":")
    if kind not in ("induced", "hom") or not members:
        raise StructureParseError(f"class spec must look like induced:P4 or hom:C3,C5, got {text!r}")
    forbidden = []
    for member in members.split(","):
        structure = load_structure(member[1:]) if member.startswith("@") else named(member)
        forbidden.append(as_structure(structure))
    return ClassSpec.induced(*forbidden) if kind == "induced" else ClassSpec.hom(*forbidden)


def _limit(args: argparse.Namespace) -> int | None:
    return args.limit


def _pairs(mapping: dict[int, int] | None) -> list[list[int]] | None:
    return None if mapping is None else [[v, w] for v, w in sorted(mapping.items())]


def _witness_path(args: argparse.Namespace, suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(f"{Path(args.structure).stem}.{suffix}.json")


def cmd_uh(args: argparse.Namespace) -> Report:
    x = load_structure(args.structure)
    report = is_ultrahomogeneous(x, limit=_limit(args))
    if not verify_report(x, report):
        raise InvariantViolation("Ultrahomogeneity witness failed re-verification")
    result: Report = {"ultrahomogeneous": report.verdict}
    if not report.verdict:
        assert report.witness is not None and report.obstruction is not None
        result["witness"] = [list(p) for p in report.witness.pairs]
        result["vertex"] = report.vertex
        result["obstruction"] = [list(p) for p in report.obstruction.pairs]
    return result


def _complexity(args: argparse.Namespace, mode: ComplexityMode) -> Report:
    a = as_structure(load_structure(args.structure))
    compute = relational_complexity if mode is ComplexityMode.RELATIONAL else lift_complexity
    witness = compute(a, limit=_limit(args))
    if not verify_witness(a, witness, limit=_limit(args)):
        raise InvariantViolation(f"{mode.value} complexity witness failed re-verification")
    key = "rc" if mode is ComplexityMode.RELATIONAL else "lc"
    result: Report = {key: witness.value, "extended_slots": len(witness.lift.ext_sig)}
    if not args.no_witness:
        path = _witness_path(args, f"{key}-witness")
        path.write_bytes(serialize_structure(witness.lift))
        result["witness"] = str(path)
    return result


def cmd_rc(args: argparse.Namespace) -> Report:
    return _complexity(args, ComplexityMode.RELATIONAL)


def cmd_lc(args: argparse.Namespace) -> Report:
    return _complexity(args, ComplexityMode.LIFT)


def cmd_aut(args: argparse.Namespace) -> Report:
    group = automorphism_group(load_structure(args.structure), limit=_limit(args))
    return {
        "degree": group.degree,
        "generators": [format_permutation(g) for g in group.generators],
        "order": group_order(group),
    }


def cmd_orbits(args: argparse.Namespace) -> Report:
    group = automorphism_group(load_structure(args.structure), limit=_limit(args))
    partition = orbits_on_tuples(group, args.arity, injective=not args.all_tuples)
    return {
        "arity": args.arity,
        "injective": partition.injective,
        "orbits": len(partition),
        "representatives": [list(r) for r in partition.representatives],
        "sizes": [len(o) for o in partition.orbits],
    }


def cmd_gcuts(args: argparse.Namespace) -> Report:
    x = load_structure(args.structure)
    cuts = minimal_g_separating_cuts(x, limit=_limit(args))
    types = cut_types(x, limit=_limit(args))
    max_size = max((c.size for c in cuts), default=0)
    return {
        "cuts": [list(c.cut) for c in cuts],
        "max_size": max_size,
        "types": len(types),
        "types_at_max_size": sum(1 for t in types if t.size == max_size),
        "type_representatives": [list(t.representative) for t in types],
    }


def cmd_gen(args: argparse.Namespace) -> bytes:
    if args.family == "cograph":
        if len(args.params) != 1:
            raise PreconditionError("cograph takes exactly one expression")
        structure = gen_cograph(args.params[0])
    elif args.family == "permutation":
        if not args.params:
            raise PreconditionError("permutation takes a degree followed by generators in cycle notation")
        degree = int(args.params[0])
        structure = gen_permutation_graph([parse_permutation(p, degree) for p in args.params[1:]], degree)
    else:
        try:
            params = [int(p) for p in args.params]
        except ValueError:
            raise PreconditionError(f"parameters of {args.family} must be integers")
        structure = gen(args.family, *params)
    return serialize_structure(structure, args.format)


def cmd_homogenize(args: argparse.Namespace) -> bytes:
    a = as_structure(load_structure(args.structure))
    lift = metric_lift(a) if args.method == "metric" else tree_homogenize(a)
    if not is_ultrahomogeneous(lift, limit=_limit(args)):
        raise InvariantViolation(f"{args.method} lift is not ultrahomogeneous")
    logger.info("%s lift with %d extended slots, invariant: %s", args.method, len(lift.ext_sig), verify_rc_witness(lift))
    return serialize_structure(lift)


def _triple_report(failure: Any) -> Report:
    inst = failure.instance
    return {
        "minimal": failure.minimal,
        "sizes": {"A": inst.a.n, "B": inst.b.n, "C": inst.c.n},
        "A": [list(e) for e in inst.a.edges()],
        "B": [list(e) for e in inst.b.edges()],
        "C": [list(e) for e in inst.c.edges()],
    }


def cmd_amalg(args: argparse.Namespace) -> Report:
    spec = parse_class_spec(args.class_spec)
    failures = minimal_failures(spec, args.max, limit=_limit(args))
    result: Report = {
        "class": args.class_spec,
        "max": args.max,
        "amalgamation_property": not failures,
        "failures": len(failures),
        "minimal_failures": sum(1 for f in failures if f.minimal),
        "bound": failure_bound(failures),
    }
    if args.action == "failures":
        result["details"] = [_triple_report(f) for f in failures]
    return result


def cmd_hom(args: argparse.Namespace) -> Report:
    f = as_structure(load_structure(args.source))
    a = as_structure(load_structure(args.target))
    mapping = find_homomorphism(f, a, limit=_limit(args))
    return {"homomorphism": mapping is not None, "map": _pairs(mapping)}


def cmd_core(args: argparse.Namespace) -> Report:
    a = as_structure(load_structure(args.structure))
    core = core_of(a, limit=_limit(args))
    return {"is_core": is_core(a, limit=_limit(args)), "core_vertices": core.n}


def cmd_enumerate(args: argparse.Namespace) -> Report:
    if args.trees:
        structures = enumerate_trees(args.vertices)
    elif args.cographs:
        structures = enumerate_cographs(args.vertices)
    else:
        structures = enumerate_graphs(args.vertices)
    result: Report = {
        "vertices": args.vertices,
        "count": len(structures),
        "graph6": [serialize_structure(s, "graph6").decode("ascii").strip() for s in structures],
    }
    if args.check:
        corpus = [g for g in parse_graph6_lines(Path(args.check).read_bytes()) if g.n == args.vertices]
        expected = {canonical_form(s) for s in structures}
        found = {canonical_form(g) for g in corpus}
        result["check"] = {
            "corpus_types": len(found),
            "missing_from_corpus": len(expected - found),
            "not_enumerated": len(found - expected),
        }
    return result


def cmd_props(args: argparse.Namespace) -> Report:
    reports = run_suite(args.max_vertices, limit=_limit(args))
    failed = [r for r in reports if not r.ok]
    return {
        "graphs": len(reports),
        "failed": len(failed),
        "failures": [
            {"graph6": serialize_structure(r.graph, "graph6").decode("ascii").strip(), "checks": r.checks}
            for r in failed
        ],
    }


def cmd_verify(args: argparse.Namespace) -> Report:
    witness = load_structure(args.witness)
    if not isinstance(witness, Lift):
        raise PreconditionError("witness must be a lift with extended relations")
    a = as_structure(load_structure(args.against))
    mode = ComplexityMode(args.mode)
    valid = verify_witness(a, ComplexityWitness(witness.max_ext_arity, witness, mode), limit=_limit(args))
    return {"valid": valid, "mode": mode.value, "arity": witness.max_ext_arity}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--limit", type=int, default=None, help="search node budget")
    common.add_argument("--seedless", action="store_true", help="assert deterministic execution (always true)")
    common.add_argument("--out", default=None, help="output path for witnesses and generated structures")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="relcomp", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    command("uh", cmd_uh, "ultrahomogeneity check with failure witness").add_argument("structure")
    for name, handler in (("rc", cmd_rc), ("lc", cmd_lc)):
        sub = command(name, handler, f"{name} value and witness lift")
        sub.add_argument("structure")
        sub.add_argument("--no-witness", action="store_true", help="do not write the witness file")
    command("aut", cmd_aut, "automorphism group generators and order").add_argument("structure")
    sub = command("orbits", cmd_orbits, "automorphism orbits on k-tuples")
    sub.add_argument("structure")
    sub.add_argument("--arity", type=int, required=True)
    sub.add_argument("--all-tuples", action="store_true", help="include tuples with repeated entries")
    command("gcuts", cmd_gcuts, "minimal g-separating cuts").add_argument("structure")
    sub = command("gen", cmd_gen, "generate a structure")
    sub.add_argument("family")
    sub.add_argument("params", nargs="*")
    sub.add_argument("--format", choices=("json", "edges", "graph6"), default="json")
    sub = command("homogenize", cmd_homogenize, "constructive homogenization")
    sub.add_argument("structure")
    sub.add_argument("--method", choices=("tree", "metric"), required=True)
    sub = command("amalg", cmd_amalg, "amalgamation failures of a class")
    sub.add_argument("action", choices=("failures", "check"))
    sub.add_argument("--class", dest="class_spec", required=True)
    sub.add_argument("--max", type=int, required=True)
    sub = command("hom", cmd_hom, "homomorphism search")
    sub.add_argument("source")
    sub.add_argument("target")
    command("core", cmd_core, "core test").add_argument("structure")
    sub = command("enumerate", cmd_enumerate, "isomorphism types on n vertices")
    sub.add_argument("--vertices", type=int, required=True)
    kind = sub.add_mutually_exclusive_group()
    kind.add_argument("--trees", action="store_true")
    kind.add_argument("--cographs", action="store_true")
    sub.add_argument("--check", default=None, help="graph6 corpus to compare against")
    sub = command("props", cmd_props, "complexity property suite")
    sub.add_argument("--max-vertices", type=int, default=5)
    sub = command("verify", cmd_verify, "re-verify a witness lift")
    sub.add_argument("witness")
    sub.add_argument("--against", required=True)
    sub.add_argument("--mode", choices=[m.value for m in ComplexityMode], default=ComplexityMode.RELATIONAL.value)
    return parser


def _render(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = []
    for key, value in report.items():
        if key in ("rc", "lc"):
            lines.append(f"{key} = {value}")
        elif isinstance(value, bool):
            lines.append(f"{key}: {str(value).lower()}")
        elif isinstance(value, (list, dict)):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _setup(args: argparse.Namespace) -> None:
    if configurator.Config._config is None:
        overrides = {"limits": {"search_nodes": args.limit}} if args.limit is not None else None
        configurator.Config("relcomp", configurator.RelcompSettings, "relcomp", config_overrides=overrides)
    logging_config = configurator.get_settings().logging.model_copy()
    if args.verbose:
        logging_config.min_level = "DEBUG"
    configurator.load_logging_config(logging_config, [configurator.RunContextProcessor(args.command)])


def run(argv: Sequence[str]) -> int:
    args = build_parser().parse_args(list(argv))
    _setup(args)
    try:
        outcome = args.handler(args)
    except (
        StructureParseError,
        PreconditionError,
        InvalidStructureError,
        NotAGraphError,
        SignatureMismatchError,
        OSError,
    ) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except SearchLimitExceeded as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_LIMIT
    except (InvariantViolation, RelcompError) as e:
        logger.error("internal invariant violated: %s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAILED

    if isinstance(outcome, bytes):
        if args.out:
            Path(args.out).write_bytes(outcome)
        else:
            sys.stdout.write(outcome.decode("utf-8"))
        return EXIT_OK
    sys.stdout.write(_render(outcome, args.json))
    if args.command == "verify" and not outcome["valid"]:
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
