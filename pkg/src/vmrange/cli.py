"""Command-line front end.

Every subcommand prints a machine-readable JSON report to stdout: the
command, the echoed inputs, a list of named verdicts with witnesses, and a
timing field.  Re-running with identical inputs yields identical reports
apart from timing.  Exit status: 0 on success, 1 when a verification fails,
2 on malformed input or I/O problems.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .fixtures import named_fixture_specs, triple_family, uniform_two_action_table
from .geometry import Polygon2D
from .measure import (
    SpecFormatError,
    SubsetWitness,
    load_spec,
    loads_json_exact,
    measure_of,
    spec_to_json,
    total_measure,
)
from .partition import (
    PartitionWitness,
    TargetFamily,
    check_necessary_condition,
    load_family,
    load_table,
    partition_feasible,
    purify,
)
from .ranges import is_extreme_point, range_contains, zonogon_vertices
from .rational import RatVector, format_rational
from .subrange import (
    ThreeCellWitness,
    qset_contains,
    qset_polygon,
    subrange_contains,
)
from .svg import render_figure
from .verify import DEFAULT_SEED, run_battery

OK, VERIFY_FAILED, INPUT_ERROR = 0, 1, 2


def _vector(text: str, dim: int | None = None) -> RatVector:
    try:
        return RatVector.parse(text, dim)
    except (TypeError, ValueError) as exc:
        raise SpecFormatError("vector %r: %s" % (text, exc)) from None


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, inputs: dict, verdicts: list, started: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "verdicts": verdicts,
        "timing_ms": int((time.perf_counter() - started) * 1000),
    }


def _witness_json(witness) -> object:
    return witness.to_json() if witness is not None else None


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args) -> int:
    started = time.perf_counter()
    battery = run_battery(args.seed)
    for claim in battery.claims:
        status = "PASS" if claim.passed else "FAIL"
        line = "%s %s" % (status, claim.name)
        if claim.detail:
            line += " (%s)" % claim.detail
        print(line, file=sys.stderr)
    verdicts = [
        {"name": c.name, "value": c.passed, "detail": c.detail}
        for c in battery.claims
    ]
    report = _report("verify", {"seed": args.seed}, verdicts, started)
    report["passed"] = battery.passed
    _emit(report, args.out)
    return OK if battery.passed else VERIFY_FAILED


def _cmd_range_contains(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    q = _vector(args.q, spec.dimension)
    witness = range_contains(spec, q)
    verdicts = [
        {
            "name": "in_range",
            "value": witness is not None,
            "witness": _witness_json(witness),
            "flags": [],
        }
    ]
    _emit(_report("range-contains", {"spec": args.spec, "q": args.q}, verdicts, started), args.out)
    return OK


def _cmd_subrange_contains(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    p = _vector(args.p, spec.dimension)
    q = _vector(args.q, spec.dimension)
    result = subrange_contains(spec, p, q)
    verdicts = [
        {
            "name": "in_subrange",
            "value": result.witness is not None,
            "witness": _witness_json(result.witness),
            "flags": list(result.flags),
        }
    ]
    _emit(
        _report(
            "subrange-contains",
            {"spec": args.spec, "p": args.p, "q": args.q},
            verdicts,
            started,
        ),
        args.out,
    )
    return OK


def _cmd_qset_contains(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    p = _vector(args.p, spec.dimension)
    q = _vector(args.q, spec.dimension)
    result = qset_contains(spec, p, q)
    verdicts = [
        {
            "name": "in_qset",
            "value": result.in_qset,
            "witness": _witness_json(result.witness_q),
            "witness_shifted": _witness_json(result.witness_shifted),
            "flags": [],
        }
    ]
    _emit(
        _report(
            "qset-contains", {"spec": args.spec, "p": args.p, "q": args.q}, verdicts, started
        ),
        args.out,
    )
    return OK


def _cmd_extreme(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    q = _vector(args.q, spec.dimension)
    report = is_extreme_point(spec, q)
    verdicts = [
        {"name": "is_extreme", "value": report.is_extreme, "detail": report.reason}
    ]
    _emit(_report("extreme", {"spec": args.spec, "q": args.q}, verdicts, started), args.out)
    return OK


def _cmd_partition_check(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    family = load_family(args.targets)
    cond = check_necessary_condition(spec, family)
    verdicts = [
        {
            "name": "necessary_condition",
            "value": cond.holds,
            "total_matches": cond.total_matches,
            "failures": [
                {"labels": list(labels), "sum": vec.to_json()}
                for labels, vec in cond.failures
            ],
        }
    ]
    _emit(
        _report(
            "partition-check", {"spec": args.spec, "targets": args.targets}, verdicts, started
        ),
        args.out,
    )
    return OK


def _cmd_partition_solve(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    family = load_family(args.targets)
    witness = partition_feasible(spec, family)
    verdicts = [
        {
            "name": "partition_exists",
            "value": witness is not None,
            "witness": _witness_json(witness),
        }
    ]
    _emit(
        _report(
            "partition-solve", {"spec": args.spec, "targets": args.targets}, verdicts, started
        ),
        args.out,
    )
    return OK


def _cmd_purify(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    table = load_table(args.table)
    try:
        result = purify(spec, table)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return INPUT_ERROR
    verdicts = [
        {
            "name": "purified",
            "value": True,
            "targets": result.targets.to_json(),
            "witness": result.witness.to_json(),
        }
    ]
    _emit(_report("purify", {"spec": args.spec, "table": args.table}, verdicts, started), args.out)
    return OK


def _cmd_vertices2d(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    zone = zonogon_vertices(spec)
    verdicts = [{"name": "range_vertices", "value": len(zone.vertices), "vertices": zone.to_json()}]
    inputs = {"spec": args.spec}
    if args.p:
        p = _vector(args.p, spec.dimension)
        poly = qset_polygon(spec, p)
        verdicts.append(
            {
                "name": "qset_vertices",
                "value": len(poly.vertices),
                "vertices": poly.to_json(),
            }
        )
        inputs["p"] = args.p
    _emit(_report("vertices2d", inputs, verdicts, started), args.out)
    return OK


def _cmd_emit_svg(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    zone = zonogon_vertices(spec)
    polygons = [(zone, "range")]
    inputs = {"spec": args.spec, "svg": args.svg}
    if args.p:
        p = _vector(args.p, spec.dimension)
        polygons.append((qset_polygon(spec, p), "shift-intersection"))
        inputs["p"] = args.p
    points = []
    for item in args.point or []:
        label, _, coords = item.partition("=")
        if not coords:
            label, coords = "", item
        points.append((_vector(coords, spec.dimension), label))
    if args.point:
        inputs["points"] = list(args.point)
    svg = render_figure(polygons, points, title=args.title or "")
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(svg)
    verdicts = [{"name": "svg_written", "value": args.svg, "polygons": len(polygons)}]
    _emit(_report("emit-svg", inputs, verdicts, started), args.out)
    return OK


def _cmd_verify_witness(args) -> int:
    started = time.perf_counter()
    spec = load_spec(args.spec)
    with open(args.witness, "r", encoding="utf-8") as fh:
        try:
            data = loads_json_exact(fh.read())
        except json.JSONDecodeError as exc:
            raise SpecFormatError("%s: %s" % (args.witness, exc)) from None
    if not isinstance(data, dict):
        raise SpecFormatError("witness file: expected an object")
    if "witness" in data and isinstance(data["witness"], dict):
        data = data["witness"]  # allow pasting a whole verdict entry
    if args.kind == "range":
        witness = SubsetWitness.from_json(data)
        q = _vector(args.q, spec.dimension)
        witness.validate_for(spec)
        verified = measure_of(spec, witness) == q
    elif args.kind == "subrange":
        witness = ThreeCellWitness.from_json(data)
        p = _vector(args.p, spec.dimension)
        q = _vector(args.q, spec.dimension)
        verified = witness.verify(spec, p, q)
    else:
        witness = PartitionWitness.from_json(data)
        family = load_family(args.targets)
        verified = witness.verify(spec, family)
    verdicts = [{"name": "witness_verified", "value": verified}]
    inputs = {"spec": args.spec, "kind": args.kind, "witness": args.witness}
    for name in ("p", "q", "targets"):
        value = getattr(args, name, None)
        if value:
            inputs[name] = value
    _emit(_report("verify-witness", inputs, verdicts, started), args.out)
    return OK if verified else VERIFY_FAILED


def _cmd_fixtures(args) -> int:
    import os

    started = time.perf_counter()
    os.makedirs(args.out_dir, exist_ok=True)
    written = []

    def write(name: str, payload: dict) -> None:
        path = os.path.join(args.out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(path)

    for name, spec in named_fixture_specs().items():
        write("%s.json" % name, spec_to_json(spec))
    write("triple_family.json", triple_family().to_json())
    write("uniform_table.json", uniform_two_action_table().to_json())
    verdicts = [{"name": "files_written", "value": sorted(written)}]
    _emit(_report("fixtures", {"out_dir": args.out_dir}, verdicts, started), args.out)
    return OK


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vmrange",
        description="Exact range, subrange and partition computations for "
        "finite nonnegative vector measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write the JSON report to this file instead of stdout")
        return p

    p = add("verify", _cmd_verify, "run the built-in verification battery")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("range-contains", _cmd_range_contains, "is q a value of some subset?")
    p.add_argument("--spec", required=True)
    p.add_argument("--q", required=True)

    p = add(
        "subrange-contains",
        _cmd_subrange_contains,
        "is q a value of some subset of a set with measure p?",
    )
    p.add_argument("--spec", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)

    p = add(
        "qset-contains",
        _cmd_qset_contains,
        "is q in the range intersected with its shift by -(total - p)?",
    )
    p.add_argument("--spec", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)

    p = add("extreme", _cmd_extreme, "is q an extreme point of the range?")
    p.add_argument("--spec", required=True)
    p.add_argument("--q", required=True)

    p = add("partition-check", _cmd_partition_check, "check the partition necessary condition")
    p.add_argument("--spec", required=True)
    p.add_argument("--targets", required=True)

    p = add("partition-solve", _cmd_partition_solve, "find an exact partition witness")
    p.add_argument("--spec", required=True)
    p.add_argument("--targets", required=True)

    p = add("purify", _cmd_purify, "purify a generator-constant transition probability")
    p.add_argument("--spec", required=True)
    p.add_argument("--table", required=True)

    p = add("vertices2d", _cmd_vertices2d, "vertices of the 2-D range polygon")
    p.add_argument("--spec", required=True)
    p.add_argument("--p")

    p = add("emit-svg", _cmd_emit_svg, "render the 2-D range (and shift-intersection) to SVG")
    p.add_argument("--spec", required=True)
    p.add_argument("--p")
    p.add_argument("--point", action="append", help="label=x,y (repeatable)")
    p.add_argument("--title")
    p.add_argument("--svg", required=True, help="output SVG path")

    p = add("verify-witness", _cmd_verify_witness, "re-verify a witness from a report")
    p.add_argument("--spec", required=True)
    p.add_argument("--kind", choices=("range", "subrange", "partition"), required=True)
    p.add_argument("--witness", required=True, help="JSON file with the witness")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--targets")

    p = add("fixtures", _cmd_fixtures, "write the built-in fixture files")
    p.add_argument("--out-dir", required=True)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecFormatError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return INPUT_ERROR
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
