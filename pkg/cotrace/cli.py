"""Command-line front end.

Exit codes: 0 on success or when every law passes, 1 when a law reports a
counterexample or runs out of budget, 2 on bad input or usage, 130 when
interrupted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from cotrace.bicat import (
    Bicategory,
    Cell,
    cotrace,
    dims,
    enrichment_hom,
    extension_via_duals,
    trace,
    two_trace,
    two_trace_correspondence,
)
from cotrace.codec import InstanceFile, dump_instance, dumps, loads
from cotrace.common import (
    DEFAULT_LIMITS,
    CotraceError,
    InputError,
    Limits,
    setup_logging,
)
from cotrace.laws import (
    ALL_INSTANCES,
    LAWS,
    MUTATIONS,
    LawReport,
    SuiteConfig,
    make_bicategory,
    replay,
    run_law_suite,
)
from cotrace.prof import Profunctor
from cotrace.rel import RelCell
from cotrace.span import SpanCell

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERRUPTED = 130

# (exit code, text output, json payload)
Outcome = tuple[int, str, Any]


def parse_instance_file(path: Path) -> InstanceFile:
    """Read and validate an instance file; errors carry the file position."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), where=str(path)) from exc
    return loads(text, str(path))


def render_scalar(bicat: Bicategory, s: Cell) -> str:
    elements = bicat.scalar_elements(s)
    if bicat.tag == "rel":
        return "*" if elements else "∅"
    return str(len(elements))


def scalar_payload(bicat: Bicategory, s: Cell) -> dict[str, Any]:
    elements = list(bicat.scalar_elements(s))
    return {
        "value": render_scalar(bicat, s),
        "cardinality": len(elements),
        "elements": elements,
    }


def render_cell(cell: Cell) -> str:
    """Rel: the pairs; Span and Prof: the size of every component."""
    if isinstance(cell, RelCell):
        if not cell.pairs:
            return "∅"
        return "{" + ", ".join(f"({a},{b})" for a, b in sorted(cell.pairs)) + "}"
    if isinstance(cell, SpanCell):
        lines = [
            f"{a} {b}: {len(cell.fiber(a, b))}" for a in cell.src for b in cell.tgt
        ]
    elif isinstance(cell, Profunctor):
        lines = [f"{b} {a}: {len(xs)}" for (b, a), xs in sorted(cell.sets.items())]
    else:
        raise TypeError(f"not a 1-cell: {cell!r}")
    return "\n".join(lines) if lines else "(empty)"


def render_report(report: LawReport) -> str:
    line = (
        f"{report.law} [{report.instance}] {report.status} "
        f"({report.cases} cases, {report.mode})"
    )
    return f"{line}: {report.message}" if report.message else line


def _require_input(args: argparse.Namespace) -> InstanceFile:
    if args.input is None:
        raise InputError("--input is required", where=args.command)
    return parse_instance_file(args.input)


def _limits(args: argparse.Namespace) -> Limits:
    return Limits(enumeration_cap=args.enumeration_cap, iso_budget=args.iso_budget)


def _cell(instance: InstanceFile, name: str, option: str = "--cell") -> Cell:
    if name not in instance.cells:
        raise InputError(f"unknown cell {name!r}", where=option)
    return instance.cells[name]


def _context(args: argparse.Namespace) -> tuple[InstanceFile, Bicategory]:
    instance = _require_input(args)
    return instance, make_bicategory(instance.instance, _limits(args))


def _scalar_outcome(bicat: Bicategory, s: Cell) -> Outcome:
    return EXIT_OK, render_scalar(bicat, s), scalar_payload(bicat, s)


def cmd_trace(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    return _scalar_outcome(bicat, trace(bicat, _cell(instance, args.cell)))


def cmd_cotrace(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    return _scalar_outcome(bicat, cotrace(bicat, _cell(instance, args.cell)))


def _cell_outcome(bicat: Bicategory, instance: InstanceFile, cell: Cell) -> Outcome:
    payload = dump_instance(bicat.tag, {"result": cell}, instance.objects)
    return EXIT_OK, render_cell(cell), payload


def cmd_lift(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    f, g = (_cell(instance, name, "--cells") for name in args.cells)
    return _cell_outcome(bicat, instance, bicat.lift(f, g))


def cmd_ext(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    g, f = (_cell(instance, name, "--cells") for name in args.cells)
    return _cell_outcome(bicat, instance, extension_via_duals(bicat, g, f))


def cmd_enrich_hom(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    f, g = (_cell(instance, name, "--cells") for name in args.cells)
    return _scalar_outcome(bicat, enrichment_hom(bicat, f, g))


def cmd_dims(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    if args.object not in instance.objects:
        raise InputError(f"unknown object {args.object!r}", where="--object")
    dim, codim = dims(bicat, instance.objects[args.object])
    text = f"Dim={render_scalar(bicat, dim)}, coDim={render_scalar(bicat, codim)}"
    payload = {"dim": scalar_payload(bicat, dim), "codim": scalar_payload(bicat, codim)}
    return EXIT_OK, text, payload


def cmd_two_trace(args: argparse.Namespace) -> Outcome:
    instance, bicat = _context(args)
    f = _cell(instance, args.cell)
    cells = two_trace(bicat, f)
    payload = {
        "count": len(cells),
        "correspondence": two_trace_correspondence(bicat, f),
    }
    return EXIT_OK, str(len(cells)), payload


def cmd_check_laws(args: argparse.Namespace) -> Outcome:
    config = SuiteConfig(
        max_size=args.max_size,
        rel_max_size=args.rel_max_size,
        samples=args.samples,
        seed=args.seed,
        limits=_limits(args),
        jobs=args.jobs,
        exhaustive_cap=args.exhaustive_cap,
    )
    if args.input is not None:
        instance = parse_instance_file(args.input)
        if instance.case is not None:
            law_id = args.law[0] if args.law else None
            reports = [replay(instance, law_id, config.limits)]
        else:
            pool = (list(instance.objects.values()), list(instance.cells.values()))
            reports = run_law_suite(
                config, [instance.instance], args.law, args.mutate, pool
            )
    else:
        reports = run_law_suite(config, args.instance, args.law, args.mutate)
    passed = sum(report.passed for report in reports)
    lines = [render_report(report) for report in reports]
    lines.append(f"{passed}/{len(reports)} passed")
    code = EXIT_OK if passed == len(reports) else EXIT_FAILED
    return code, "\n".join(lines), [report.to_dict() for report in reports]


COMMANDS: dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "trace": cmd_trace,
    "cotrace": cmd_cotrace,
    "lift": cmd_lift,
    "ext": cmd_ext,
    "enrich-hom": cmd_enrich_hom,
    "dims": cmd_dims,
    "two-trace": cmd_two_trace,
    "check-laws": cmd_check_laws,
}


def _at_least(low: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
        if value < low:
            raise argparse.ArgumentTypeError(f"must be at least {low}: {value}")
        return value

    return parse


_positive = _at_least(1)
_non_negative = _at_least(0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="Instance file (JSON).")
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="Output format."
    )
    common.add_argument("--report", type=Path, help="Also write the JSON output here.")
    common.add_argument(
        "--enumeration-cap",
        type=_positive,
        default=DEFAULT_LIMITS.enumeration_cap,
        help="Largest enumeration attempted before giving up.",
    )
    common.add_argument(
        "--iso-budget",
        type=_positive,
        default=DEFAULT_LIMITS.iso_budget,
        help="Search nodes allowed when looking for an isomorphism.",
    )
    common.add_argument("--log-file", type=Path, help="Append log records here.")
    common.add_argument(
        "--verbose", "-v", action="count", default=0, help="Repeat for more logging."
    )

    parser = argparse.ArgumentParser(
        prog="cotrace",
        description="Traces, cotraces and lifts in finite bicategories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for command, text in (
        ("trace", "Trace of an endo-cell."),
        ("cotrace", "Cotrace of an endo-cell."),
        ("two-trace", "The 2-cells from the identity into an endo-cell."),
    ):
        cmd = sub.add_parser(command, parents=[common], help=text)
        cmd.add_argument("--cell", required=True, help="Cell name in the input.")

    for command, text, metavar in (
        ("lift", "Right lift F ⊸ G (F: B→C, G: A→C).", ("F", "G")),
        ("ext", "Right extension G ⟜ F (G: A→C, F: A→B).", ("G", "F")),
        ("enrich-hom", "Scalar hom-object between parallel cells.", ("F", "G")),
    ):
        cmd = sub.add_parser(command, parents=[common], help=text)
        cmd.add_argument("--cells", nargs=2, required=True, metavar=metavar)

    cmd = sub.add_parser("dims", parents=[common], help="Dimension and codimension.")
    cmd.add_argument("--object", required=True, help="Object name in the input.")

    cmd = sub.add_parser("check-laws", parents=[common], help="Run the law suite.")
    cmd.add_argument("--max-size", type=_non_negative, default=2)
    cmd.add_argument("--rel-max-size", type=_non_negative, default=3)
    cmd.add_argument("--samples", type=_positive, default=200)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--jobs", type=_positive, default=1)
    cmd.add_argument("--exhaustive-cap", type=_positive, default=20_000)
    cmd.add_argument(
        "--law", action="append", choices=sorted(LAWS), help="Repeatable; default all."
    )
    cmd.add_argument(
        "--instance",
        action="append",
        choices=ALL_INSTANCES,
        help="Repeatable; default all.",
    )
    cmd.add_argument("--mutate", choices=sorted(MUTATIONS), help="Break one instance.")
    return parser


def _log_level(verbose: int) -> int:
    return max(logging.DEBUG, logging.WARNING - 10 * verbose)


def dispatch(argv: Sequence[str]) -> int:
    """Parse ``argv``, run one subcommand, print its output; return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    setup_logging(_log_level(args.verbose), args.log_file)
    logger.debug("running %s with %s", args.command, vars(args))
    try:
        code, text, payload = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"cotrace: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CotraceError as exc:
        print(f"cotrace: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.format == "json":
        sys.stdout.write(dumps(payload))
    else:
        print(text)
    if args.report is not None:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(dumps(payload), encoding="utf-8")
    return code


def main() -> int:
    try:
        return dispatch(sys.argv[1:])
    except KeyboardInterrupt:
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    raise SystemExit(main())
