# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
qsched command line

    qsched schedule CIRCUIT --method layered|greedy|exact|bruteforce|dispatch
    qsched star --n N --gamma g1,...,g_{n-1} --beta b0,...,b_{n-1}
    qsched sweep --graphs FILE... --seed S --out results.csv --agg agg.csv
    qsched validate CIRCUIT SCHEDULE
    qsched convert RECORD --seed S [--out circuit.json]

Exit codes: 0 success, 1 invalid input, 2 exact search stopped at its time
limit, 64 usage error, 74 I/O error. Results go to stdout, diagnostics to
stderr.
"""

import argparse
import json
import logging
import sys

from qsched import __version__, hooks
from qsched.api import IO_ERROR
from qsched.api.convert import graph6_to_circuit
from qsched.api.schedule import schedule_circuit
from qsched.api.star import star_times
from qsched.api.sweep import run as run_sweep
from qsched.api.validate import validate_files
from qsched.doctype.qsched_settings.qsched_settings import get_settings
from qsched.exceptions import QschedError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_TIME_LIMIT = 2
EXIT_USAGE = 64
EXIT_IO = 74


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _positive_float(text):
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from e
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def build_parser():
    parser = _ArgumentParser(
        prog=hooks.app_name,
        description=hooks.app_description,
        epilog=f"{hooks.app_title} is released under the {hooks.app_license} license.",
    )
    parser.add_argument("--version", action="version", version=f"{hooks.app_name} {__version__}")
    parser.add_argument("--settings", help="JSON file of settings overrides")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    commands = parser.add_subparsers(dest="command", required=True)

    schedule = commands.add_parser("schedule", help="schedule a circuit JSON file")
    schedule.add_argument("circuit")
    schedule.add_argument("--method", choices=sorted(hooks.schedule_methods), default=hooks.default_schedule_method)
    schedule.add_argument("--time-limit", type=_positive_float)
    schedule.add_argument("--out", help="write the schedule JSON here")
    schedule.add_argument("--gantt", help="write a Gantt SVG here")
    schedule.add_argument("--lp", help="write the exact model in LP format here")
    schedule.add_argument("--lp-dialect", choices=hooks.lp_dialects, default=hooks.lp_dialects[0])
    schedule.add_argument("--px-per-unit", type=_positive_float)
    schedule.add_argument("--lane-height", type=_positive_float)

    star = commands.add_parser("star", help="closed-form star-graph makespans")
    star.add_argument("--n", type=int, required=True)
    star.add_argument("--gamma", type=_float_list, required=True, help="edge times for leaves 1..n-1")
    star.add_argument("--beta", type=_float_list, required=True, help="vertex times for 0..n-1")

    sweep = commands.add_parser("sweep", help="run all schedulers over graph6 files")
    sweep.add_argument("--graphs", nargs="+", required=True)
    sweep.add_argument("--seed", type=int, required=True)
    sweep.add_argument("--replicates", type=int)
    sweep.add_argument("--jobs", type=int)
    sweep.add_argument("--time-limit", type=_positive_float)
    sweep.add_argument("--require-connected", action="store_true")
    sweep.add_argument("--out", required=True, help="results CSV")
    sweep.add_argument("--agg", required=True, help="aggregate CSV")

    validate = commands.add_parser("validate", help="check a schedule against a circuit")
    validate.add_argument("circuit")
    validate.add_argument("schedule")

    convert = commands.add_parser("convert", help="graph6 record to circuit JSON")
    convert.add_argument("record")
    convert.add_argument("--seed", type=int, required=True)
    convert.add_argument("--rounds", type=int, default=1)
    convert.add_argument("--out", help="write the circuit JSON here instead of stdout")

    return parser


def _configure_logging(verbosity):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def _fail(result):
    print(f"qsched: {result['message']}", file=sys.stderr)
    return EXIT_IO if result.get("error") == IO_ERROR else EXIT_INPUT


def _schedule(args, settings):
    result = schedule_circuit(
        args.circuit,
        method=args.method,
        time_limit=args.time_limit,
        out_path=args.out,
        gantt_path=args.gantt,
        lp_path=args.lp,
        lp_dialect=args.lp_dialect,
        px_per_unit=args.px_per_unit,
        lane_height=args.lane_height,
        settings=settings,
    )
    if not result["success"]:
        return _fail(result)

    print(f"makespan {settings.format_float(result['makespan'])}")
    if "status" in result:
        print(f"status {result['status']}")
        print(f"best_bound {settings.format_float(result['best_bound'])}")
        print(f"nodes {result['nodes_explored']}")
        if result["status"] != "Optimal":
            return EXIT_TIME_LIMIT
    return EXIT_OK


def _star(args, settings):
    result = star_times(args.n, args.gamma, args.beta)
    if not result["success"]:
        return _fail(result)

    print(f"layered {settings.format_float(result['t_layered'])}")
    print(f"greedy {settings.format_float(result['t_greedy'])}")
    print(f"exact {settings.format_float(result['t_exact'])}")
    if result["gap"] is not None:
        print(f"gap {settings.format_float(result['gap'])}")
    else:
        print("gap n/a")
        for reason in result["gap_reasons"]:
            print(f"  {reason}", file=sys.stderr)
    return EXIT_OK


def _sweep(args, settings):
    result = run_sweep(
        args.graphs,
        args.seed,
        args.out,
        args.agg,
        replicates=args.replicates,
        jobs=args.jobs,
        time_limit=args.time_limit,
        require_connected=args.require_connected,
        settings=settings,
    )
    if not result["success"]:
        return _fail(result)

    print(result["message"])
    for row in result["summary"]:
        print(
            f"vertices {row['vertices']}: {row['n_records']} instances, "
            f"{row['n_optimal']} optimal ({row['optimal_share']:.1%})"
        )
    return EXIT_OK


def _validate(args, settings):
    result = validate_files(args.circuit, args.schedule, settings=settings)
    if not result["success"]:
        return _fail(result)

    for a, b, q in result["overlap_violations"]:
        print(f"overlap gates {a} and {b} on qubit {q}")
    for a, b in result["precedence_violations"]:
        print(f"precedence gate {b} starts before gate {a} ends")
    print(f"{result['message']} (makespan {settings.format_float(result['makespan'])})")
    return EXIT_OK if result["valid"] else EXIT_INPUT


def _convert(args, settings):
    result = graph6_to_circuit(args.record, args.seed, rounds=args.rounds, out_path=args.out)
    if not result["success"]:
        return _fail(result)
    if not args.out:
        print(json.dumps(result["circuit"], indent=2))
    return EXIT_OK


COMMANDS = {
    "schedule": _schedule,
    "star": _star,
    "sweep": _sweep,
    "validate": _validate,
    "convert": _convert,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    _configure_logging(args.verbose)
    try:
        settings = get_settings(args.settings)
    except OSError as e:
        print(f"qsched: {e}", file=sys.stderr)
        return EXIT_IO
    except QschedError as e:
        print(f"qsched: {e}", file=sys.stderr)
        return EXIT_INPUT

    return COMMANDS[args.command](args, settings)


def main():
    sys.exit(cli_main())
