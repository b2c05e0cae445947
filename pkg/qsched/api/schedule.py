# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Scheduling API

Loads a circuit file, runs one of the registered scheduling methods and
writes the requested artifacts (schedule JSON, Gantt SVG, LP model).
"""

import logging

from qsched import hooks
from qsched.api import IO_ERROR, failure, get_attr
from qsched.circuit import (
    dump_json,
    load_circuit,
    makespan,
    schedule_to_dict,
    validate_circuit,
    validate_schedule,
)
from qsched.doctype.qsched_settings.qsched_settings import get_settings
from qsched.exceptions import InvalidScheduleError, QschedError
from qsched.gantt import render_gantt
from qsched.schedulers import (
    dispatch_schedule,
    export_lp,
    schedule_bruteforce,
    schedule_exact,
    schedule_greedy,
    schedule_layered,
)

logger = logging.getLogger(__name__)


def run_layered(circuit, settings):
    result = schedule_layered(circuit)
    return result.schedule, {"layers": len(result.layers)}


def run_greedy(circuit, settings):
    return schedule_greedy(circuit), {}


def run_exact(circuit, settings):
    result = schedule_exact(circuit, time_limit=settings.time_limit)
    return result.schedule, {
        "status": result.status.value,
        "best_bound": result.best_bound,
        "nodes_explored": result.nodes_explored,
    }


def run_bruteforce(circuit, settings):
    return schedule_bruteforce(circuit, cap=settings.bruteforce_cap), {}


def run_dispatch(circuit, settings):
    return dispatch_schedule(circuit), {}


def get_method(name):
    if name not in hooks.schedule_methods:
        raise KeyError(name)
    return get_attr(hooks.schedule_methods[name])


def schedule_circuit(
    circuit_path,
    method=hooks.default_schedule_method,
    time_limit=None,
    out_path=None,
    gantt_path=None,
    lp_path=None,
    lp_dialect="lp_solve",
    px_per_unit=None,
    lane_height=None,
    settings=None,
):
    """
    Schedule the circuit in a JSON file.

    Args:
        circuit_path: circuit JSON
        method: a key of hooks.schedule_methods
        time_limit: overrides the exact time limit setting
        out_path: where to write the schedule JSON
        gantt_path: where to write the Gantt SVG
        lp_path: where to write the LP model
        lp_dialect: "lp_solve" or "cplex"

    Returns:
        dict: makespan, schedule and method details on success
    """
    try:
        runner = get_method(method)
    except KeyError:
        return failure(f"Unknown scheduling method {method!r}; choose from {', '.join(hooks.schedule_methods)}")

    try:
        settings = (settings or get_settings()).updated(
            time_limit=time_limit, px_per_unit=px_per_unit, lane_height=lane_height
        )
        circuit = load_circuit(circuit_path)
        report = validate_circuit(circuit)
        if not report.ok:
            return failure("Invalid circuit: " + "; ".join(report.messages()), messages=report.messages())

        schedule, details = runner(circuit, settings)
        if not validate_schedule(circuit, schedule, settings.tolerance).ok:
            raise InvalidScheduleError(f"The {method} scheduler produced an invalid schedule")
        value = makespan(circuit, schedule)

        if out_path:
            dump_json(schedule_to_dict(schedule, circuit), out_path)
        if gantt_path:
            svg = render_gantt(
                circuit,
                schedule,
                settings.px_per_unit,
                settings.lane_height,
                settings.float_precision,
                tolerance=settings.tolerance,
            )
            with open(gantt_path, "w", encoding="utf-8") as f:
                f.write(svg)
        if lp_path:
            with open(lp_path, "w", encoding="utf-8") as f:
                f.write(export_lp(circuit, dialect=lp_dialect))

        logger.info(f"Scheduled {circuit_path} with {method}: makespan {value}")
        return {
            "success": True,
            "message": f"{method} makespan {settings.format_float(value)}",
            "method": method,
            "makespan": value,
            "schedule": schedule,
            **details,
        }

    except OSError as e:
        logger.error(f"Scheduling {circuit_path} failed: {e}")
        return failure(str(e), IO_ERROR)
    except QschedError as e:
        logger.error(f"Scheduling {circuit_path} failed: {e}")
        return failure(str(e))
