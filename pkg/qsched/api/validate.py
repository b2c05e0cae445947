# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import logging

from qsched.api import IO_ERROR, failure
from qsched.circuit import load_circuit, load_schedule, makespan, validate_circuit, validate_schedule
from qsched.doctype.qsched_settings.qsched_settings import get_settings
from qsched.exceptions import QschedError

logger = logging.getLogger(__name__)


def validate_files(circuit_path, schedule_path, settings=None):
    """
    Check a schedule file against a circuit file.

    Returns:
        dict: "valid" plus the violation report; success means the check ran
    """
    try:
        settings = settings or get_settings()
        circuit = load_circuit(circuit_path)
        circuit_report = validate_circuit(circuit)
        if not circuit_report.ok:
            return failure("Invalid circuit: " + "; ".join(circuit_report.messages()))

        schedule = load_schedule(schedule_path)
        report = validate_schedule(circuit, schedule, settings.tolerance)
        return {
            "success": True,
            "message": "valid" if report.ok else "invalid",
            "valid": report.ok,
            "makespan": makespan(circuit, schedule),
            **report.as_dict(),
        }

    except OSError as e:
        logger.error(f"Validation failed: {e}")
        return failure(str(e), IO_ERROR)
    except QschedError as e:
        logger.error(f"Validation failed: {e}")
        return failure(str(e))
