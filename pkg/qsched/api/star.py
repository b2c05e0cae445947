# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import logging

from qsched.api import failure
from qsched.exceptions import PreconditionError, QschedError
from qsched.star import (
    StarInstance,
    gap_precondition_failures,
    star_exact_time,
    star_gap,
    star_greedy_time,
    star_layered_time,
)

logger = logging.getLogger(__name__)


def star_times(n, gamma, beta):
    """
    Closed-form layered, greedy and exact makespans of a star.

    Returns:
        dict: t_layered, t_greedy, t_exact, both leaf orders, and gap (None
        with gap_reasons when the gap formula does not apply)
    """
    try:
        star = StarInstance(n, gamma, beta)
        greedy = star_greedy_time(star)
        exact = star_exact_time(star)
        result = {
            "success": True,
            "message": "ok",
            "t_layered": star_layered_time(star),
            "t_greedy": greedy.makespan,
            "t_exact": exact.makespan,
            "greedy_order": list(greedy.order),
            "exact_order": list(exact.order),
            "gap": None,
            "gap_reasons": [],
        }
        try:
            result["gap"] = star_gap(star)
        except PreconditionError:
            result["gap_reasons"] = gap_precondition_failures(star)
        return result

    except QschedError as e:
        logger.error(f"Star evaluation failed: {e}")
        return failure(str(e))
