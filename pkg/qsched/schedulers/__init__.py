# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

from qsched.schedulers.bruteforce import DEFAULT_CAP, ordering_count, schedule_bruteforce
from qsched.schedulers.dispatch import dispatch_schedule, list_schedule
from qsched.schedulers.exact import ExactResult, ExactStatus, schedule_exact
from qsched.schedulers.greedy import GreedyTrace, greedy_trace, schedule_greedy
from qsched.schedulers.layered import LayeredSchedule, schedule_layered
from qsched.schedulers.lp_export import export_lp

__all__ = [
    "DEFAULT_CAP",
    "ExactResult",
    "ExactStatus",
    "GreedyTrace",
    "LayeredSchedule",
    "dispatch_schedule",
    "export_lp",
    "greedy_trace",
    "list_schedule",
    "ordering_count",
    "schedule_bruteforce",
    "schedule_exact",
    "schedule_greedy",
    "schedule_layered",
]
