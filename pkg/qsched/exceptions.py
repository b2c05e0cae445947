# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Qsched exceptions

Library code raises these; the api layer turns them into failure dicts
and the CLI into exit codes.
"""


class QschedError(Exception):
    """Base class for every error raised by qsched."""


class ValidationError(QschedError):
    """An input object or a settings value violates its invariants."""


class MissingGateError(QschedError):
    """A schedule has no start time for some gate of the circuit."""

    def __init__(self, gate_ids):
        self.gate_ids = sorted(gate_ids)
        super().__init__(f"Schedule is missing start times for gates {self.gate_ids}")


class MalformedGraph6Error(QschedError):
    """A graph6 record could not be decoded."""

    def __init__(self, message, line_number=None, path=None):
        self.line_number = line_number
        self.path = path
        location = ""
        if path is not None:
            location = f"{path}:"
        if line_number is not None:
            location += f"{line_number}: "
        elif location:
            location += " "
        super().__init__(f"{location}{message}")


class InstanceTooLargeError(QschedError):
    """The brute-force oracle refuses instances above its ordering cap."""


class InvalidPermutationError(QschedError):
    """A leaf order is not a permutation of the star's leaves."""


class PreconditionError(QschedError):
    """A closed form was requested outside the conditions it is claimed for."""


class InvalidScheduleError(QschedError):
    """A schedule failed validation where a valid one is required."""


class EmptyInputError(QschedError):
    """An aggregation was asked to work on no records."""
