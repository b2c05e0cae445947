# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import json
import logging
import os

from qsched import hooks
from qsched.doctype import data_fields, load_schema
from qsched.exceptions import ValidationError

logger = logging.getLogger(__name__)

SETTINGS_ENV = hooks.settings_env
SUPPORTED_RNG = "numpy.PCG64"

_SCHEMA = load_schema(__file__)
_FIELDS = {field["fieldname"]: field for field in data_fields(_SCHEMA)}

_single = None


def _coerce(field, value):
    fieldname, fieldtype = field["fieldname"], field["fieldtype"]
    try:
        if fieldtype == "Int":
            if isinstance(value, bool) or float(value) != int(float(value)):
                raise ValueError(value)
            return int(float(value))
        if fieldtype == "Float":
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        return str(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{field['label']} ({fieldname}) expects {fieldtype}, got {value!r}") from e


class QschedSettings:
    """
    Qsched Settings - solver limits, output formatting and sweep defaults.

    There is one instance per process: get it with get_settings().
    Defaults come from qsched_settings.json; a user JSON file (explicit
    path, else $QSCHED_SETTINGS) overrides them.
    """

    def __init__(self, values=None):
        for fieldname, field in _FIELDS.items():
            setattr(self, fieldname, _coerce(field, field["default"]))

        for fieldname, value in (values or {}).items():
            field = _FIELDS.get(fieldname)
            if field is None:
                raise ValidationError(f"Unknown setting {fieldname!r}")
            value = _coerce(field, value)
            if field.get("read_only") and value != getattr(self, fieldname):
                raise ValidationError(f"{field['label']} is read-only")
            setattr(self, fieldname, value)

        self.validate()

    @classmethod
    def load(cls, path=None):
        """
        Build settings from the defaults and an optional user file.

        Args:
            path: JSON file of overrides; falls back to $QSCHED_SETTINGS

        Returns:
            QschedSettings: validated settings
        """
        path = path or os.environ.get(SETTINGS_ENV)
        if not path:
            return cls()

        with open(path, encoding="utf-8") as f:
            try:
                values = json.load(f)
            except json.JSONDecodeError as e:
                raise ValidationError(f"{path}: settings file is not valid JSON ({e.msg})") from e
        if not isinstance(values, dict):
            raise ValidationError(f"{path}: settings file must hold a JSON object")

        logger.info(f"Loaded settings from {path}")
        return cls(values)

    def validate(self):
        """Called after every change - raise on values the solvers cannot use."""
        if not self.time_limit > 0:
            raise ValidationError("Exact Time Limit must be positive")
        if not 0 <= self.tolerance < 1e-3:
            raise ValidationError("Tolerance must be in [0, 1e-3)")
        if self.bruteforce_cap < 1:
            raise ValidationError("Brute-force Cap must be at least 1")
        if not (self.px_per_unit > 0 and self.lane_height > 0):
            raise ValidationError("Gantt scale values must be positive")
        if not 0 <= self.float_precision <= 17:
            raise ValidationError("Float Precision must be between 0 and 17")
        if self.jobs < 1 or self.replicates < 1:
            raise ValidationError("Worker Processes and Replicates must be at least 1")
        if self.rng_algorithm != SUPPORTED_RNG:
            raise ValidationError(f"Random Generator must be {SUPPORTED_RNG}")

    def updated(self, **overrides):
        """A validated copy with the non-None overrides applied (CLI flags)."""
        values = self.as_dict()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return QschedSettings(values)

    def as_dict(self):
        return {fieldname: getattr(self, fieldname) for fieldname in _FIELDS}

    def format_float(self, value):
        return f"{value:.{self.float_precision}f}"


def get_settings(path=None):
    """The process-wide settings; passing a path reloads them."""
    global _single
    if _single is None or path is not None:
        _single = QschedSettings.load(path)
    return _single


def clear_settings_cache():
    global _single
    _single = None
