# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Qsched API

Entry points used by the command line. Each returns a plain dict with
"success" and "message"; failures also carry "error": "input" for bad
inputs and "io" for file system problems.
"""

import importlib
import logging

logger = logging.getLogger(__name__)

INPUT_ERROR = "input"
IO_ERROR = "io"


def failure(message, error=INPUT_ERROR, **extra):
    return {"success": False, "message": message, "error": error, **extra}


def get_attr(dotted_path):
    """Resolve "package.module.name" to the named attribute."""
    module_name, _, attr = dotted_path.rpartition(".")
    return getattr(importlib.import_module(module_name), attr)
