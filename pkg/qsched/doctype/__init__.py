# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Record types

Each record type is a folder holding <name>.json, the field schema, and
<name>.py, its controller. Layout fields (Section Break, Column Break)
group fields for humans and carry no data.
"""

import json
from pathlib import Path

LAYOUT_FIELDTYPES = {"Section Break", "Column Break"}


def load_schema(controller_file) -> dict:
    """The JSON schema stored next to a controller module."""
    path = Path(controller_file).with_suffix(".json")
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def data_fields(schema) -> list:
    """Data-carrying field definitions in field_order."""
    by_name = {field["fieldname"]: field for field in schema["fields"]}
    return [
        by_name[name]
        for name in schema["field_order"]
        if by_name[name]["fieldtype"] not in LAYOUT_FIELDTYPES
    ]


def column_names(schema) -> list:
    return [field["fieldname"] for field in data_fields(schema)]
