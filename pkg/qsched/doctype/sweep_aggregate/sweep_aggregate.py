# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import math
from dataclasses import asdict, dataclass
from enum import Enum

from qsched.doctype import column_names, load_schema
from qsched.exceptions import ValidationError

COLUMNS = column_names(load_schema(__file__))


class Comparison(str, Enum):
    LAYERED = "layered_vs_exact"
    GREEDY = "greedy_vs_exact"

    @property
    def column(self):
        """The SweepRecord improvement column this comparison reads."""
        return "imp_layered_pct" if self is Comparison.LAYERED else "imp_greedy_pct"


@dataclass(frozen=True)
class AggregateRow:
    """Sweep Aggregate - improvement statistics of one (vertices, edges) group."""

    vertices: int
    edges: int
    comparison: str
    n_graphs: int
    n_excluded: int
    mean_imp_pct: float
    std_imp_pct: float

    def __post_init__(self):
        try:
            object.__setattr__(self, "comparison", Comparison(self.comparison).value)
        except ValueError as e:
            raise ValidationError(f"Unknown comparison {self.comparison!r}") from e
        if self.n_graphs < 0 or self.n_excluded < 0:
            raise ValidationError("Instance counts cannot be negative")
        if self.n_graphs + self.n_excluded < 1:
            raise ValidationError("An aggregate row needs at least one instance")
        if self.n_graphs == 0:
            # every instance was excluded, so there is nothing to average
            if not (math.isnan(self.mean_imp_pct) and math.isnan(self.std_imp_pct)):
                raise ValidationError("A group without Optimal instances has no mean or deviation")
        elif not self.std_imp_pct >= 0:
            raise ValidationError("Standard deviation cannot be negative")

    @classmethod
    def from_row(cls, row):
        try:
            return cls(
                vertices=int(row["vertices"]),
                edges=int(row["edges"]),
                comparison=str(row["comparison"]),
                n_graphs=int(row["n_graphs"]),
                n_excluded=int(row["n_excluded"]),
                mean_imp_pct=float(row["mean_imp_pct"]),
                std_imp_pct=float(row["std_imp_pct"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Invalid aggregate row: {e!r}") from e

    def as_row(self):
        values = asdict(self)
        return {column: values[column] for column in COLUMNS}
