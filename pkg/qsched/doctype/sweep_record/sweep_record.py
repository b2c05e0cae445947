# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

from dataclasses import asdict, dataclass

from qsched.doctype import column_names, load_schema
from qsched.exceptions import ValidationError

COLUMNS = column_names(load_schema(__file__))
STATUSES = ("Optimal", "TimeLimit")


def improvement_pct(heuristic: float, exact: float) -> float:
    """|heuristic - exact| / heuristic * 100; 0 when the heuristic time is 0."""
    if heuristic == 0:
        return 0.0
    return abs(heuristic - exact) / heuristic * 100.0


@dataclass(frozen=True)
class SweepRecord:
    """
    Sweep Record - one (graph, seed) instance and its three makespans.

    Column order in CSV files follows field_order in sweep_record.json.
    """

    vertices: int
    graph_index: int
    edges: int
    seed: int
    t_layered: float
    t_greedy: float
    t_exact: float
    status: str
    imp_layered_pct: float
    imp_greedy_pct: float

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValidationError(f"Unknown exact status {self.status!r}")

    @classmethod
    def from_times(cls, vertices, graph_index, edges, seed, t_layered, t_greedy, t_exact, status):
        return cls(
            vertices=vertices,
            graph_index=graph_index,
            edges=edges,
            seed=seed,
            t_layered=t_layered,
            t_greedy=t_greedy,
            t_exact=t_exact,
            status=status,
            imp_layered_pct=improvement_pct(t_layered, t_exact),
            imp_greedy_pct=improvement_pct(t_greedy, t_exact),
        )

    @classmethod
    def from_row(cls, row):
        try:
            return cls(
                vertices=int(row["vertices"]),
                graph_index=int(row["graph_index"]),
                edges=int(row["edges"]),
                seed=int(row["seed"]),
                t_layered=float(row["t_layered"]),
                t_greedy=float(row["t_greedy"]),
                t_exact=float(row["t_exact"]),
                status=str(row["status"]),
                imp_layered_pct=float(row["imp_layered_pct"]),
                imp_greedy_pct=float(row["imp_greedy_pct"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Invalid sweep record row: {e!r}") from e

    @property
    def graph_id(self):
        return self.vertices, self.graph_index

    @property
    def is_optimal(self):
        return self.status == "Optimal"

    def as_row(self):
        values = asdict(self)
        return {column: values[column] for column in COLUMNS}
