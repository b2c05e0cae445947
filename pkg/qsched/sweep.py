# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Sweep harness

Runs the layered, greedy and exact schedulers on one random-time instance
per (graph, replicate), then aggregates improvement percentages by
(vertices, edges).

Instance seeds are blake2b("<base>:<vertices>:<index>:<replicate>") cut to
63 bits, where index is the graph's position among the input graphs with
the same vertex count. Adding graphs of other sizes never changes a
seed, and results do not depend on the number of workers.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import logging
import math
from dataclasses import dataclass

import pandas as pd

from qsched.doctype.sweep_aggregate.sweep_aggregate import COLUMNS as AGGREGATE_COLUMNS
from qsched.doctype.sweep_aggregate.sweep_aggregate import AggregateRow, Comparison
from qsched.doctype.sweep_record.sweep_record import COLUMNS as RECORD_COLUMNS
from qsched.doctype.sweep_record.sweep_record import SweepRecord
from qsched.exceptions import EmptyInputError
from qsched.graphs import Graph, RngSpec, assign_random_times, build_qaoa_circuit, is_connected
from qsched.schedulers.exact import DEFAULT_TIME_LIMIT, schedule_exact
from qsched.schedulers.greedy import greedy_trace
from qsched.schedulers.layered import schedule_layered

logger = logging.getLogger(__name__)

CSV_METADATA = "# std=sample"
CSV_FLOAT_FORMAT = "%.6f"


def derive_seed(base_seed: int, vertices: int, index: int, replicate: int = 0) -> int:
    digest = hashlib.blake2b(f"{base_seed}:{vertices}:{index}:{replicate}".encode(), digest_size=8).digest()
    # 63 bits so seeds fit signed 64-bit CSV columns
    return int.from_bytes(digest, "big") >> 1


@dataclass(frozen=True)
class SweepJob:
    vertices: int
    graph_index: int
    graph: Graph
    seed: int
    time_limit: float


def run_instance(job: SweepJob) -> SweepRecord:
    """Build one random-time instance and time it under all three schedulers."""
    wg = assign_random_times(job.graph, RngSpec(job.seed))
    circuit = build_qaoa_circuit(wg)
    t_layered = schedule_layered(circuit).makespan
    t_greedy = greedy_trace(circuit).makespan
    exact = schedule_exact(circuit, time_limit=job.time_limit)
    return SweepRecord.from_times(
        vertices=job.vertices,
        graph_index=job.graph_index,
        edges=len(job.graph.edges),
        seed=job.seed,
        t_layered=t_layered,
        t_greedy=t_greedy,
        t_exact=exact.makespan,
        status=exact.status.value,
    )


def plan_jobs(graphs, base_seed, time_limit=DEFAULT_TIME_LIMIT, replicates=1, require_connected=False):
    jobs = []
    seen_per_size = {}
    skipped = 0
    for graph in graphs:
        index = seen_per_size.get(graph.num_vertices, 0)
        seen_per_size[graph.num_vertices] = index + 1
        if require_connected and not is_connected(graph):
            skipped += 1
            continue
        for replicate in range(replicates):
            seed = derive_seed(base_seed, graph.num_vertices, index, replicate)
            jobs.append(SweepJob(graph.num_vertices, index, graph, seed, time_limit))
    if skipped:
        logger.warning(f"Skipped {skipped} disconnected graphs")
    return jobs


def run_sweep(
    graphs,
    base_seed: int,
    time_limit: float = DEFAULT_TIME_LIMIT,
    parallelism: int = 1,
    replicates: int = 1,
    require_connected: bool = False,
) -> list:
    """
    Run every (graph, replicate) instance.

    Args:
        graphs: parsed graphs, in file order
        base_seed: sweep seed the per-instance seeds derive from
        time_limit: seconds per exact solve
        parallelism: worker processes; 1 runs in-process
        replicates: random time draws per graph

    Returns:
        list: SweepRecord rows sorted by (vertices, graph_index, seed)
    """
    jobs = plan_jobs(graphs, base_seed, time_limit, replicates, require_connected)
    logger.info(f"Sweep: {len(jobs)} instances, {parallelism} workers, {time_limit}s limit")

    if parallelism > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as executor:
            records = list(executor.map(run_instance, jobs, chunksize=max(1, len(jobs) // (4 * parallelism))))
    else:
        records = [run_instance(job) for job in jobs]

    records.sort(key=lambda r: (r.vertices, r.graph_index, r.seed))
    limited = sum(1 for r in records if not r.is_optimal)
    if limited:
        logger.warning(f"{limited} of {len(records)} instances stopped at the time limit")
    return records


def records_frame(records) -> pd.DataFrame:
    return pd.DataFrame([r.as_row() for r in records], columns=RECORD_COLUMNS)


def aggregate_by_edges(records, which=Comparison.LAYERED) -> list:
    """
    Mean and sample standard deviation of one improvement column per
    (vertices, edges) group. TimeLimit rows are left out and counted;
    a group with no Optimal rows keeps its count with n_graphs 0 and no
    mean or deviation (NaN).
    """
    records = list(records)
    if not records:
        raise EmptyInputError("No sweep records to aggregate")
    comparison = Comparison(which)

    frame = records_frame(records)
    rows = []
    for (vertices, edges), group in frame.groupby(["vertices", "edges"], sort=True):
        included = group.loc[group["status"] == "Optimal", comparison.column]
        excluded = len(group) - len(included)
        if included.empty:
            logger.warning(f"Group ({vertices} vertices, {edges} edges): every instance hit the time limit")
            mean = std = math.nan
        else:
            mean = float(included.mean())
            std = float(included.std(ddof=1)) if len(included) > 1 else 0.0
        rows.append(
            AggregateRow(
                vertices=int(vertices),
                edges=int(edges),
                comparison=comparison.value,
                n_graphs=len(included),
                n_excluded=excluded,
                mean_imp_pct=mean,
                std_imp_pct=std,
            )
        )
    return rows


def summarize(records) -> pd.DataFrame:
    """Instances and Optimal share per vertex count."""
    frame = records_frame(records)
    frame["optimal"] = frame["status"] == "Optimal"
    summary = frame.groupby("vertices").agg(
        n_records=("graph_index", "size"),
        n_graphs=("graph_index", "nunique"),
        n_optimal=("optimal", "sum"),
    )
    summary["optimal_share"] = summary["n_optimal"] / summary["n_records"]
    return summary.reset_index()


def _write_csv(frame, path):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(CSV_METADATA + "\n")
        frame.to_csv(f, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def write_records_csv(records, path):
    _write_csv(records_frame(records), path)
    logger.info(f"Wrote {len(records)} sweep records to {path}")


def read_records_csv(path) -> list:
    frame = pd.read_csv(path, comment="#")
    return [SweepRecord.from_row(row) for row in frame.to_dict("records")]


def write_aggregate_csv(rows, path):
    frame = pd.DataFrame([r.as_row() for r in rows], columns=AGGREGATE_COLUMNS)
    _write_csv(frame, path)
    logger.info(f"Wrote {len(rows)} aggregate rows to {path}")


def read_aggregate_csv(path) -> list:
    frame = pd.read_csv(path, comment="#")
    return [AggregateRow.from_row(row) for row in frame.to_dict("records")]
