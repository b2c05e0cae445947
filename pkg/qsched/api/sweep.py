# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Sweep API

Reads graph6 files, runs the sweep and writes the results and aggregate
CSV files.
"""

import logging

from qsched.api import IO_ERROR, failure
from qsched.doctype.qsched_settings.qsched_settings import get_settings
from qsched.doctype.sweep_aggregate.sweep_aggregate import Comparison
from qsched.exceptions import QschedError
from qsched.graphs import load_graph_file
from qsched.sweep import (
    aggregate_by_edges,
    run_sweep,
    summarize,
    write_aggregate_csv,
    write_records_csv,
)

logger = logging.getLogger(__name__)


def run(
    graph_paths,
    seed,
    out_path,
    agg_path,
    replicates=None,
    jobs=None,
    time_limit=None,
    require_connected=False,
    settings=None,
):
    """
    Sweep every graph in the given files.

    Returns:
        dict: record and aggregate counts plus the per-vertex summary
    """
    try:
        settings = (settings or get_settings()).updated(
            replicates=replicates, jobs=jobs, time_limit=time_limit
        )
        graphs = []
        for path in graph_paths:
            graphs.extend(load_graph_file(path))

        records = run_sweep(
            graphs,
            base_seed=seed,
            time_limit=settings.time_limit,
            parallelism=settings.jobs,
            replicates=settings.replicates,
            require_connected=require_connected,
        )
        write_records_csv(records, out_path)

        rows = []
        if records:
            for comparison in Comparison:
                rows.extend(aggregate_by_edges(records, comparison))
        write_aggregate_csv(rows, agg_path)

        summary = summarize(records).to_dict("records") if records else []
        return {
            "success": True,
            "message": f"Swept {len(records)} instances into {out_path} and {agg_path}",
            "records": len(records),
            "aggregate_rows": len(rows),
            "summary": summary,
        }

    except OSError as e:
        logger.error(f"Sweep failed: {e}")
        return failure(str(e), IO_ERROR)
    except QschedError as e:
        logger.error(f"Sweep failed: {e}")
        return failure(str(e))
