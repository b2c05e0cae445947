# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import logging

from qsched.api import IO_ERROR, failure
from qsched.circuit import circuit_to_dict, dump_json
from qsched.exceptions import QschedError
from qsched.graphs import RngSpec, assign_random_times, build_qaoa_circuit, parse_graph6

logger = logging.getLogger(__name__)


def graph6_to_circuit(record, seed, rounds=1, out_path=None):
    """
    Turn a graph6 record into a circuit with seeded random gate times.

    Returns:
        dict: the circuit JSON under "circuit"; also written to out_path if given
    """
    try:
        graph = parse_graph6(record)
        wg = assign_random_times(graph, RngSpec(seed))
        circuit = build_qaoa_circuit(wg, rounds=rounds)
        data = circuit_to_dict(circuit)
        if out_path:
            dump_json(data, out_path)
        return {
            "success": True,
            "message": f"{graph.num_vertices} qubits, {len(circuit.gates)} gates",
            "circuit": data,
        }

    except OSError as e:
        logger.error(f"Conversion failed: {e}")
        return failure(str(e), IO_ERROR)
    except QschedError as e:
        logger.error(f"Conversion failed: {e}")
        return failure(str(e))
