"""Community detection and evaluation for citation networks."""

import os

__version__ = "0.1.0"


def _configure_threads():
    """Honor CITENET_THREADS as a cap on numba's worker pool.

    The compiled kernels are sequential, so this changes nothing about the
    results; it only bounds any parallel work numba might schedule.
    """
    raw = os.environ.get("CITENET_THREADS")
    if not raw:
        return
    try:
        wanted = int(raw)
    except ValueError:
        return
    import numba

    numba.set_num_threads(max(1, min(wanted, numba.config.NUMBA_NUM_THREADS)))


_configure_threads()

from .graph import (  # noqa: E402
    EdgeList,
    Graph,
    LabelMap,
    NodeMapping,
    build_graph,
    largest_connected_component,
    load_labels,
    parse_edge_list,
    prune_low_degree,
)
from .partition import Partition  # noqa: E402

__all__ = [
    "EdgeList",
    "Graph",
    "LabelMap",
    "NodeMapping",
    "Partition",
    "build_graph",
    "largest_connected_component",
    "load_labels",
    "parse_edge_list",
    "prune_low_degree",
]
