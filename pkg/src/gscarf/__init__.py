"""Greedy graph clustering by likelihood-ratio modularity (LRM).

The public surface: graph containers (:class:`Graph`, :func:`build_graph`),
the per-cluster objective and merge-gain formulas (:mod:`gscarf.metrics`),
a structural gain cache, the clustering engines, partition evaluation, and
seeded synthetic generators.
"""

from .cache import GainCache, canonicalize
from .engine import (
    EngineOptions,
    Partition,
    RunStats,
    cluster_gscarf,
    cluster_louvain,
)
from .evaluation import (
    NMI_FORMULA,
    ContingencyTable,
    contingency,
    nmi,
    resolve_overlapping_truth,
    size_stats,
)
from .generators import PlantedSpec, PowerLawSpec, gen_chung_lu, gen_planted
from .graph import Graph, build_graph, quotient_graph
from .io import (
    REPORT_FIELDS,
    ParseError,
    format_report,
    parse_report,
    read_communities,
    read_edge_list,
    read_partition,
    write_communities,
    write_edge_list,
    write_partition,
    write_report,
)
from .metrics import (
    StructTuple,
    ep,
    exact_lrm_log,
    log_lrm,
    log_lrm_directed,
    lrm_gain,
    lrm_gain_directed,
    modularity,
    modularity_directed,
    modularity_gain,
    prob_ratio_term,
    tp,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "build_graph",
    "quotient_graph",
    "tp",
    "ep",
    "prob_ratio_term",
    "log_lrm",
    "lrm_gain",
    "modularity",
    "modularity_gain",
    "exact_lrm_log",
    "log_lrm_directed",
    "lrm_gain_directed",
    "modularity_directed",
    "StructTuple",
    "GainCache",
    "canonicalize",
    "EngineOptions",
    "RunStats",
    "Partition",
    "cluster_gscarf",
    "cluster_louvain",
    "ContingencyTable",
    "contingency",
    "nmi",
    "size_stats",
    "resolve_overlapping_truth",
    "NMI_FORMULA",
    "PlantedSpec",
    "PowerLawSpec",
    "gen_planted",
    "gen_chung_lu",
    "ParseError",
    "read_edge_list",
    "write_edge_list",
    "read_communities",
    "write_communities",
    "read_partition",
    "write_partition",
    "REPORT_FIELDS",
    "format_report",
    "write_report",
    "parse_report",
    "__version__",
]
