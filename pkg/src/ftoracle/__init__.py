"""Single-source distance oracles that tolerate one edge failure.

Two oracles are provided: one with stretch 2 and linear size, and one with
stretch 1+eps storing O(n log(1/eps)/eps) distances.  Both answer queries
"distance from the source to t after edge (u, v) fails" in logarithmic time.
"""
from ._jit import BACKEND
from .answers import Answer, Case
from .container import deserialize, load, save, serialize
from .errors import (BuildError, ContainerError, ContractError, FtOracleError, GraphError,
                     LowerBoundError, ParameterError, ParseError, QueryError)
from .exact import ExactTable, build_exact, exact_query
from .graph import UNREACHABLE, Graph, SsspResult, parse_graph, read_graph, sssp, validate_fault_coverage, write_graph
from .lowerbound import (LowerBoundInstance, LowerBoundParams, check_separation, enumerate_distinguishability,
                         gen_lower_bound)
from .oracle2 import Oracle2, build_oracle2, query2
from .oracle_eps import OracleEps, bucket_bound, bucket_limit, build_oracle_eps, query_eps, search_bucket
from .spt import INF_RANK, Spt, build_spt, is_descendant, level_ancestor, tree_distance
from .treekit import BottleneckIndex, build_bvq, bvq_min

__version__ = "0.1.0"

__all__ = [
    "Answer", "BACKEND", "BottleneckIndex", "BuildError", "Case", "ContainerError", "ContractError",
    "ExactTable", "FtOracleError", "Graph", "GraphError", "INF_RANK", "LowerBoundError",
    "LowerBoundInstance", "LowerBoundParams", "Oracle2", "OracleEps", "ParameterError", "ParseError",
    "QueryError", "Spt", "SsspResult", "UNREACHABLE", "bucket_bound", "bucket_limit", "build_bvq",
    "build_exact", "build_oracle2", "build_oracle_eps", "build_spt", "bvq_min", "check_separation",
    "deserialize", "enumerate_distinguishability", "exact_query", "gen_lower_bound", "is_descendant",
    "level_ancestor", "load", "parse_graph", "query2", "query_eps", "read_graph", "save",
    "search_bucket", "serialize", "sssp", "tree_distance", "validate_fault_coverage", "write_graph",
]
