"""Self-identifying codes and their fault-tolerant relatives on graphs."""

from .codes import DET_IC, ERR_IC, IC, RED_IC, SIC, CodeSpec, Combiner, is_code, verify_code
from .graph import Graph, GraphError, VertexSet, build_graph
from .graph6 import emit_graph6, parse_graph6
from .solver import SolveBudget, SolveResult, solve_min

__all__ = [
    "CodeSpec",
    "Combiner",
    "DET_IC",
    "ERR_IC",
    "Graph",
    "GraphError",
    "IC",
    "RED_IC",
    "SIC",
    "SolveBudget",
    "SolveResult",
    "VertexSet",
    "build_graph",
    "emit_graph6",
    "is_code",
    "parse_graph6",
    "solve_min",
    "verify_code",
]

__version__ = "0.1.0"
