"""Simulator, protocol and sequential oracles for distributed minimum-diameter spanning trees."""
from .graph import Graph, GraphError, GeneralNode, generate_graph, parse_graph, serialize_graph
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "GeneralNode", "Graph", "GraphError", "generate_graph", "parse_graph",
           "serialize_graph"]
