from .archive import FORMAT_VERSION, load_diva, save_diva
from .formats import GraphFormat, parse_graph, write_graph
from .generate import generate_er
from .model import Graph, ParseReport, build_graph

__all__ = [
    "FORMAT_VERSION",
    "Graph",
    "GraphFormat",
    "ParseReport",
    "build_graph",
    "generate_er",
    "load_diva",
    "parse_graph",
    "save_diva",
    "write_graph",
]
