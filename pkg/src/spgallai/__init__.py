"""Longest paths and Gallai vertices of series-parallel graphs."""

from .gallai import GallaiReport, gallai_fast, gallai_naive, gallai_oracle
from .graph import Graph, GraphFormatError, PreconditionError, parse_edge_list, serialize_edge_list
from .sp import complete_to_two_tree, recognize_partial_two_tree

__all__ = [
    "GallaiReport",
    "Graph",
    "GraphFormatError",
    "PreconditionError",
    "complete_to_two_tree",
    "gallai_fast",
    "gallai_naive",
    "gallai_oracle",
    "parse_edge_list",
    "recognize_partial_two_tree",
    "serialize_edge_list",
]
