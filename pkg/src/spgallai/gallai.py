"""Gallai vertices: the vertex-deletion algorithm and the marking algorithm."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field

from . import dp as lpdp
from . import oracle
from .decomposition import NiceTreeDecomposition, decomposition_from_embedding, make_nice
from .graph import Graph, PreconditionError, connected_components, induced_subgraph, is_connected, serialize_edge_list
from .sp import complete_to_two_tree

log = logging.getLogger(__name__)


class TheoremViolation(AssertionError):
    """A connected series-parallel graph came back with no Gallai vertex."""


class ReportMismatch(AssertionError):
    def __init__(self, message: str, dump: str):
        self.dump = dump
        super().__init__(f"{message}\n{dump}")


@dataclass
class GallaiReport:
    L: int
    gallai_vertices: frozenset
    algorithm: str
    n: int
    m: int
    millis: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "L": self.L,
            "gallai": sorted(self.gallai_vertices),
            "algo": self.algorithm,
            "millis": round(self.millis, 3),
        }


def nice_decomposition(g: Graph) -> NiceTreeDecomposition:
    """Embedding -> triangle decomposition -> nice decomposition."""
    return make_nice(decomposition_from_embedding(complete_to_two_tree(g)))


def longest_path_length(g: Graph) -> int:
    """L(G) through the DP, taking the max over components.

    The empty graph has no path at all and gets -1.
    """
    if g.n == 0:
        return -1
    if g.n == 1:
        return 0
    if is_connected(g):
        return lpdp.longest_path_length(lpdp.run_forward_dp(nice_decomposition(g), g))
    best = 0
    for comp in connected_components(g):
        if len(comp) > 1:
            h, _ = induced_subgraph(g, comp)
            best = max(best, lpdp.longest_path_length(lpdp.run_forward_dp(nice_decomposition(h), h)))
    return best


def _check_input(g: Graph) -> None:
    if g.n == 0:
        raise PreconditionError("empty", "graph has no vertices")
    if not is_connected(g):
        raise PreconditionError("disconnected", "graph is not connected")


def _finish(report: GallaiReport, verify_theorem: bool) -> GallaiReport:
    if not report.gallai_vertices:
        msg = f"no Gallai vertex found ({report.algorithm}) on n={report.n}, m={report.m}"
        if verify_theorem:
            raise TheoremViolation(msg)
        log.error("theorem violation: %s", msg)
    return report


def gallai_naive(g: Graph, verify_theorem: bool = False) -> GallaiReport:
    """v is Gallai iff deleting it shortens the longest path."""
    _check_input(g)
    start = time.perf_counter()
    L = longest_path_length(g)
    found = set()
    for v in range(g.n):
        keep = [u for u in range(g.n) if u != v]
        h, _ = induced_subgraph(g, keep)
        if longest_path_length(h) < L:
            found.add(v)
    millis = (time.perf_counter() - start) * 1e3
    return _finish(GallaiReport(L, frozenset(found), "naive", g.n, g.m, millis), verify_theorem)


def gallai_fast(g: Graph, verify_theorem: bool = False) -> GallaiReport:
    """One forward pass plus one marking pass over the nice decomposition.

    v is Gallai iff every marked transition at v's forget node leaves v
    with at least one path edge.
    """
    _check_input(g)
    start = time.perf_counter()
    if g.n == 1:
        L, found = 0, frozenset({0})
    else:
        table = lpdp.run_forward_dp(nice_decomposition(g), g)
        L = lpdp.longest_path_length(table)
        marking = lpdp.mark_contributing_configs(table)
        found = frozenset(int(v) for v in range(g.n) if not marking.off_path[v])
    millis = (time.perf_counter() - start) * 1e3
    return _finish(GallaiReport(L, found, "fast", g.n, g.m, millis), verify_theorem)


def gallai_oracle(g: Graph, cap: int = oracle.DEFAULT_CAP) -> GallaiReport:
    _check_input(g)
    start = time.perf_counter()
    lps = oracle.enumerate_longest_paths(g, cap)
    common = set(lps.paths[0])
    for p in lps.paths[1:]:
        common.intersection_update(p)
    millis = (time.perf_counter() - start) * 1e3
    return GallaiReport(lps.L, frozenset(common), "oracle", g.n, g.m, millis)


ALGORITHMS = {"naive": gallai_naive, "fast": gallai_fast, "oracle": gallai_oracle}


def gallai_report_merge(reports, graph: Graph | None = None) -> dict:
    """Check that all reports agree and consolidate them.

    Raises ReportMismatch, carrying an edge-list dump of ``graph`` when given.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to merge")
    first = reports[0]
    for r in reports[1:]:
        if (r.n, r.m) != (first.n, first.m):
            raise ValueError("reports describe different graphs")
        if r.L != first.L or r.gallai_vertices != first.gallai_vertices:
            dump = serialize_edge_list(graph) if graph is not None else ""
            detail = json.dumps([x.to_json() for x in reports])
            raise ReportMismatch(f"algorithms disagree: {detail}", dump)
    return {
        "n": first.n,
        "m": first.m,
        "L": first.L,
        "gallai": sorted(first.gallai_vertices),
        "algos": [r.algorithm for r in reports],
        "millis": {r.algorithm: round(r.millis, 3) for r in reports},
        "consistent": True,
    }
