"""Undirected simple graphs on dense vertex ids, plus path helpers.

Paths are plain tuples of vertex ids. A path and its reverse denote the same
path; :func:`canonical` picks the orientation whose first endpoint is smaller.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based, or None."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An operation was called outside its domain.

    ``code`` names the violated clause so callers (and tests) can tell the
    clauses apart without parsing messages.
    """

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"[{code}] {message}")


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    adj: tuple = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("negative vertex count")
        es = set()
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = _norm(u, v)
            if e in es:
                raise ValueError(f"duplicate edge {e}")
            es.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(es), tuple(frozenset(s) for s in nbrs))

    @classmethod
    def _trusted(cls, n: int, edges: set, nbrs: list) -> "Graph":
        """Skip validation; callers guarantee normalised, consistent input."""
        return cls(n, frozenset(edges), tuple(frozenset(s) for s in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(self.n)


def parse_edge_list(text: bytes | str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format. ``#`` lines are comments."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"not utf-8: {exc}") from None
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 1:
                raise GraphFormatError("vertex count must be at least 1", lineno)
            if b < 0:
                raise GraphFormatError("negative edge count", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a < 0 or b < 0 or a >= n or b >= n:
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at {a}", lineno)
        e = _norm(a, b)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def bfs_order(g: Graph, start: int, blocked: frozenset | set = frozenset()) -> list[int]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen and w not in blocked:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(bfs_order(g, 0)) == g.n


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = bfs_order(g, s)
        for v in comp:
            seen[v] = True
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices``, relabelled 0..k-1 in the given order.

    Returns the graph and the list mapping new ids back to old ids.
    """
    index = {v: i for i, v in enumerate(vertices)}
    edges = [
        (index[u], index[w])
        for u in vertices
        for w in g.adj[u]
        if w in index and u < w
    ]
    return Graph.from_edges(len(vertices), edges), list(vertices)


def delete_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    """G - v with ids compacted. The second value maps new ids to old ids."""
    if not 0 <= v < g.n:
        raise PreconditionError("vertex-range", f"vertex {v} not in 0..{g.n - 1}")
    keep = [u for u in range(g.n) if u != v]
    return induced_subgraph(g, keep)


# -- paths -------------------------------------------------------------------


def canonical(path: Sequence[int]) -> tuple[int, ...]:
    p = tuple(path)
    return p if p[0] <= p[-1] else p[::-1]


def is_path(g: Graph, path: Sequence[int]) -> bool:
    if len(path) == 0 or len(set(path)) != len(path):
        return False
    if any(not 0 <= v < g.n for v in path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def path_length(path: Sequence[int]) -> int:
    return len(path) - 1


def split_path_at(path: Sequence[int], cut_vertices: Iterable[int]) -> list[tuple[int, ...]]:
    """Cut ``path`` at each cut vertex; consecutive pieces share that vertex.

    A cut at an endpoint yields a single-vertex piece there, so the result
    always has ``len(cuts) + 1`` pieces.
    """
    p = tuple(path)
    cuts = set(cut_vertices)
    pos = {v: i for i, v in enumerate(p)}
    missing = cuts - pos.keys()
    if missing:
        raise PreconditionError("cut-off-path", f"cut vertices {sorted(missing)} not on path")
    idx = sorted(pos[c] for c in cuts)
    pieces = []
    start = 0
    for i in idx:
        pieces.append(p[start:i + 1])
        start = i
    pieces.append(p[start:])
    return pieces


def bridge_path(p: Sequence[int], q: Sequence[int], x: int) -> tuple[int, ...]:
    """Walk ``p`` from its endpoint ``x`` up to the first vertex lying on ``q``."""
    p = tuple(p)
    if not p or x not in (p[0], p[-1]):
        raise PreconditionError("not-endpoint", f"{x} is not an endpoint of {p}")
    qs = set(q)
    if x in qs:
        raise PreconditionError("endpoint-on-q", f"{x} lies on the second path")
    if qs.isdisjoint(p):
        raise PreconditionError("disjoint", "paths do not intersect")
    if p[0] != x:
        p = p[::-1]
    for i, v in enumerate(p):
        if v in qs:
            return p[:i + 1]
    raise AssertionError("unreachable")


def induced_subpaths(p: Sequence[int], h: Iterable[int]) -> list[tuple[int, ...]]:
    """Maximal runs of ``p`` inside the vertex set ``h``, in path order."""
    hs = set(h)
    runs: list[tuple[int, ...]] = []
    cur: list[int] = []
    for v in p:
        if v in hs:
            cur.append(v)
        elif cur:
            runs.append(tuple(cur))
            cur = []
    if cur:
        runs.append(tuple(cur))
    return runs
