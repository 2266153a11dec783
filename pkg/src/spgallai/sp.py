"""Partial 2-tree recognition, K4-minor certificates and 2-tree completion.

Recognition eliminates vertices of degree at most two, always taking the
lowest-numbered eligible vertex; a degree-2 vertex leaves a fill edge between
its neighbours. A graph is a partial 2-tree exactly when this empties it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import Graph, PreconditionError, bfs_order, is_connected


@dataclass(frozen=True)
class K4MinorCertificate:
    branch_sets: tuple  # four frozensets of vertices of G


@dataclass(frozen=True)
class TwoTreeEmbedding:
    """A spanning 2-tree T(G) of a series-parallel graph G.

    ``elimination_order[i]`` had host neighbours ``attachments[i]`` when it
    was removed; the two vertices of ``base_edge`` remain at the end.
    """

    host: Graph
    real_flags: dict
    elimination_order: tuple
    attachments: tuple
    base_edge: tuple

    @property
    def n(self) -> int:
        return self.host.n

    def is_real(self, u: int, v: int) -> bool:
        return self.real_flags[(u, v) if u < v else (v, u)]

    def virtual_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, real in self.real_flags.items() if not real)


@dataclass(frozen=True)
class Component:
    """Part of G inside the host bridge of ``anchor`` that contains ``direction``."""

    anchor: tuple
    direction: int
    vertices: frozenset
    interior: frozenset

    def key(self) -> tuple:
        return (self.anchor, self.direction)


def _eliminate(g: Graph, complete: bool):
    """Shared elimination loop.

    Returns (order, attachments, remaining adjacency). With ``complete`` a
    degree-1 vertex is given a fill edge so that it always leaves with two
    adjacent neighbours, and the loop stops once two vertices remain.
    """
    nbrs = [set(a) for a in g.adj]
    removed = [False] * g.n
    heap = [v for v in range(g.n) if len(nbrs[v]) <= 2]
    heapq.heapify(heap)
    order: list[int] = []
    attach: list[tuple[int, ...]] = []
    alive = g.n
    stop_at = 2 if complete else 0
    while heap and alive > stop_at:
        x = heapq.heappop(heap)
        if removed[x]:
            continue
        nx = nbrs[x]
        if complete and len(nx) == 1:
            (u,) = nx
            w = min(y for y in nbrs[u] if y != x)
            nx.add(w)
            nbrs[w].add(x)
        if len(nx) == 2:
            a, b = sorted(nx)
            if b not in nbrs[a]:
                nbrs[a].add(b)
                nbrs[b].add(a)
            attach.append((a, b))
        else:
            attach.append(tuple(sorted(nx)))
        for y in nx:
            nbrs[y].discard(x)
            if len(nbrs[y]) <= 2:
                heapq.heappush(heap, y)
        nbrs[x] = set()
        removed[x] = True
        order.append(x)
        alive -= 1
    return order, attach, nbrs, removed


def elimination_order(g: Graph) -> list[int] | None:
    order, _, _, _ = _eliminate(g, complete=False)
    return order if len(order) == g.n else None


def is_partial_two_tree(g: Graph) -> bool:
    return elimination_order(g) is not None


def recognize_partial_two_tree(g: Graph):
    """Elimination order on success, otherwise a validated K4MinorCertificate."""
    order = elimination_order(g)
    if order is not None:
        return order
    cert = extract_k4_minor(g)
    if not validate_k4_certificate(g, cert):
        raise AssertionError("extracted K4 certificate failed validation")
    return cert


# -- K4 certificates ---------------------------------------------------------


def _kernel_minor(g: Graph):
    """Reduce g as the recogniser does, tracking which G-vertices each
    surviving vertex absorbed. Returns (branch map, minor edge set)."""
    nbrs = [set(a) for a in g.adj]
    branch = {v: {v} for v in range(g.n)}
    changed = True
    while changed:
        changed = False
        for x in sorted(branch):
            nx = nbrs[x]
            if len(nx) > 2:
                continue
            if len(nx) == 2:
                a, b = sorted(nx)
                if b not in nbrs[a]:
                    # contract x into a; the x-b edge now supports a-b
                    branch[a] |= branch[x]
                    nbrs[a].add(b)
                    nbrs[b].add(a)
            for y in nx:
                nbrs[y].discard(x)
            del branch[x]
            nbrs[x] = set()
            changed = True
    edges = {(u, w) for u in branch for w in nbrs[u] if u < w}
    return branch, edges


def _minor_is_tw2(vertices, edges) -> bool:
    index = {v: i for i, v in enumerate(sorted(vertices))}
    h = Graph.from_edges(len(index), [(index[a], index[b]) for a, b in edges])
    return is_partial_two_tree(h)


def extract_k4_minor(g: Graph) -> K4MinorCertificate:
    """Shrink the irreducible kernel to K4 by greedy deletion and contraction.

    Every step keeps the minor outside the partial 2-trees, so the fixpoint
    is minor-minimal, hence K4.
    """
    branch, edges = _kernel_minor(g)
    if not branch:
        raise PreconditionError("is-partial-2-tree", "graph has no K4 minor")
    branch = {v: set(s) for v, s in branch.items()}
    edges = set(edges)
    progress = True
    while progress:
        progress = False
        for e in sorted(edges):
            trial = edges - {e}
            if not _minor_is_tw2(branch.keys(), trial):
                edges = trial
                progress = True
        for e in sorted(edges):
            if e not in edges:
                continue
            a, b = e
            trial = set()
            for x, y in edges:
                if (x, y) == e:
                    continue
                x = a if x == b else x
                y = a if y == b else y
                if x != y:
                    trial.add((min(x, y), max(x, y)))
            verts = set(branch) - {b}
            if not _minor_is_tw2(verts, trial):
                branch[a] |= branch.pop(b)
                edges = trial
                progress = True
        used = {v for e in edges for v in e}
        for v in list(branch):
            if v not in used:
                del branch[v]
    if len(branch) != 4 or len(edges) != 6:
        raise AssertionError(f"minor reduction ended at {len(branch)} vertices, {len(edges)} edges")
    sets = sorted((frozenset(s) for s in branch.values()), key=min)
    return K4MinorCertificate(tuple(sets))


def validate_k4_certificate(g: Graph, cert: K4MinorCertificate) -> bool:
    sets = cert.branch_sets
    if len(sets) != 4 or any(not s for s in sets):
        return False
    union = set()
    for s in sets:
        if union & s or any(not 0 <= v < g.n for v in s):
            return False
        union |= s
    for s in sets:
        start = next(iter(s))
        outside = frozenset(v for v in range(g.n) if v not in s)
        if set(bfs_order(g, start, outside)) != set(s):
            return False
    for i in range(4):
        for j in range(i + 1, 4):
            if not any(w in sets[j] for v in sets[i] for w in g.adj[v]):
                return False
    return True


# -- completion --------------------------------------------------------------


def complete_to_two_tree(g: Graph) -> TwoTreeEmbedding:
    if g.n < 2:
        raise PreconditionError("too-small", "need at least two vertices")
    if not is_connected(g):
        raise PreconditionError("disconnected", "graph is not connected")
    # the fill edges keep treewidth <= 2, so getting stuck means a K4 minor
    order, attach, nbrs, removed = _eliminate(g, complete=True)
    if len(order) != g.n - 2:
        raise PreconditionError("not-series-parallel", "graph has a K4 minor")
    base = tuple(sorted(v for v in range(g.n) if not removed[v]))
    assert len(base) == 2 and base[1] in nbrs[base[0]]
    host_edges = {base}
    host_adj = [set() for _ in range(g.n)]
    host_adj[base[0]].add(base[1])
    host_adj[base[1]].add(base[0])
    for x, (a, b) in zip(order, attach):
        for u, v in ((x, a), (x, b), (a, b)):
            host_edges.add((u, v) if u < v else (v, u))
            host_adj[u].add(v)
            host_adj[v].add(u)
    host = Graph._trusted(g.n, host_edges, host_adj)
    real = g.edges
    flags = {e: (e in real) for e in host_edges}
    return TwoTreeEmbedding(host, flags, tuple(order), tuple(attach), base)


def is_two_tree(h: Graph) -> bool:
    """Peel degree-2 vertices with adjacent neighbours down to one edge."""
    if h.n < 2:
        return False
    if h.m != 2 * h.n - 3:
        return False
    nbrs = [set(a) for a in h.adj]
    stack = [v for v in range(h.n) if len(nbrs[v]) == 2]
    alive = h.n
    removed = [False] * h.n
    while stack and alive > 2:
        x = stack.pop()
        if removed[x] or len(nbrs[x]) != 2:
            continue
        a, b = nbrs[x]
        if b not in nbrs[a]:
            return False
        for y in (a, b):
            nbrs[y].discard(x)
            if len(nbrs[y]) == 2:
                stack.append(y)
        removed[x] = True
        alive -= 1
    if alive != 2:
        return False
    a, b = (v for v in range(h.n) if not removed[v])
    return b in nbrs[a]


def validate_embedding(e: TwoTreeEmbedding, g: Graph) -> bool:
    host = e.host
    if host.n != g.n or not is_two_tree(host):
        return False
    if not g.edges <= host.edges:
        return False
    if set(e.real_flags) != set(host.edges):
        return False
    return all(real == (edge in g.edges) for edge, real in e.real_flags.items())


def common_neighbors(host: Graph, x: int, y: int) -> list[int]:
    return sorted(host.adj[x] & host.adj[y])


def component(e: TwoTreeEmbedding, x: int, y: int, z: int) -> Component:
    """C_{{x,y},z}: vertices of the host bridge of {x,y} through z."""
    anchor = (min(x, y), max(x, y))
    inside = frozenset(bfs_order(e.host, z, frozenset(anchor)))
    return Component(anchor, z, inside | frozenset(anchor), inside)


def components_of_virtual_edge(e: TwoTreeEmbedding, x: int, y: int) -> list[Component]:
    if not e.host.has_edge(x, y):
        raise PreconditionError("not-host-edge", f"{{{x}, {y}}} is not a virtual edge")
    return [component(e, x, y, z) for z in common_neighbors(e.host, x, y)]


def virtual_triangles(e: TwoTreeEmbedding) -> list[tuple[int, int, int]]:
    if e.n < 3:
        raise PreconditionError("trivial-host", "host has no triangles")
    return sorted(tuple(sorted((x, a, b))) for x, (a, b) in zip(e.elimination_order, e.attachments))


def embedding_to_json(e: TwoTreeEmbedding) -> dict:
    return {
        "n": e.n,
        "edges": [{"u": u, "v": v, "real": e.real_flags[(u, v)]} for u, v in e.host.sorted_edges()],
        "elimination_order": list(e.elimination_order),
        "attachments": [list(p) for p in e.attachments],
        "base_edge": list(e.base_edge),
    }
