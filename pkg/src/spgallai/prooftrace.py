"""Executable versions of the structural arguments about longest paths.

Three groups live here:

* path surgery: given two paths and a connecting path in the configurations
  that cannot occur for two longest paths, build the longer path(s);
* the triangle-tail checks for series-parallel graphs;
* the certificate engine, which walks from a virtual Gallai triangle to a
  virtual Gallai edge with a component, shrinks that component, and stops at
  a Gallai vertex.

The engine needs every longest path, so it only runs within the oracle cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import oracle
from .graph import Graph, PreconditionError, is_path
from .oracle import LongestPathSet
from .sp import Component, TwoTreeEmbedding, common_neighbors, complete_to_two_tree, component, virtual_triangles


class LemmaViolation(AssertionError):
    """A structural claim failed. ``dump`` holds the offending configuration."""

    def __init__(self, message: str, dump: dict):
        self.dump = dump
        super().__init__(f"{message}: {dump}")


# -- path surgery ----------------------------------------------------------------


def _orient_tail(p: tuple, r: tuple, name: str) -> tuple[tuple, int]:
    """Return p re-oriented so that r is its suffix, and the index where r starts."""
    k = len(r)
    if k == 0:
        raise PreconditionError(f"{name}-empty", f"{name} is empty")
    for q in (p, p[::-1]):
        if q[len(q) - k:] in (r, r[::-1]):
            return q, len(q) - k
    raise PreconditionError(f"{name}-not-tail", f"{name} is not a tail of its path")


def _subpath_from(p: tuple, r: tuple, z: int, name: str) -> tuple[tuple, int, int]:
    """Orient p so that the subpath r runs forward from z. Returns (p, start, end)."""
    if not r or z not in (r[0], r[-1]):
        raise PreconditionError(f"{name}-not-at-z", f"{name} must have {z} as an endpoint")
    if r[0] != z:
        r = r[::-1]
    for q in (p, p[::-1]):
        i = q.index(z)
        if q[i:i + len(r)] == r:
            return q, i, i + len(r) - 1
    raise PreconditionError(f"{name}-not-subpath", f"{name} is not a subpath of its path")


def _clean_segment(conn: tuple, first: set, second: set) -> tuple:
    """Shortest stretch of conn from a vertex of ``first`` to one of ``second``
    with no vertex of either set inside it. Returned oriented first -> second."""
    hits = [(i, 1 if v in first else 2) for i, v in enumerate(conn) if v in first or v in second]
    for (i, a), (j, b) in zip(hits, hits[1:]):
        if a != b:
            seg = conn[i:j + 1]
            return seg if a == 1 else seg[::-1]
    raise AssertionError("connecting path has no clean x-y segment")


def _check_simple(path: tuple, name: str) -> None:
    if len(set(path)) != len(path):
        raise PreconditionError(f"{name}-not-simple", f"{name} repeats a vertex")


def surgery_two_tails(p1, r1, p2, r2, conn, g: Graph | None = None) -> tuple[tuple, tuple]:
    """Exchange the tails of two paths through a connecting path.

    Preconditions: r1, r2 are tails of p1, p2; r1 misses p2 and r2 misses p1;
    conn meets p1 only inside r1 and p2 only inside r2, and meets both.
    Returns (Q1, Q2) with |Q1| + |Q2| = |p1| + |p2| + 2|xy-segment|.
    """
    p1, p2, r1, r2, conn = map(tuple, (p1, p2, r1, r2, conn))
    for name, path in (("p1", p1), ("p2", p2), ("conn", conn)):
        _check_simple(path, name)
        if g is not None and not is_path(g, path):
            raise PreconditionError(f"{name}-not-path", f"{name} is not a path of the graph")
    p1, s1 = _orient_tail(p1, r1, "r1")
    p2, s2 = _orient_tail(p2, r2, "r2")
    set_p1, set_p2 = set(p1), set(p2)
    tail1, tail2 = set(p1[s1:]), set(p2[s2:])
    if tail1 & set_p2:
        raise PreconditionError("r1-meets-p2", "r1 intersects p2")
    if tail2 & set_p1:
        raise PreconditionError("r2-meets-p1", "r2 intersects p1")
    on1, on2 = set(conn) & set_p1, set(conn) & set_p2
    if not on1:
        raise PreconditionError("conn-misses-p1", "connecting path does not meet p1")
    if not on2:
        raise PreconditionError("conn-misses-p2", "connecting path does not meet p2")
    if not on1 <= tail1:
        raise PreconditionError("conn-outside-r1", "connecting path meets p1 outside r1")
    if not on2 <= tail2:
        raise PreconditionError("conn-outside-r2", "connecting path meets p2 outside r2")
    seg = _clean_segment(conn, set_p1, set_p2)
    x, y = seg[0], seg[-1]
    ix, iy = p1.index(x), p2.index(y)
    q1 = p1[:ix + 1] + seg[1:-1] + p2[iy:]
    q2 = p2[:iy + 1] + seg[::-1][1:-1] + p1[ix:]
    assert len(q1) + len(q2) > len(p1) + len(p2)
    return q1, q2


def surgery_shared_vertex(p1, p2, z: int, r1, r2, conn, g: Graph | None = None) -> tuple:
    """Reroute through z and the connecting path to beat p1 or p2.

    r1, r2 are subpaths of p1, p2 ending at z with r1 & p2 = r2 & p1 = {z};
    conn avoids z and meets p1 only in r1 and p2 only in r2. With x, y the
    ends of a clean stretch of conn, the longer of z..x (along r1) and z..y
    (along r2) replaces the shorter, giving a path longer than p2 or p1.
    """
    p1, p2, r1, r2, conn = map(tuple, (p1, p2, r1, r2, conn))
    for name, path in (("p1", p1), ("p2", p2), ("conn", conn)):
        _check_simple(path, name)
        if g is not None and not is_path(g, path):
            raise PreconditionError(f"{name}-not-path", f"{name} is not a path of the graph")
    if z not in p1 or z not in p2:
        raise PreconditionError("z-not-shared", f"{z} is not on both paths")
    if z in conn:
        raise PreconditionError("z-on-conn", "connecting path passes through z")
    p1, a1, b1 = _subpath_from(p1, r1, z, "r1")
    p2, a2, b2 = _subpath_from(p2, r2, z, "r2")
    sub1, sub2 = set(p1[a1:b1 + 1]), set(p2[a2:b2 + 1])
    set_p1, set_p2 = set(p1), set(p2)
    if sub1 & set_p2 != {z}:
        raise PreconditionError("r1-meets-p2", "r1 meets p2 outside z")
    if sub2 & set_p1 != {z}:
        raise PreconditionError("r2-meets-p1", "r2 meets p1 outside z")
    on1, on2 = set(conn) & set_p1, set(conn) & set_p2
    if not on1:
        raise PreconditionError("conn-misses-p1", "connecting path does not meet p1")
    if not on2:
        raise PreconditionError("conn-misses-p2", "connecting path does not meet p2")
    if not on1 <= sub1:
        raise PreconditionError("conn-outside-r1", "connecting path meets p1 outside r1")
    if not on2 <= sub2:
        raise PreconditionError("conn-outside-r2", "connecting path meets p2 outside r2")
    seg = _clean_segment(conn, set_p1, set_p2)
    x, y = seg[0], seg[-1]
    ix, iy = p1.index(x), p2.index(y)
    # both paths now run forward through z towards x (resp. y)
    rt1, rt2 = p1[a1:ix + 1], p2[a2:iy + 1]
    if len(rt1) >= len(rt2):
        out = p2[:a2 + 1] + rt1[1:] + seg[1:-1] + p2[iy:]
        assert len(out) > len(p2)
    else:
        out = p1[:a1 + 1] + rt2[1:] + seg[::-1][1:-1] + p1[ix:]
        assert len(out) > len(p1)
    return out


def surgery_corollary(p1, p2, z: int, r1, r2_pieces: Sequence, conn, g: Graph | None = None):
    """Pick the clean x-y stretch of conn and hand over to the right surgery.

    If the piece of r2 holding y contains z, the shared-vertex surgery applies
    to (r1, piece). Otherwise the piece is a tail of p2 missing p1, and the
    two-tails surgery applies with r1 - z as the tail of p1.
    """
    p1, p2, r1, conn = map(tuple, (p1, p2, r1, conn))
    pieces = [tuple(r) for r in r2_pieces]
    if z not in p1 or z not in p2:
        raise PreconditionError("z-not-shared", f"{z} is not on both paths")
    if z in conn:
        raise PreconditionError("z-on-conn", "connecting path passes through z")
    q1, s1 = _orient_tail(p1, r1, "r1")
    if z not in (r1[0], r1[-1]) or q1[s1] != z:
        raise PreconditionError("r1-not-at-z", "r1 must be a tail of p1 starting at z")
    if set(r1) & set(p2) != {z}:
        raise PreconditionError("r1-meets-p2", "r1 meets p2 outside z")
    ends2 = {p2[0], p2[-1]}
    interiors: list[set] = []
    for piece in pieces:
        if not piece:
            raise PreconditionError("piece-empty", "empty piece in r2")
        _subpath_from(p2, piece, piece[0], "r2-piece")
        if not ({piece[0], piece[-1]} & (ends2 | {z})):
            raise PreconditionError("piece-unanchored", f"piece {piece} is not anchored at z or an end of p2")
        interiors.append(set(piece[1:-1]))
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if interiors[i] & set(pieces[j]) or interiors[j] & set(pieces[i]):
                raise PreconditionError("pieces-overlap", "pieces of r2 are not internally disjoint")
    union2 = set().union(*pieces) if pieces else set()
    if not union2 & set(p1) <= {z}:
        raise PreconditionError("r2-meets-p1", "r2 meets p1 outside z")
    on1, on2 = set(conn) & set(p1), set(conn) & set(p2)
    if not on1 or not on1 <= set(r1):
        raise PreconditionError("conn-r1", "connecting path must meet p1, and only inside r1")
    if not on2 or not on2 <= union2:
        raise PreconditionError("conn-r2", "connecting path must meet p2, and only inside r2")
    seg = _clean_segment(conn, set(p1), set(p2))
    y = seg[-1]
    piece = next(pc for pc in pieces if y in pc)
    if z in piece:
        return surgery_shared_vertex(p1, p2, z, r1, piece, seg, g)
    tail1 = tuple(v for v in r1 if v != z)
    return surgery_two_tails(p1, tail1, p2, piece, seg, g)


# -- exhaustive "both longest" search ----------------------------------------------


def _reach(g: Graph, sources: set, allowed: set) -> set:
    seen = set(sources)
    stack = list(sources)
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _maximal_tails(p: tuple, avoid: set) -> list[tuple]:
    """Longest tail from each end of p that misses ``avoid`` (empty if none)."""
    out = []
    for q in (p, p[::-1]):
        k = 0
        while k < len(q) and q[len(q) - 1 - k] not in avoid:
            k += 1
        if k:
            out.append(q[len(q) - k:])
    return out


def _maximal_arms(p: tuple, z: int, avoid: set) -> list[tuple]:
    """Longest subpaths of p starting at z, in each direction, missing ``avoid``."""
    i = p.index(z)
    out = []
    for step in (1, -1):
        arm = [z]
        j = i + step
        while 0 <= j < len(p) and p[j] not in avoid:
            arm.append(p[j])
            j += step
        if len(arm) > 1:
            out.append(tuple(arm))
    return out


def connecting_path_exists(g: Graph, p1, r1, p2, r2, blocked=()) -> bool:
    """Is there a path meeting p1 only in r1 and p2 only in r2, touching both?

    Such a path exists iff r1 reaches r2 using only vertices of r1, r2 or
    outside both paths; ``blocked`` vertices are forbidden altogether.
    """
    bad = set(blocked)
    s1 = set(r1) - bad
    s2 = set(r2) - bad
    if not s1 or not s2:
        return False
    allowed = (set(range(g.n)) - set(p1) - set(p2) - bad) | s1 | s2
    return bool(_reach(g, s1, allowed) & s2)


def both_longest_search(g: Graph, lps: LongestPathSet | None = None) -> list[dict]:
    """Search every pair of longest paths for a configuration meeting the
    hypotheses of either surgery. The surgeries say the result is empty.

    Larger tails only make a connecting path easier to find, so trying the
    maximal admissible tails (and arms at each shared z) is exhaustive.
    """
    if lps is None:
        lps = oracle.enumerate_longest_paths(g)
    found = []
    paths = lps.paths
    for i, p1 in enumerate(paths):
        for p2 in paths[i:]:
            s1, s2 = set(p1), set(p2)
            for r1 in _maximal_tails(p1, s2):
                for r2 in _maximal_tails(p2, s1):
                    if connecting_path_exists(g, p1, r1, p2, r2):
                        found.append({"kind": "two_tails", "p1": p1, "p2": p2, "r1": r1, "r2": r2})
            for z in sorted(s1 & s2):
                for r1 in _maximal_arms(p1, z, s2):
                    for r2 in _maximal_arms(p2, z, s1):
                        if connecting_path_exists(g, p1, r1, p2, r2, blocked=(z,)):
                            found.append({"kind": "shared_vertex", "p1": p1, "p2": p2, "z": z, "r1": r1, "r2": r2})
    return found


# -- triangle tails ------------------------------------------------------------------


@dataclass
class TailReport:
    triangle: tuple
    intersecting: list  # index pairs (i, j), 0-based into the triangle
    component: Component | None = None
    side_check: bool | None = None

    @property
    def ok(self) -> bool:
        return len(self.intersecting) <= 1 and self.side_check is not False


def _is_virtual_triangle(emb: TwoTreeEmbedding, tri) -> bool:
    a, b, c = tri
    h = emb.host
    return len({a, b, c}) == 3 and h.has_edge(a, b) and h.has_edge(a, c) and h.has_edge(b, c)


def _orient_from(path: tuple, v: int, name: str) -> tuple:
    if path[0] == v:
        return path
    if path[-1] == v:
        return path[::-1]
    raise PreconditionError(f"{name}-endpoint", f"{name} does not end at {v}")


def validate_triangle_tails(emb: TwoTreeEmbedding, g: Graph, triangle, r1, r2, r3, side_paths=None) -> TailReport:
    """Tails r_i leaving a virtual triangle at v_i pairwise meet at most once.

    When two tails meet, their union must sit in one component of the edge
    they hang from, on the side away from the third vertex. ``side_paths``
    optionally supplies (R, S1, S2) for the side-path check: R leaves the
    triangle at v_i, S1 joins v_i to v_j, S2 joins v_j to v_k, each touching
    the triangle only at its ends; then R misses S2 and S1, S2 share only v_j.
    """
    tri = tuple(triangle)
    if not _is_virtual_triangle(emb, tri):
        raise PreconditionError("not-virtual-triangle", f"{tri} is not a virtual triangle")
    tails = []
    for i, r in enumerate((r1, r2, r3)):
        r = tuple(r)
        name = f"r{i + 1}"
        if not is_path(g, r):
            raise PreconditionError(f"{name}-not-path", f"{name} is not a path of the graph")
        r = _orient_from(r, tri[i], name)
        if set(r) & set(tri) != {tri[i]}:
            raise PreconditionError(f"{name}-hits-triangle", f"{name} meets the triangle outside {tri[i]}")
        tails.append(r)
    pairs = [(i, j) for i in range(3) for j in range(i + 1, 3) if set(tails[i]) & set(tails[j])]
    report = TailReport(tri, pairs)
    dump = {"triangle": tri, "tails": tails}
    if len(pairs) > 1:
        raise LemmaViolation("two pairs of triangle tails intersect", dump)
    if pairs:
        i, j = pairs[0]
        k = 3 - i - j
        union = set(tails[i]) | set(tails[j])
        for z in common_neighbors(emb.host, tri[i], tri[j]):
            if z == tri[k]:
                continue
            c = component(emb, tri[i], tri[j], z)
            if union <= c.vertices:
                report.component = c
                break
        if report.component is None:
            raise LemmaViolation("intersecting tails escape every component", dump)
    if side_paths is not None:
        report.side_check = check_side_paths(emb, g, tri, *side_paths)
        if not report.side_check:
            raise LemmaViolation("side paths overlap", {"triangle": tri, "sides": side_paths})
    return report


def check_side_paths(emb: TwoTreeEmbedding, g: Graph, triangle, r, s1, s2) -> bool:
    tri = tuple(triangle)
    tset = set(tri)
    r, s1, s2 = tuple(r), tuple(s1), tuple(s2)
    for name, p in (("R", r), ("S1", s1), ("S2", s2)):
        if not is_path(g, p):
            raise PreconditionError(f"{name}-not-path", f"{name} is not a path of the graph")
    hits = set(r) & tset
    if len(hits) != 1 or r[0] not in hits and r[-1] not in hits:
        raise PreconditionError("R-shape", "R must leave the triangle from one endpoint")
    (vi,) = hits
    if set(s1) & tset != {s1[0], s1[-1]} or vi not in (s1[0], s1[-1]) or s1[0] == s1[-1]:
        raise PreconditionError("S1-shape", "S1 must join v_i to another triangle vertex")
    vj = s1[-1] if s1[0] == vi else s1[0]
    (vk,) = tset - {vi, vj}
    if set(s2) & tset != {vj, vk} or {s2[0], s2[-1]} != {vj, vk}:
        raise PreconditionError("S2-shape", "S2 must join v_j to v_k")
    return not (set(r) & set(s2)) and set(s1) & set(s2) == {vj}


# -- certificate engine -----------------------------------------------------------


TRIANGLE_FOUND = "triangle_found"
EDGE_SELECTED = "edge_selected"
COMPONENT_ITERATED = "component_iterated"
VERTEX_FOUND = "vertex_found"
PHASES = {TRIANGLE_FOUND: "triangle", EDGE_SELECTED: "edge", COMPONENT_ITERATED: "edge", VERTEX_FOUND: "vertex"}


@dataclass(frozen=True)
class TraceStep:
    kind: str
    triangle: tuple | None = None
    edge: tuple | None = None
    component: Component | None = None
    justification: tuple = ()
    witness: int | None = None  # index into the longest-path list, for triangle moves


@dataclass
class ProofTrace:
    steps: list
    final_vertex: int
    L: int = 0
    paths: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "L": self.L,
            "final_vertex": self.final_vertex,
            "steps": [_step_json(s) for s in self.steps],
        }


def _component_json(c: Component | None):
    if c is None:
        return None
    return {
        "anchor": list(c.anchor),
        "direction": c.direction,
        "vertices": sorted(c.vertices),
        "interior": sorted(c.interior),
    }


def _step_json(s: TraceStep) -> dict:
    return {
        "kind": s.kind,
        "triangle": list(s.triangle) if s.triangle is not None else None,
        "edge": list(s.edge) if s.edge is not None else None,
        "component": _component_json(s.component),
        "justification": list(s.justification),
        "witness": s.witness,
    }


def _masks(lps: LongestPathSet) -> list[int]:
    out = []
    for p in lps.paths:
        m = 0
        for v in p:
            m |= 1 << v
        out.append(m)
    return out


def _bits(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _hits_all(masks: list[int], vertices) -> bool:
    w = _bits(vertices)
    return all(m & w for m in masks)


def _check_lps(g: Graph, lps: LongestPathSet) -> None:
    if not lps.paths or any(len(p) - 1 != lps.L or not is_path(g, p) for p in lps.paths):
        raise PreconditionError("stale-lps", "longest path set does not belong to this graph")


def pair_condition(masks: list[int], u: int, v: int, c: Component) -> bool:
    """Every pair from (L_u~v x L_v~u), (L_u~v x L_uv), (L_v~u x L_uv)
    meets inside the interior of c."""
    bu, bv = 1 << u, 1 << v
    only_u = [m for m in masks if m & bu and not m & bv]
    only_v = [m for m in masks if m & bv and not m & bu]
    both = [m for m in masks if m & bu and m & bv]
    inner = _bits(c.interior)
    for left, right in ((only_u, only_v), (only_u, both), (only_v, both)):
        for a in left:
            a &= inner
            if any(not a & b for b in right):
                return False
    return True


def find_gallai_triangle(g: Graph, emb: TwoTreeEmbedding, lps: LongestPathSet):
    """Walk between virtual triangles until every longest path meets one.

    Starting from the lowest triangle, whenever a longest path P avoids the
    current triangle, P sits in the interior of a component hanging off one
    of its edges; the walk steps into that component.
    """
    if emb.n < 3:
        raise PreconditionError("trivial", "graph has no virtual triangle")
    _check_lps(g, lps)
    masks = _masks(lps)
    tri = virtual_triangles(emb)[0]
    steps = []
    while True:
        tmask = _bits(tri)
        miss = next((i for i, m in enumerate(masks) if not m & tmask), None)
        if miss is None:
            steps.append(TraceStep(TRIANGLE_FOUND, triangle=tri, justification=("every longest path meets the triangle",)))
            return tri, steps
        pmask = masks[miss]
        move = None
        for a, b in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])):
            (third,) = set(tri) - {a, b}
            for z in common_neighbors(emb.host, a, b):
                if z == third:
                    continue
                c = component(emb, a, b, z)
                if pmask & ~_bits(c.interior) == 0:
                    move = (a, b, z, c)
                    break
            if move:
                break
        if move is None:
            raise LemmaViolation("path avoiding a triangle is in no component", {"triangle": tri, "path": lps.paths[miss]})
        a, b, z, c = move
        tri = tuple(sorted((a, b, z)))
        steps.append(TraceStep(
            TRIANGLE_FOUND, triangle=tri, edge=(a, b), component=c,
            justification=(f"longest path #{miss} avoids the previous triangle and lies inside the component",),
            witness=miss,
        ))


def _edge_candidates(emb: TwoTreeEmbedding, masks, u: int, v: int, inside: Component | None = None):
    """Components of {u, v} satisfying the pair condition, in direction order."""
    for z in common_neighbors(emb.host, u, v):
        c = component(emb, u, v, z)
        if inside is not None and not c.vertices < inside.vertices:
            continue
        if pair_condition(masks, u, v, c):
            yield c


def select_gallai_edge(g: Graph, emb: TwoTreeEmbedding, triangle, lps: LongestPathSet):
    """A Gallai vertex of the triangle, or (edge, component) as described in
    :func:`pair_condition`, found by direct search."""
    _check_lps(g, lps)
    masks = _masks(lps)
    tri = tuple(sorted(triangle))
    if not _hits_all(masks, tri):
        raise PreconditionError("not-gallai-triangle", f"{tri} misses a longest path")
    for x in tri:
        if _hits_all(masks, (x,)):
            return x
    for u, v in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])):
        if not _hits_all(masks, (u, v)):
            continue
        for c in _edge_candidates(emb, masks, u, v):
            return (u, v), c
    raise LemmaViolation("no Gallai edge with a component", {"triangle": tri})


def iterate_component(g: Graph, emb: TwoTreeEmbedding, edge, c: Component, lps: LongestPathSet):
    """One shrinking step: a Gallai vertex among u, v, w, or a Gallai edge at
    u or v with a strictly smaller component."""
    _check_lps(g, lps)
    masks = _masks(lps)
    u, v = sorted(edge)
    if not _hits_all(masks, (u, v)) or not pair_condition(masks, u, v, c):
        raise PreconditionError("stale-edge", "edge and component do not satisfy the pair condition")
    w = c.direction
    for x in sorted((u, v, w)):
        if _hits_all(masks, (x,)):
            return x
    for f in sorted({tuple(sorted((u, w))), tuple(sorted((v, w)))}):
        if not _hits_all(masks, f):
            continue
        for c1 in _edge_candidates(emb, masks, f[0], f[1], inside=c):
            return f, c1
    raise LemmaViolation("no smaller component found", {"edge": (u, v), "component": sorted(c.vertices)})


def run_trace(g: Graph, cap: int = oracle.DEFAULT_CAP) -> ProofTrace:
    lps = oracle.enumerate_longest_paths(g, cap)
    masks = _masks(lps)
    if g.n <= 2:
        v = next(x for x in range(g.n) if _hits_all(masks, (x,)))
        step = TraceStep(VERTEX_FOUND, justification=("trivial graph: vertex lies on every longest path",))
        return ProofTrace([step], v, lps.L, lps.paths)
    emb = complete_to_two_tree(g)
    tri, steps = find_gallai_triangle(g, emb, lps)
    more, v = descend_from_triangle(g, emb, tri, lps)
    return ProofTrace(steps + more, v, lps.L, lps.paths)


def descend_from_triangle(g: Graph, emb: TwoTreeEmbedding, triangle, lps: LongestPathSet):
    """Edge selection and component shrinking from a Gallai triangle.

    Returns (steps, Gallai vertex).
    """
    steps = []
    res = select_gallai_edge(g, emb, triangle, lps)
    while not isinstance(res, int):
        edge, c = res
        kind = COMPONENT_ITERATED if steps else EDGE_SELECTED
        steps.append(TraceStep(kind, edge=edge, component=c, justification=(
            "edge meets every longest path", "mixed pairs of longest paths meet in the component interior")))
        res = iterate_component(g, emb, edge, c, lps)
    steps.append(TraceStep(VERTEX_FOUND, justification=("vertex lies on every longest path",)))
    return steps, res


def verify_trace(trace: ProofTrace, g: Graph) -> list[str]:
    """Re-check every step of a trace. Returns a list of problems (empty if sound)."""
    problems = []
    lps = oracle.enumerate_longest_paths(g, max(g.n, 1))
    if tuple(trace.paths) != lps.paths or trace.L != lps.L:
        problems.append("stored longest paths differ from a fresh enumeration")
        return problems
    masks = _masks(lps)
    emb = complete_to_two_tree(g) if g.n >= 3 else None
    if not trace.steps or trace.steps[-1].kind != VERTEX_FOUND:
        problems.append("trace does not end with a vertex")
    if not _hits_all(masks, (trace.final_vertex,)):
        problems.append(f"final vertex {trace.final_vertex} misses a longest path")
    prev_tri = virtual_triangles(emb)[0] if emb is not None else None
    prev_edge = None
    prev_size = {}
    for idx, s in enumerate(trace.steps):
        tag = f"step {idx} ({s.kind})"
        if s.component is not None:
            a, b = s.component.anchor
            fresh = component(emb, a, b, s.component.direction)
            if fresh != s.component:
                problems.append(f"{tag}: component does not match the embedding")
            phase = PHASES[s.kind]
            size = len(s.component.vertices)
            if phase in prev_size and size >= prev_size[phase]:
                problems.append(f"{tag}: component did not shrink ({size} >= {prev_size[phase]})")
            prev_size[phase] = size
        if s.kind == TRIANGLE_FOUND:
            if not _is_virtual_triangle(emb, s.triangle):
                problems.append(f"{tag}: not a virtual triangle")
            if s.component is None:
                if not _hits_all(masks, s.triangle):
                    problems.append(f"{tag}: triangle misses a longest path")
            else:
                if not set(s.edge) <= set(prev_tri) or s.component.direction not in s.triangle:
                    problems.append(f"{tag}: move does not leave the previous triangle through an edge")
                if s.witness is None or masks[s.witness] & _bits(prev_tri):
                    problems.append(f"{tag}: witness path meets the previous triangle")
                elif masks[s.witness] & ~_bits(s.component.interior):
                    problems.append(f"{tag}: witness path leaves the component interior")
            prev_tri = s.triangle
        elif s.kind in (EDGE_SELECTED, COMPONENT_ITERATED):
            u, v = s.edge
            if s.kind == EDGE_SELECTED and not set(s.edge) <= set(prev_tri):
                problems.append(f"{tag}: edge is not in the Gallai triangle")
            if s.kind == COMPONENT_ITERATED and prev_edge is None:
                problems.append(f"{tag}: iteration before any edge was selected")
            elif s.kind == COMPONENT_ITERATED:
                pu, pv = prev_edge[0]
                if not set(s.edge) & {pu, pv} or prev_edge[1].direction not in s.edge:
                    problems.append(f"{tag}: edge is not incident to the previous edge inside its triangle")
                if not s.component.vertices < prev_edge[1].vertices:
                    problems.append(f"{tag}: component is not strictly inside the previous one")
            if not emb.host.has_edge(u, v) or s.component.anchor != (u, v):
                problems.append(f"{tag}: component does not hang from the edge")
            if not _hits_all(masks, (u, v)):
                problems.append(f"{tag}: edge misses a longest path")
            if not pair_condition(masks, u, v, s.component):
                problems.append(f"{tag}: pair condition fails")
            prev_edge = (s.edge, s.component)
    return problems
