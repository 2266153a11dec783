"""Exponential-time ground truth for small graphs.

Everything here works on the literal definitions (all longest paths, all
elimination orders, all vertex orderings) and is capped at ``DEFAULT_CAP``
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, PreconditionError, canonical, is_connected

DEFAULT_CAP = 14


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise PreconditionError("cap-exceeded", f"{g.n} vertices exceeds oracle cap {cap}")


@dataclass(frozen=True)
class LongestPathSet:
    L: int
    paths: tuple  # canonical paths, sorted

    def __len__(self) -> int:
        return len(self.paths)

    def vertex_sets(self) -> list:
        return [frozenset(p) for p in self.paths]


def enumerate_longest_paths(g: Graph, cap: int = DEFAULT_CAP) -> LongestPathSet:
    _check_cap(g, cap)
    if g.n == 0:
        return LongestPathSet(-1, ())
    n = g.n
    adj = [sorted(a) for a in g.adj]
    best = 0
    found: set = set()
    path: list = []

    def extend(visited: int) -> None:
        nonlocal best
        length = len(path) - 1
        if length > best:
            best = length
            found.clear()
        if length == best:
            found.add(canonical(path))
        if length + (n - len(path)) < best:
            return
        for w in adj[path[-1]]:
            if not visited >> w & 1:
                path.append(w)
                extend(visited | 1 << w)
                path.pop()

    for s in range(n):
        path.append(s)
        extend(1 << s)
        path.pop()
    return LongestPathSet(best, tuple(sorted(found)))


def longest_path_length(g: Graph, cap: int = DEFAULT_CAP) -> int:
    return enumerate_longest_paths(g, cap).L


def gallai_set_bruteforce(g: Graph, cap: int = DEFAULT_CAP) -> frozenset:
    lps = enumerate_longest_paths(g, cap)
    if not lps.paths:
        return frozenset()
    common = set(lps.paths[0])
    for p in lps.paths[1:]:
        common.intersection_update(p)
    return frozenset(common)


@dataclass(frozen=True)
class LPClassification:
    """Longest paths filtered by which of u, v, w they contain.

    Field names read as the subscript: ``u_vbar`` holds paths with u and
    without v, ``between`` those in ``uvw`` where v lies between u and w.
    """

    u: int
    v: int
    w: int
    uv: frozenset
    u_vbar: frozenset
    v_ubar: frozenset
    ubar_vbar: frozenset
    uvw: frozenset
    uv_wbar: frozenset
    u_vbar_wbar: frozenset
    between: frozenset


def classify_longest_paths(lps: LongestPathSet, u: int, v: int, w: int) -> LPClassification:
    if len({u, v, w}) != 3:
        raise PreconditionError("not-distinct", "u, v, w must be distinct")
    groups: dict = {k: set() for k in LPClassification.__dataclass_fields__ if k not in ("u", "v", "w")}
    for p in lps.paths:
        s = set(p)
        hu, hv, hw = u in s, v in s, w in s
        if hu and hv:
            groups["uv"].add(p)
        elif hu:
            groups["u_vbar"].add(p)
        elif hv:
            groups["v_ubar"].add(p)
        else:
            groups["ubar_vbar"].add(p)
        if hu and hv and hw:
            groups["uvw"].add(p)
            iu, iv, iw = p.index(u), p.index(v), p.index(w)
            if min(iu, iw) < iv < max(iu, iw):
                groups["between"].add(p)
        if hu and hv and not hw:
            groups["uv_wbar"].add(p)
        if hu and not hv and not hw:
            groups["u_vbar_wbar"].add(p)
    return LPClassification(u, v, w, **{k: frozenset(s) for k, s in groups.items()})


def _masks(lps: LongestPathSet) -> list:
    out = []
    for p in lps.paths:
        m = 0
        for v in p:
            m |= 1 << v
        out.append(m)
    return out


def pairwise_intersection_holds(g: Graph, cap: int = DEFAULT_CAP) -> bool:
    if not is_connected(g):
        raise PreconditionError("disconnected", "graph is not connected")
    masks = _masks(enumerate_longest_paths(g, cap))
    return all(a & b for i, a in enumerate(masks) for b in masks[i + 1:])


def p_wise_common_vertex(g: Graph, p: int, cap: int = DEFAULT_CAP) -> bool:
    """True iff every p longest paths share a vertex.

    A subset of at most p paths with empty common intersection can always be
    padded to p paths, so the search stops at the first such subset.
    """
    if p < 2:
        raise PreconditionError("p-too-small", "p must be at least 2")
    masks = _masks(enumerate_longest_paths(g, cap))
    if len(masks) < p:
        return True
    full = (1 << g.n) - 1

    def search(start: int, depth: int, common: int) -> bool:
        if common == 0:
            return True
        if depth == p:
            return False
        return any(search(i + 1, depth + 1, common & masks[i]) for i in range(start, len(masks)))

    return not search(0, 0, full)


# -- Hamiltonicity ---------------------------------------------------------------


def _ham_search(g: Graph, cycle: bool) -> bool:
    n = g.n
    if n == 0:
        return False
    if n == 1:
        return not cycle
    if cycle and n < 3:
        return False
    adj = [sorted(a) for a in g.adj]
    full = (1 << n) - 1
    starts = [0] if cycle else range(n)

    def go(v: int, visited: int, start: int) -> bool:
        if visited == full:
            return (not cycle) or g.has_edge(v, start)
        for w in adj[v]:
            if not visited >> w & 1 and go(w, visited | 1 << w, start):
                return True
        return False

    return any(go(s, 1 << s, s) for s in starts)


def hamiltonian_cycle_exists(g: Graph, cap: int = DEFAULT_CAP) -> bool:
    _check_cap(g, cap)
    return _ham_search(g, cycle=True)


def hamiltonian_path_exists(g: Graph, cap: int = DEFAULT_CAP) -> bool:
    _check_cap(g, cap)
    return _ham_search(g, cycle=False)


# -- treewidth -----------------------------------------------------------------


def exact_treewidth(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Minimum over elimination orders of the largest elimination degree.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
    are the vertices outside S + v reachable from v through S.
    """
    _check_cap(g, cap)
    n = g.n
    if n == 0:
        return -1
    adjm = [0] * n
    for u, v in g.edges:
        adjm[u] |= 1 << v
        adjm[v] |= 1 << u

    def q_size(s: int, v: int) -> int:
        comp = 1 << v
        frontier = comp
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= adjm[low.bit_length() - 1]
                f ^= low
            frontier = nb & s & ~comp
            comp |= frontier
        border = 0
        c = comp
        while c:
            low = c & -c
            border |= adjm[low.bit_length() - 1]
            c ^= low
        return bin(border & ~s & ~(1 << v)).count("1")

    @lru_cache(maxsize=None)
    def tw(s: int) -> int:
        if s == 0:
            return -1
        best = n
        bits = s
        while bits:
            low = bits & -bits
            v = low.bit_length() - 1
            bits ^= low
            rest = s ^ low
            val = max(tw(rest), q_size(rest, v))
            if val < best:
                best = val
        return best

    result = tw((1 << n) - 1)
    tw.cache_clear()
    return result


# -- isomorphism -------------------------------------------------------------------


def isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test, adequate for graphs of a dozen vertices."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g.vertices()) != sorted(h.degree(v) for v in h.vertices()):
        return False
    n = g.n
    order = sorted(range(n), key=lambda v: -g.degree(v))
    mapping: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if w in used or h.degree(w) != g.degree(v):
                continue
            if all(g.has_edge(v, x) == h.has_edge(w, mapping[x]) for x in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)
