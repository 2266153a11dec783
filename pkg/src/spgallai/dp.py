"""Longest-path dynamic program over a nice tree decomposition.

Transition semantics live in :mod:`spgallai.configs`; this module compiles a
decomposition into integer transition ids and runs the forward pass, the
marking pass and path extraction in numba.

Values are maximum edge counts; -1 marks an infeasible configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from . import configs
from .decomposition import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition
from .graph import Graph, PreconditionError, is_connected

MAX_CONFIGS_WIDTH2 = 200


class _Registry:
    """Flattened transition entries shared by all nodes of one decomposition.

    Every entry is (a, b, dst, weight, on_path, edge_mask); introduce
    entries use only a/dst, joins use a/b/dst.
    """

    def __init__(self):
        self.ids: dict = {}
        self.blocks: list = []
        self.total = 0

    def _add(self, key, rows):
        tid = self.ids.get(key)
        if tid is None:
            tid = len(self.blocks)
            self.ids[key] = tid
            self.blocks.append(rows)
            self.total += len(rows)
        return tid

    def introduce(self, size: int, pos: int) -> int:
        key = ("i", size, pos)
        if key in self.ids:
            return self.ids[key]
        m = configs.introduce_table(size, pos)
        rows = np.zeros((len(m), 6), dtype=np.int32)
        rows[:, 0] = np.arange(len(m))
        rows[:, 1] = -1
        rows[:, 2] = m
        return self._add(key, rows)

    def forget(self, size: int, pos: int, mask: int) -> int:
        key = ("f", size, pos, mask)
        if key in self.ids:
            return self.ids[key]
        t = configs.forget_table(size, pos, mask)
        rows = np.zeros((len(t), 6), dtype=np.int32)
        rows[:, 0] = t[:, 0]
        rows[:, 1] = -1
        rows[:, 2:6] = t[:, 1:5]
        return self._add(key, rows)

    def join(self, size: int) -> int:
        key = ("j", size)
        if key in self.ids:
            return self.ids[key]
        t = configs.join_table(size)
        rows = np.zeros((len(t), 6), dtype=np.int32)
        rows[:, 0:3] = t
        return self._add(key, rows)

    def arrays(self):
        off = np.zeros(len(self.blocks) + 1, dtype=np.int64)
        for i, b in enumerate(self.blocks):
            off[i + 1] = off[i] + len(b)
        ent = np.concatenate(self.blocks) if self.blocks else np.zeros((0, 6), np.int32)
        return off, np.ascontiguousarray(ent)


@numba.njit(cache=True)
def _forward(kind, ch1, ch2, tid, off, toff, ent, leaf_idx, val):
    for node in range(kind.shape[0]):
        o = off[node]
        k = kind[node]
        if k == 0:
            val[o + leaf_idx] = 0
            continue
        c1 = off[ch1[node]]
        t = tid[node]
        if k == 3:
            c2 = off[ch2[node]]
            for e in range(toff[t], toff[t + 1]):
                va = val[c1 + ent[e, 0]]
                if va < 0:
                    continue
                vb = val[c2 + ent[e, 1]]
                if vb < 0:
                    continue
                d = o + ent[e, 2]
                if va + vb > val[d]:
                    val[d] = va + vb
        else:
            for e in range(toff[t], toff[t + 1]):
                va = val[c1 + ent[e, 0]]
                if va < 0:
                    continue
                d = o + ent[e, 2]
                v = va + ent[e, 3]
                if v > val[d]:
                    val[d] = v


@numba.njit(cache=True)
def _mark(kind, vertex, ch1, ch2, tid, off, toff, ent, val, mark, off_path):
    """Top-down: mark child configurations on optimal transitions into marked ones.

    ``off_path[v]`` is set when some marked transition at v's forget node
    leaves v without path edges.
    """
    for node in range(kind.shape[0] - 1, -1, -1):
        k = kind[node]
        if k == 0:
            continue
        o = off[node]
        c1 = off[ch1[node]]
        t = tid[node]
        for e in range(toff[t], toff[t + 1]):
            d = o + ent[e, 2]
            if not mark[d]:
                continue
            va = val[c1 + ent[e, 0]]
            if va < 0:
                continue
            if k == 3:
                c2 = off[ch2[node]]
                vb = val[c2 + ent[e, 1]]
                if vb < 0 or va + vb != val[d]:
                    continue
                mark[c1 + ent[e, 0]] = True
                mark[c2 + ent[e, 1]] = True
            else:
                if va + ent[e, 3] != val[d]:
                    continue
                mark[c1 + ent[e, 0]] = True
                if k == 2 and ent[e, 4] == 0:
                    off_path[vertex[node]] = True


@numba.njit(cache=True)
def _extract(kind, ch1, ch2, tid, off, toff, ent, val, root, root_cfg, edge_mask):
    """Follow one optimal transition per node; record forget-node edge masks."""
    chosen = np.full(kind.shape[0], -1, dtype=np.int64)
    chosen[root] = root_cfg
    for node in range(kind.shape[0] - 1, -1, -1):
        k = kind[node]
        cfg = chosen[node]
        if k == 0 or cfg < 0:
            continue
        o = off[node]
        c1 = off[ch1[node]]
        t = tid[node]
        target = val[o + cfg]
        for e in range(toff[t], toff[t + 1]):
            if ent[e, 2] != cfg:
                continue
            va = val[c1 + ent[e, 0]]
            if va < 0:
                continue
            if k == 3:
                c2 = off[ch2[node]]
                vb = val[c2 + ent[e, 1]]
                if vb < 0 or va + vb != target:
                    continue
                chosen[ch1[node]] = ent[e, 0]
                chosen[ch2[node]] = ent[e, 1]
                break
            if va + ent[e, 3] != target:
                continue
            chosen[ch1[node]] = ent[e, 0]
            if k == 2:
                edge_mask[node] = ent[e, 5]
            break
    return chosen


@dataclass
class DPTable:
    """Per-node configuration values of one forward pass.

    ``values[offsets[u] + i]`` is the best edge count for configuration
    ``configs.catalogue(len(bag_u))[i]`` at node u.
    """

    ntd: NiceTreeDecomposition
    graph: Graph
    kind: np.ndarray
    vertex: np.ndarray
    ch1: np.ndarray
    ch2: np.ndarray
    tid: np.ndarray
    offsets: np.ndarray
    toff: np.ndarray
    entries: np.ndarray
    values: np.ndarray

    def node_values(self, node: int) -> dict:
        """configuration -> value for the feasible configurations at ``node``."""
        size = len(self.ntd.bags[node])
        cat = configs.catalogue(size)
        o = self.offsets[node]
        return {cat[i]: int(self.values[o + i]) for i in range(len(cat)) if self.values[o + i] >= 0}

    def config_counts(self) -> list:
        counts = []
        for node in range(len(self.kind)):
            o, e = self.offsets[node], self.offsets[node + 1]
            counts.append(int(np.count_nonzero(self.values[o:e] >= 0)))
        return counts

    @property
    def root(self) -> int:
        return self.ntd.root

    @property
    def final_index(self) -> int:
        return configs.index_of(0)[configs.final_config()]


def _edge_mask(g: Graph, bag: tuple, v: int) -> int:
    nbrs = g.adj[v]
    mask = 0
    for i, w in enumerate(bag):
        if w in nbrs:
            mask |= 1 << i
    return mask


def run_forward_dp(ntd: NiceTreeDecomposition, g: Graph, check: bool = False) -> DPTable:
    """Bottom-up pass. ``check`` re-validates the decomposition first (slow)."""
    if check:
        from .decomposition import validate_nice

        if not validate_nice(ntd, g):
            raise PreconditionError("invalid-decomposition", "decomposition fails validation")
    if g.n >= 2 and not is_connected(g):
        raise PreconditionError("disconnected", "graph is not connected")
    count = len(ntd.kind)
    reg = _Registry()
    kind = np.array(ntd.kind, dtype=np.int8)
    vertex = np.array(ntd.vertex, dtype=np.int64)
    ch1 = np.full(count, -1, dtype=np.int64)
    ch2 = np.full(count, -1, dtype=np.int64)
    tid = np.full(count, -1, dtype=np.int64)
    sizes = np.zeros(count + 1, dtype=np.int64)
    bags = ntd.bags
    for node in range(count):
        bag = bags[node]
        size = len(bag)
        sizes[node + 1] = len(configs.catalogue(size))
        k = ntd.kind[node]
        ch = ntd.children[node]
        if k == LEAF:
            continue
        ch1[node] = ch[0]
        v = ntd.vertex[node]
        if k == INTRODUCE:
            tid[node] = reg.introduce(size, bag.index(v))
        elif k == FORGET:
            cbag = bags[ch[0]]
            tid[node] = reg.forget(size + 1, cbag.index(v), _edge_mask(g, cbag, v))
        elif k == JOIN:
            ch2[node] = ch[1]
            tid[node] = reg.join(size)
    offsets = np.cumsum(sizes)
    toff, ent = reg.arrays()
    values = np.full(int(offsets[-1]), -1, dtype=np.int32)
    leaf_idx = configs.index_of(0)[configs.empty_config()]
    _forward(kind, ch1, ch2, tid, offsets, toff, ent, leaf_idx, values)
    table = DPTable(ntd, g, kind, vertex, ch1, ch2, tid, offsets, toff, ent, values)
    if ntd.width <= 2:
        assert max(table.config_counts(), default=0) <= MAX_CONFIGS_WIDTH2
    return table


def longest_path_length(dp: DPTable) -> int:
    if dp.graph.n == 1:
        return 0
    v = int(dp.values[dp.offsets[dp.root] + dp.final_index])
    return max(0, v)


def extract_longest_path(dp: DPTable) -> tuple:
    L = longest_path_length(dp)
    if L == 0:
        raise PreconditionError("no-edges", "longest path has length 0")
    masks = np.zeros(len(dp.kind), dtype=np.int64)
    _extract(dp.kind, dp.ch1, dp.ch2, dp.tid, dp.offsets, dp.toff, dp.entries, dp.values,
             dp.root, dp.final_index, masks)
    edges = []
    for node in np.nonzero(masks)[0]:
        v = dp.ntd.vertex[node]
        cbag = dp.ntd.bags[dp.ntd.children[node][0]]
        m = int(masks[node])
        edges.extend((v, w) for i, w in enumerate(cbag) if m >> i & 1)
    path = edges_to_path(edges)
    assert len(path) - 1 == L
    return path


def edges_to_path(edges) -> tuple:
    """Order an edge set forming one simple path into a vertex sequence."""
    nbrs: dict = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    ends = sorted(v for v, ns in nbrs.items() if len(ns) == 1)
    if len(ends) != 2 or any(len(ns) > 2 for ns in nbrs.values()):
        raise ValueError("edges do not form a single path")
    path = [ends[0]]
    prev = None
    while True:
        nxt = [w for w in nbrs[path[-1]] if w != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
    if len(path) != len(nbrs):
        raise ValueError("edges do not form a single path")
    return tuple(path)


@dataclass
class Marking:
    marked: np.ndarray  # aligned with DPTable.values
    off_path: np.ndarray  # per vertex: some longest path avoids it

    def node_marked(self, dp: DPTable, node: int) -> set:
        size = len(dp.ntd.bags[node])
        cat = configs.catalogue(size)
        o = dp.offsets[node]
        return {cat[i] for i in range(len(cat)) if self.marked[o + i]}


def mark_contributing_configs(dp: DPTable) -> Marking:
    L = longest_path_length(dp)
    if L < 1:
        raise PreconditionError("no-edges", "longest path has length 0")
    marked = np.zeros(len(dp.values), dtype=np.bool_)
    marked[dp.offsets[dp.root] + dp.final_index] = True
    off_path = np.zeros(dp.graph.n, dtype=np.bool_)
    _mark(dp.kind, dp.vertex, dp.ch1, dp.ch2, dp.tid, dp.offsets, dp.toff, dp.entries,
          dp.values, marked, off_path)
    return Marking(marked, off_path)
