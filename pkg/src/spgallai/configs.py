"""Path configurations on a bag and their transitions.

A configuration records, for each bag position, how the partial path built in
the subgraph below meets that vertex:

* ``OFF``  - no path edge at the vertex yet,
* ``MID``  - two path edges (interior vertex),
* ``EXT``  - one path edge, and the other end of its fragment was already
  forgotten as an endpoint of the final path,
* ``PAIR + j`` - one path edge, the fragment's other end sits at position j.

``closed`` marks a fragment whose two ends were both forgotten; it is the
finished path, so nothing else may be open. The number of path endpoints
already forgotten (``externals``) is ``#EXT + 2 * closed`` and never exceeds 2.

Edges enter at Forget nodes: when v is forgotten, any subset of its edges to
vertices still in the bag is added first. Every edge is therefore consumed at
the forget of whichever endpoint leaves first, exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

OFF, MID, EXT, PAIR = 0, 1, 2, 3


@dataclass(frozen=True)
class PathConfiguration:
    codes: tuple
    closed: bool = False

    @property
    def externals(self) -> int:
        return sum(1 for c in self.codes if c == EXT) + (2 if self.closed else 0)

    def degree(self, i: int) -> int:
        c = self.codes[i]
        return 0 if c == OFF else 2 if c == MID else 1

    def partner(self, i: int):
        """Position of the other fragment end, 'ext', or None if not an end."""
        c = self.codes[i]
        if c == EXT:
            return "ext"
        if c >= PAIR:
            return c - PAIR
        return None

    def describe(self, bag=None) -> str:
        bag = bag if bag is not None else range(len(self.codes))
        names = []
        for v, c in zip(bag, self.codes):
            if c == OFF:
                names.append(f"{v}:off")
            elif c == MID:
                names.append(f"{v}:mid")
            elif c == EXT:
                names.append(f"{v}:end-ext")
            else:
                names.append(f"{v}:end-{bag[c - PAIR]}")
        return "[" + " ".join(names) + (" closed" if self.closed else "") + f"] ext={self.externals}"


def is_valid(cfg: PathConfiguration) -> bool:
    codes = cfg.codes
    n_ext = 0
    for i, c in enumerate(codes):
        if c == EXT:
            n_ext += 1
        elif c >= PAIR:
            j = c - PAIR
            if j == i or j >= len(codes) or codes[j] != PAIR + i:
                return False
        elif c not in (OFF, MID):
            return False
    if cfg.closed and any(c == EXT or c >= PAIR for c in codes):
        return False
    return n_ext + (2 if cfg.closed else 0) <= 2


@lru_cache(maxsize=None)
def catalogue(size: int) -> tuple:
    """All valid configurations on ``size`` positions, in a fixed order."""
    alphabet = [OFF, MID, EXT] + [PAIR + j for j in range(size)]
    out = []
    for codes in product(alphabet, repeat=size):
        for closed in (False, True):
            cfg = PathConfiguration(codes, closed)
            if is_valid(cfg):
                out.append(cfg)
    return tuple(out)


@lru_cache(maxsize=None)
def index_of(size: int) -> dict:
    return {cfg: i for i, cfg in enumerate(catalogue(size))}


def empty_config() -> PathConfiguration:
    return PathConfiguration((), False)


def final_config() -> PathConfiguration:
    return PathConfiguration((), True)


# -- transitions --------------------------------------------------------------


def introduce(cfg: PathConfiguration, pos: int) -> PathConfiguration:
    codes = []
    for c in cfg.codes:
        if c >= PAIR and c - PAIR >= pos:
            c += 1
        codes.append(c)
    codes.insert(pos, OFF)
    return PathConfiguration(tuple(codes), cfg.closed)


def _add_edge(codes: list, closed: bool, a: int, b: int):
    """Add edge a-b in place. Returns the new closed flag, or None if infeasible."""
    ca, cb = codes[a], codes[b]
    if ca == MID or cb == MID:
        return None
    if ca == PAIR + b:
        return None  # both ends of one fragment: cycle
    pa = None if ca == OFF else ("ext" if ca == EXT else ca - PAIR)
    pb = None if cb == OFF else ("ext" if cb == EXT else cb - PAIR)
    if pa is None and pb is None:
        codes[a], codes[b] = PAIR + b, PAIR + a
        return closed
    if pa is None or pb is None:
        if pa is None:
            a, b, pa, pb = b, a, pb, pa
        # a is an end with partner pa, b is fresh
        codes[a] = MID
        if pa == "ext":
            codes[b] = EXT
        else:
            codes[b], codes[pa] = PAIR + pa, PAIR + b
        return closed
    codes[a] = codes[b] = MID
    if pa == "ext" and pb == "ext":
        return True
    if pa == "ext":
        codes[pb] = EXT
    elif pb == "ext":
        codes[pa] = EXT
    else:
        codes[pa], codes[pb] = PAIR + pb, PAIR + pa
    return closed


def forget(cfg: PathConfiguration, pos: int, neighbor_positions) -> list:
    """All ways to add some of v's bag edges and then drop v (at ``pos``).

    Returns (new config, edges added, v on path, bitmask of edge positions).
    """
    nbrs = sorted(neighbor_positions)
    out = []
    for pick in range(1 << len(nbrs)):
        codes = list(cfg.codes)
        closed = cfg.closed
        mask = 0
        count = 0
        for k, w in enumerate(nbrs):
            if pick >> k & 1:
                closed = _add_edge(codes, closed, pos, w)
                if closed is None:
                    break
                mask |= 1 << w
                count += 1
        if closed is None:
            continue
        c = codes[pos]
        on_path = c != OFF
        if c == EXT:
            if closed:
                continue
            closed = True
        elif c >= PAIR:
            codes[c - PAIR] = EXT
        del codes[pos]
        codes = [x - 1 if x >= PAIR and x - PAIR > pos else x for x in codes]
        new = PathConfiguration(tuple(codes), closed)
        if not is_valid(new):
            continue
        out.append((new, count, on_path, mask))
    return out


def join(c1: PathConfiguration, c2: PathConfiguration):
    """Glue two edge-disjoint partial paths on the same bag; None if infeasible."""
    if c1.closed and c2.closed:
        return None
    size = len(c1.codes)
    deg = [c1.degree(i) + c2.degree(i) for i in range(size)]
    if any(d > 2 for d in deg):
        return None
    # link graph over positions and external tokens
    links: dict = {i: [] for i in range(size)}
    for side, cfg in enumerate((c1, c2)):
        for i, c in enumerate(cfg.codes):
            if c == EXT:
                tok = ("x", side, i)
                links[i].append(tok)
                links[tok] = [i]
            elif c >= PAIR:
                links[i].append(c - PAIR)
    seen = set()
    codes = [MID if d == 2 else OFF for d in deg]
    closed = c1.closed or c2.closed
    starts = [k for k, nb in links.items() if len(nb) == 1]
    for s in starts:
        if s in seen:
            continue
        seen.add(s)
        prev, cur = None, s
        while True:
            nb = links[cur]
            if prev is None:
                nxt = nb[0]
            elif len(nb) == 1:
                break
            else:
                nxt = nb[1] if nb[0] == prev else nb[0]
            prev, cur = cur, nxt
            seen.add(cur)
        end = cur
        s_tok, e_tok = isinstance(s, tuple), isinstance(end, tuple)
        if s_tok and e_tok:
            if closed:
                return None
            closed = True
        elif s_tok:
            codes[end] = EXT
        elif e_tok:
            codes[s] = EXT
        else:
            codes[s], codes[end] = PAIR + end, PAIR + s
    if any(len(nb) == 2 and k not in seen for k, nb in links.items()):
        return None  # a cycle
    new = PathConfiguration(tuple(codes), closed)
    if new.externals != c1.externals + c2.externals or not is_valid(new):
        return None
    return new


# -- integer transition tables --------------------------------------------------


@lru_cache(maxsize=None)
def introduce_table(size: int, pos: int) -> np.ndarray:
    """child index (size-1 positions) -> parent index."""
    idx = index_of(size)
    return np.array([idx[introduce(c, pos)] for c in catalogue(size - 1)], dtype=np.int32)


@lru_cache(maxsize=None)
def forget_table(size: int, pos: int, nbr_mask: int):
    """Entries (src, dst, weight, on_path, edge_mask) for forgetting ``pos``."""
    idx = index_of(size - 1)
    nbrs = [w for w in range(size) if nbr_mask >> w & 1]
    rows = []
    for src, cfg in enumerate(catalogue(size)):
        for new, count, on_path, mask in forget(cfg, pos, nbrs):
            rows.append((src, idx[new], count, int(on_path), mask))
    return np.array(rows, dtype=np.int32).reshape(-1, 5)


@lru_cache(maxsize=None)
def join_table(size: int) -> np.ndarray:
    """Entries (left, right, dst) of compatible configuration pairs."""
    idx = index_of(size)
    cat = catalogue(size)
    rows = []
    for a, c1 in enumerate(cat):
        for b, c2 in enumerate(cat):
            new = join(c1, c2)
            if new is not None:
                rows.append((a, b, idx[new]))
    return np.array(rows, dtype=np.int32).reshape(-1, 3)
