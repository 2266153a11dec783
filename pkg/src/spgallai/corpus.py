"""Seeded graph families and the named graphs.

All randomness comes from :class:`SplitMix64` so a corpus is reproducible
from (family, n, seed, p) alone, in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

``below(k)`` rejects outputs >= 2**64 - (2**64 mod k) and returns x mod k;
``uniform()`` is (output >> 11) / 2**53.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

MASK64 = (1 << 64) - 1
FAMILIES = ("tree", "cactus", "outerplanar", "two_tree", "series_parallel", "random_connected")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def uniform(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def chance(self, p: float) -> bool:
        return self.uniform() < p


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    seed: int = 0
    p: float = 0.3  # edge deletion (SP, outerplanar) or extra-edge (random_connected) probability


def random_tree(n: int, rng: SplitMix64) -> Graph:
    return Graph.from_edges(n, [(rng.below(i), i) for i in range(1, n)])


def _two_tree_edges(n: int, rng: SplitMix64):
    """Edges in creation order plus one protected edge per vertex (a spanning tree)."""
    if n == 1:
        return [], set()
    edges = [(0, 1)]
    protected = {(0, 1)}
    for i in range(2, n):
        a, b = edges[rng.below(len(edges))]
        edges.append((a, i))
        edges.append((b, i))
        protected.add((a, i) if rng.below(2) == 0 else (b, i))
    return edges, protected


def random_two_tree(n: int, rng: SplitMix64) -> Graph:
    edges, _ = _two_tree_edges(n, rng)
    return Graph.from_edges(n, edges)


def random_series_parallel(n: int, rng: SplitMix64, p: float = 0.3) -> Graph:
    """Random 2-tree with each edge outside a random spanning tree dropped w.p. p."""
    edges, protected = _two_tree_edges(n, rng)
    kept = [e for e in edges if e in protected or not rng.chance(p)]
    return Graph.from_edges(n, kept)


def random_outerplanar(n: int, rng: SplitMix64, p: float = 0.3) -> Graph:
    """Randomly ear-clipped polygon with each chord dropped w.p. p."""
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    cycle = [(i, (i + 1) % n) for i in range(n)] if n > 2 else []
    poly = list(range(n))
    chords = []
    while len(poly) > 3:
        i = rng.below(len(poly))
        chords.append((poly[i - 1], poly[(i + 1) % len(poly)]))
        del poly[i]
    kept = [c for c in chords if not rng.chance(p)]
    return Graph.from_edges(n, cycle + kept)


def random_cactus(n: int, rng: SplitMix64) -> Graph:
    edges = []
    count = 1
    while count < n:
        anchor = rng.below(count)
        room = min(n - count, 6)
        if room >= 2 and rng.below(2) == 0:
            new = 2 + rng.below(room - 1)
            ring = [anchor] + list(range(count, count + new))
            edges.extend((ring[j], ring[(j + 1) % len(ring)]) for j in range(len(ring)))
            count += new
        else:
            edges.append((anchor, count))
            count += 1
    return Graph.from_edges(n, edges)


def random_connected(n: int, rng: SplitMix64, p: float = 0.3) -> Graph:
    tree = random_tree(n, rng)
    edges = set(tree.edges)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.chance(p):
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def generate(spec: GenSpec) -> Graph:
    if spec.n < 1:
        raise ValueError("n must be at least 1")
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}")
    if not 0.0 <= spec.p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(spec.seed)
    if spec.family == "tree":
        return random_tree(spec.n, rng)
    if spec.family == "cactus":
        return random_cactus(spec.n, rng)
    if spec.family == "outerplanar":
        return random_outerplanar(spec.n, rng, spec.p)
    if spec.family == "two_tree":
        return random_two_tree(spec.n, rng)
    if spec.family == "series_parallel":
        return random_series_parallel(spec.n, rng, spec.p)
    return random_connected(spec.n, rng, spec.p)


# -- named graphs -------------------------------------------------------------------


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def wvz(split_vertex: int = 0) -> Graph:
    """Petersen graph with one vertex replaced by three leaves.

    Remaining Petersen vertices keep their relative order as 0..8; the
    leaves are 9, 10, 11, hanging off the split vertex's neighbours in
    ascending order.
    """
    pg = petersen()
    rest = [v for v in range(10) if v != split_vertex]
    index = {v: i for i, v in enumerate(rest)}
    edges = [(index[u], index[v]) for u, v in pg.edges if split_vertex not in (u, v)]
    for k, nb in enumerate(sorted(pg.adj[split_vertex])):
        edges.append((index[nb], 9 + k))
    return Graph.from_edges(12, edges)


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def fan_two_tree(k: int) -> Graph:
    """k triangles sharing the edge {0, 1}."""
    return Graph.from_edges(k + 2, [(0, 1)] + [(a, i) for i in range(2, k + 2) for a in (0, 1)])


def named_graph(name: str) -> Graph:
    """``petersen``, ``wvz``, ``k4``, ``triangle``, or ``path:k``/``cycle:k``/``star:k``/``fan:k``."""
    fixed = {
        "petersen": petersen,
        "wvz": wvz,
        "k4": lambda: complete_graph(4),
        "triangle": lambda: complete_graph(3),
    }
    if name in fixed:
        return fixed[name]()
    base, _, arg = name.partition(":")
    sized = {"path": path_graph, "cycle": cycle_graph, "star": star_graph, "fan": fan_two_tree}
    if base in sized and arg.isdigit() and int(arg) >= 1:
        return sized[base](int(arg))
    raise ValueError(f"unknown graph name {name!r}")
