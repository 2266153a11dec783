"""Batch verification and the scaling benchmark, shared by the CLI and scripts."""

from __future__ import annotations

import csv
import io
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import oracle
from .corpus import GenSpec, SplitMix64, generate
from .gallai import gallai_fast, gallai_naive, gallai_oracle, longest_path_length
from .graph import Graph, serialize_edge_list
from .prooftrace import run_trace, verify_trace
from .sp import complete_to_two_tree, virtual_triangles

log = logging.getLogger(__name__)

DENSITIES = (0.0, 0.15, 0.3, 0.45, 0.6)


@dataclass
class VerifyConfig:
    count: int = 500
    max_n: int = 12
    seed: int = 0
    family: str = "series_parallel"
    jobs: int = 1
    cap: int = oracle.DEFAULT_CAP
    trace: bool = True


@dataclass
class InstanceResult:
    spec: GenSpec
    n: int
    m: int
    L: int
    gallai: list
    ok: bool
    failures: list = field(default_factory=list)
    edge_list: str = ""


def corpus_specs(cfg: VerifyConfig) -> list[GenSpec]:
    """``count`` specs with sizes in [1, max_n], cycling through the densities."""
    rng = SplitMix64(cfg.seed)
    specs = []
    for i in range(cfg.count):
        n = 1 + rng.below(cfg.max_n)
        specs.append(GenSpec(cfg.family, n, rng.next_u64(), DENSITIES[i % len(DENSITIES)]))
    return specs


def verify_instance(spec: GenSpec, cap: int = oracle.DEFAULT_CAP, trace: bool = True) -> InstanceResult:
    g = generate(spec)
    failures = []
    reference = gallai_oracle(g, cap)
    truth, L = reference.gallai_vertices, reference.L
    if not truth:
        failures.append("oracle Gallai set is empty")
    if longest_path_length(g) != L:
        failures.append(f"DP length {longest_path_length(g)} != oracle length {L}")
    for r in (gallai_naive(g), gallai_fast(g)):
        if r.gallai_vertices != truth or r.L != L:
            failures.append(f"{r.algorithm}: L={r.L} gallai={sorted(r.gallai_vertices)}")
    if trace and g.n <= cap:
        try:
            tr = run_trace(g, cap)
            if tr.final_vertex not in truth:
                failures.append(f"trace ended at non-Gallai vertex {tr.final_vertex}")
            failures.extend(f"trace: {p}" for p in verify_trace(tr, g))
        except AssertionError as exc:
            failures.append(f"trace raised {exc}")
    ok = not failures
    return InstanceResult(spec, g.n, g.m, L, sorted(truth), ok, failures, "" if ok else serialize_edge_list(g))


def _verify_star(args):
    return verify_instance(*args)


def verify_corpus(cfg: VerifyConfig) -> list[InstanceResult]:
    work = [(s, cfg.cap, cfg.trace) for s in corpus_specs(cfg)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(_verify_star, work, chunksize=8))
    return [_verify_star(w) for w in work]


def summarize(results: list[InstanceResult]) -> dict:
    by_n: dict = {}
    for r in results:
        row = by_n.setdefault(r.n, {"n": r.n, "count": 0, "failed": 0})
        row["count"] += 1
        row["failed"] += 0 if r.ok else 1
    return {
        "count": len(results),
        "failed": sum(not r.ok for r in results),
        "by_n": [by_n[k] for k in sorted(by_n)],
    }


def write_failure_dump(path: str, results: list[InstanceResult]) -> None:
    with open(path, "w") as fh:
        for r in results:
            if r.ok:
                continue
            fh.write(f"# spec {asdict(r.spec)}\n")
            for msg in r.failures:
                fh.write(f"# {msg}\n")
            fh.write(r.edge_list)
            fh.write("\n")


# -- random lemma configurations ---------------------------------------------------


def random_walk_path(g: Graph, start: int, rng: SplitMix64, avoid=(), max_len: int | None = None) -> tuple:
    """Self-avoiding random walk from ``start`` that never enters ``avoid``."""
    path = [start]
    seen = {start} | set(avoid)
    limit = g.n if max_len is None else max_len
    while len(path) - 1 < limit:
        options = sorted(g.adj[path[-1]] - seen)
        if not options or rng.chance(0.2):
            break
        nxt = options[rng.below(len(options))]
        path.append(nxt)
        seen.add(nxt)
    return tuple(path)


def random_path_between(g: Graph, s: int, t: int, allowed, rng: SplitMix64):
    """Randomised DFS for a simple s-t path with interior in ``allowed``; None if none."""
    allowed = set(allowed)
    stack = [(s, None)]
    parent = {s: None}
    while stack:
        v, _ = stack.pop()
        if v == t:
            out = [t]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return tuple(reversed(out))
        nbrs = sorted(w for w in g.adj[v] if w not in parent and (w in allowed or w == t))
        for i in range(len(nbrs) - 1, 0, -1):  # Fisher-Yates
            j = rng.below(i + 1)
            nbrs[i], nbrs[j] = nbrs[j], nbrs[i]
        for w in nbrs:
            parent[w] = v
            stack.append((w, v))
    return None


def _random_tail(p: tuple, avoid: set, rng: SplitMix64):
    """A random nonempty tail of p (either end) missing ``avoid``, or None."""
    q = p if rng.below(2) == 0 else p[::-1]
    k = 0
    while k < len(q) and q[len(q) - 1 - k] not in avoid:
        k += 1
    if k == 0:
        return None
    take = 1 + rng.below(k)
    return q[len(q) - take:]


def _sample_graph(rng: SplitMix64, min_n: int, max_n: int) -> Graph:
    n = min_n + rng.below(max_n - min_n + 1)
    family = ("series_parallel", "random_connected")[rng.below(2)]
    return generate(GenSpec(family, n, rng.next_u64(), DENSITIES[rng.below(len(DENSITIES))]))


def sample_two_tails(rng: SplitMix64, max_n: int = 12, tries: int = 50):
    """A random configuration meeting every two-tails precondition, as a dict, or None."""
    for _ in range(tries):
        g = _sample_graph(rng, 2, max_n)
        p1 = random_walk_path(g, rng.below(g.n), rng)
        p2 = random_walk_path(g, rng.below(g.n), rng)
        r1 = _random_tail(p1, set(p2), rng)
        r2 = _random_tail(p2, set(p1), rng)
        if r1 is None or r2 is None:
            continue
        s, t = r1[rng.below(len(r1))], r2[rng.below(len(r2))]
        allowed = (set(range(g.n)) - set(p1) - set(p2)) | set(r1) | set(r2)
        conn = random_path_between(g, s, t, allowed, rng)
        if conn is not None:
            return {"g": g, "p1": p1, "r1": r1, "p2": p2, "r2": r2, "conn": conn}
    return None


def sample_triangle_tails(rng: SplitMix64, max_n: int = 12):
    """Random tails at a random virtual triangle, plus side paths when they exist."""
    n = 3 + rng.below(max_n - 2)
    g = generate(GenSpec("series_parallel", n, rng.next_u64(), DENSITIES[rng.below(len(DENSITIES))]))
    emb = complete_to_two_tree(g)
    tris = virtual_triangles(emb)
    tri = tris[rng.below(len(tris))]
    tails = [random_walk_path(g, v, rng, avoid=set(tri) - {v}) for v in tri]
    side = None
    i = rng.below(3)
    j = (i + 1 + rng.below(2)) % 3
    k = 3 - i - j
    others = set(range(g.n)) - set(tri)
    s1 = random_path_between(g, tri[i], tri[j], others, rng)
    s2 = random_path_between(g, tri[j], tri[k], others, rng)
    if s1 is not None and s2 is not None:
        side = (tails[i], s1, s2)
    return {"g": g, "emb": emb, "triangle": tri, "tails": tails, "side": side}


# -- benchmark -------------------------------------------------------------------


@dataclass
class BenchConfig:
    sizes: tuple = (100, 1000, 10_000, 100_000)
    seed: int = 1
    naive_max: int = 1000
    p: float = 0.3
    max_fast_ratio: float = 15.0
    budget_s: float | None = None  # per timed call; checked after the call returns


class BenchTimeout(RuntimeError):
    pass


@dataclass
class BenchRow:
    size: int
    millis_naive: float | None
    millis_fast: float


def _timed(fn, g) -> float:
    start = time.perf_counter()
    fn(g)
    return (time.perf_counter() - start) * 1e3


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    if list(cfg.sizes) != sorted(cfg.sizes):
        raise ValueError("sizes must be ascending")
    gallai_fast(generate(GenSpec("series_parallel", 20, cfg.seed, cfg.p)))  # compile the kernels first
    rows = []
    for size in cfg.sizes:
        g = generate(GenSpec("series_parallel", size, cfg.seed, cfg.p))
        fast = _timed(gallai_fast, g)
        naive = _timed(gallai_naive, g) if size <= cfg.naive_max else None
        log.info("n=%d fast=%.1fms naive=%s", size, fast, naive)
        for name, ms in (("fast", fast), ("naive", naive)):
            if cfg.budget_s is not None and ms is not None and ms > cfg.budget_s * 1e3:
                raise BenchTimeout(f"{name} took {ms / 1e3:.2f}s at n={size}, budget {cfg.budget_s}s")
        rows.append(BenchRow(size, naive, fast))
    return rows


def decade_ratios(rows: list[BenchRow], column: str) -> list[tuple[int, int, float]]:
    """(small, large, ratio) for every pair of sizes exactly a factor 10 apart."""
    by_size = {r.size: getattr(r, column) for r in rows}
    out = []
    for s, t in sorted(by_size.items()):
        big = by_size.get(10 * s)
        if t is not None and big is not None and t > 0:
            out.append((s, 10 * s, big / t))
    return out


def bench_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "millis_naive", "millis_fast"])
    for r in rows:
        w.writerow([r.size, "" if r.millis_naive is None else f"{r.millis_naive:.3f}", f"{r.millis_fast:.3f}"])
    return buf.getvalue()


def read_bench_csv(text: str) -> list[BenchRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        naive = rec["millis_naive"]
        rows.append(BenchRow(int(rec["size"]), float(naive) if naive else None, float(rec["millis_fast"])))
    return rows


def default_jobs() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)
