import json
import random
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spgallai.corpus import GenSpec, generate
from spgallai.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def sp_graphs(draw, min_n=1, max_n=12, families=("series_parallel",)):
    family = draw(st.sampled_from(families))
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**64 - 1))
    p = draw(st.sampled_from([0.0, 0.15, 0.3, 0.45, 0.6, 0.9]))
    return generate(GenSpec(family, n, seed, p))


@st.composite
def any_graphs(draw, min_n=1, max_n=9, connected=False):
    """Arbitrary simple graphs, optionally forced connected via a spanning tree."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    edges = set(chosen)
    if connected:
        for v in range(1, n):
            edges.add((draw(st.integers(0, v - 1)), v))
    return Graph.from_edges(n, edges)


def relabel(g: Graph, seed: int) -> Graph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def load_schema(name: str) -> dict:
    return json.loads((resources.files("spgallai") / "schemas" / f"{name}.json").read_text())


@pytest.fixture
def schema():
    return load_schema
