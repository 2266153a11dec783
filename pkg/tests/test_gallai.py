import dataclasses
import logging
import random

import pytest
from hypothesis import given, settings

from spgallai.corpus import complete_graph, named_graph, path_graph, star_graph, wvz
from spgallai.gallai import (
    ReportMismatch,
    TheoremViolation,
    _finish,
    gallai_fast,
    gallai_naive,
    gallai_oracle,
    gallai_report_merge,
    longest_path_length,
)
from spgallai.graph import Graph, PreconditionError
from spgallai.oracle import gallai_set_bruteforce

from conftest import relabel, sp_graphs

ALL = (gallai_naive, gallai_fast, gallai_oracle)


@pytest.mark.parametrize("algo", ALL)
def test_p5_all_vertices(algo):
    r = algo(path_graph(5))
    assert r.L == 4 and r.gallai_vertices == set(range(5))


@pytest.mark.parametrize("algo", ALL)
def test_triangle_all_vertices(algo):
    assert algo(complete_graph(3)).gallai_vertices == {0, 1, 2}


@pytest.mark.parametrize("algo", ALL)
def test_star_centre_only(algo):
    assert algo(star_graph(3)).gallai_vertices == {0}


@pytest.mark.parametrize("algo", ALL)
def test_single_vertex_is_gallai(algo):
    r = algo(Graph.from_edges(1, []))
    assert r.L == 0 and r.gallai_vertices == {0}


@pytest.mark.parametrize("algo", (gallai_naive, gallai_fast))
def test_non_sp_rejected(algo):
    with pytest.raises(PreconditionError) as info:
        algo(complete_graph(4))
    assert info.value.code == "not-series-parallel"


@pytest.mark.parametrize("algo", ALL)
def test_disconnected_rejected(algo):
    with pytest.raises(PreconditionError) as info:
        algo(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert info.value.code == "disconnected"


def test_length_over_components():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (3, 4), (4, 5)])
    assert longest_path_length(g) == 3
    assert longest_path_length(Graph.from_edges(2, [])) == 0


@settings(max_examples=150)
@given(sp_graphs(min_n=1, max_n=12))
def test_three_way_equivalence(g):
    truth = gallai_set_bruteforce(g)
    assert truth
    naive, fast = gallai_naive(g), gallai_fast(g)
    assert naive.gallai_vertices == fast.gallai_vertices == truth
    assert naive.L == fast.L


@given(sp_graphs(min_n=2, max_n=12, families=("two_tree", "outerplanar", "cactus", "tree")))
def test_subclasses_nonempty_and_equal(g):
    r = gallai_fast(g, verify_theorem=True)
    assert r.gallai_vertices == gallai_set_bruteforce(g)


@given(sp_graphs(min_n=3, max_n=10))
def test_relabelling_permutes_the_answer(g):
    perm = list(range(g.n))
    random.Random(7).shuffle(perm)  # same permutation relabel() applies
    h = relabel(g, 7)
    assert gallai_fast(h).gallai_vertices == {perm[v] for v in gallai_fast(g).gallai_vertices}


def test_merge_consistent():
    g = complete_graph(3)
    doc = gallai_report_merge([a(g) for a in ALL], g)
    assert doc["consistent"] and doc["gallai"] == [0, 1, 2] and doc["algos"] == ["naive", "fast", "oracle"]


def test_merge_reports_corrupted_fast_with_dump():
    g = path_graph(5)
    bad = dataclasses.replace(gallai_fast(g), gallai_vertices=frozenset({1, 2}))
    with pytest.raises(ReportMismatch) as info:
        gallai_report_merge([gallai_naive(g), bad], g)
    assert info.value.dump.startswith("5 4\n")


def test_merge_rejects_different_graphs():
    with pytest.raises(ValueError):
        gallai_report_merge([gallai_fast(path_graph(3)), gallai_fast(path_graph(4))])


def test_empty_set_is_a_theorem_violation(caplog):
    r = gallai_oracle(wvz())
    assert r.gallai_vertices == frozenset()
    with pytest.raises(TheoremViolation):
        _finish(r, verify_theorem=True)
    with caplog.at_level(logging.ERROR):
        assert _finish(r, verify_theorem=False) is r
    assert "theorem violation" in caplog.text


def test_json_keys():
    doc = gallai_fast(named_graph("fan:3")).to_json()
    assert set(doc) == {"n", "m", "L", "gallai", "algo", "millis"}
