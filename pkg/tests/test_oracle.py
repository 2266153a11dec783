import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spgallai.corpus import complete_graph, cycle_graph, named_graph, path_graph, petersen, star_graph, wvz
from spgallai.graph import Graph, PreconditionError, delete_vertex, is_path
from spgallai.oracle import (
    classify_longest_paths,
    enumerate_longest_paths,
    exact_treewidth,
    gallai_set_bruteforce,
    hamiltonian_cycle_exists,
    hamiltonian_path_exists,
    isomorphic,
    p_wise_common_vertex,
    pairwise_intersection_holds,
)

from conftest import any_graphs, relabel, sp_graphs


def test_p4_one_path():
    lps = enumerate_longest_paths(path_graph(4))
    assert lps.L == 3 and lps.paths == ((0, 1, 2, 3),)


def test_triangle_three_paths():
    lps = enumerate_longest_paths(complete_graph(3))
    assert lps.L == 2 and len(lps) == 3


def test_wvz_length_nine_and_no_gallai_vertex():
    assert enumerate_longest_paths(wvz()).L == 9
    assert gallai_set_bruteforce(wvz()) == frozenset()


def test_star_gallai_is_centre():
    assert gallai_set_bruteforce(star_graph(3)) == {0}


def test_cap_enforced():
    with pytest.raises(PreconditionError) as info:
        enumerate_longest_paths(path_graph(15))
    assert info.value.code == "cap-exceeded"
    assert enumerate_longest_paths(path_graph(15), cap=15).L == 14


@given(any_graphs(max_n=9, connected=True))
def test_paths_are_canonical_and_maximal(g):
    lps = enumerate_longest_paths(g)
    for p in lps.paths:
        assert is_path(g, p) and len(p) - 1 == lps.L
        assert p <= tuple(reversed(p))
        # no extension at either end
        assert not (g.adj[p[0]] - set(p)) and not (g.adj[p[-1]] - set(p))
    assert list(lps.paths) == sorted(set(lps.paths))


def test_classify_triangle():
    c = classify_longest_paths(enumerate_longest_paths(complete_graph(3)), 0, 1, 2)
    assert len(c.uvw) == 3 and c.u_vbar == frozenset()


def test_classify_p4_betweenness():
    c = classify_longest_paths(enumerate_longest_paths(path_graph(4)), 0, 1, 2)
    assert c.between == {(0, 1, 2, 3)}
    c = classify_longest_paths(enumerate_longest_paths(path_graph(4)), 1, 0, 2)
    assert c.between == frozenset()


def test_classify_needs_distinct():
    with pytest.raises(PreconditionError):
        classify_longest_paths(enumerate_longest_paths(path_graph(4)), 0, 0, 1)


@given(sp_graphs(min_n=3, max_n=10), st.data())
def test_classification_recount(g, data):
    lps = enumerate_longest_paths(g)
    u, v, w = data.draw(st.permutations(range(g.n)))[:3]
    c = classify_longest_paths(lps, u, v, w)
    assert len(c.uv) + len(c.u_vbar) + len(c.v_ubar) + len(c.ubar_vbar) == len(lps)
    assert c.uvw | c.uv_wbar == c.uv and not c.uvw & c.uv_wbar
    assert c.between <= c.uvw and c.u_vbar_wbar <= c.u_vbar


def test_pairwise_examples():
    assert pairwise_intersection_holds(wvz())
    with pytest.raises(PreconditionError):
        pairwise_intersection_holds(Graph.from_edges(4, [(0, 1), (2, 3)]))


@settings(max_examples=80)
@given(any_graphs(max_n=10, connected=True))
def test_pairwise_holds_on_connected_graphs(g):
    assert pairwise_intersection_holds(g)
    assert p_wise_common_vertex(g, 2)


def test_p_wise_examples():
    assert p_wise_common_vertex(path_graph(4), 5)  # one path, vacuous
    assert not p_wise_common_vertex(wvz(), len(enumerate_longest_paths(wvz())))
    with pytest.raises(PreconditionError):
        p_wise_common_vertex(path_graph(3), 1)


@given(sp_graphs(min_n=2, max_n=9))
def test_p_wise_is_monotone_in_p(g):
    answers = [p_wise_common_vertex(g, p) for p in range(2, 6)]
    assert answers == sorted(answers, reverse=True)


def test_hamiltonicity_examples():
    assert not hamiltonian_cycle_exists(petersen())
    assert hamiltonian_path_exists(petersen())
    assert hamiltonian_cycle_exists(cycle_graph(5))
    assert not hamiltonian_cycle_exists(path_graph(2))
    for v in range(10):
        assert hamiltonian_cycle_exists(delete_vertex(petersen(), v)[0])


@pytest.mark.parametrize(
    "g, tw",
    [(path_graph(6), 1), (star_graph(4), 1), (complete_graph(4), 3), (cycle_graph(6), 2), (wvz(), 3), (petersen(), 4), (Graph.from_edges(3, []), 0)],
)
def test_treewidth_examples(g, tw):
    assert exact_treewidth(g) == tw


def test_isomorphism():
    assert isomorphic(wvz(0), wvz(1))
    assert isomorphic(petersen(), relabel(petersen(), 3))
    assert not isomorphic(path_graph(4), star_graph(3))
    assert not isomorphic(cycle_graph(6), Graph.from_edges(6, list(cycle_graph(3).edges) + [(3, 4), (4, 5), (3, 5)]))
