import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from spgallai.corpus import GenSpec, SplitMix64, complete_graph, fan_two_tree, generate, path_graph, star_graph, wvz
from spgallai.graph import Graph, PreconditionError, is_path
from spgallai.harness import sample_triangle_tails, sample_two_tails
from spgallai.oracle import enumerate_longest_paths, gallai_set_bruteforce
from spgallai.prooftrace import (
    COMPONENT_ITERATED,
    EDGE_SELECTED,
    TRIANGLE_FOUND,
    VERTEX_FOUND,
    LemmaViolation,
    ProofTrace,
    TraceStep,
    _masks,
    both_longest_search,
    check_side_paths,
    connecting_path_exists,
    descend_from_triangle,
    find_gallai_triangle,
    iterate_component,
    pair_condition,
    run_trace,
    select_gallai_edge,
    surgery_corollary,
    surgery_shared_vertex,
    surgery_two_tails,
    validate_triangle_tails,
    verify_trace,
)
from spgallai.sp import complete_to_two_tree, virtual_triangles

from conftest import relabel, sp_graphs


def _setup(g):
    return complete_to_two_tree(g), enumerate_longest_paths(g)


# -- two tails ---------------------------------------------------------------------

H = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9), (3, 8)])


def test_two_tails_h_shape():
    q1, q2 = surgery_two_tails((0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9), (8, 9), (3, 8), H)
    assert q1 == (0, 1, 2, 3, 8, 9) and q2 == (5, 6, 7, 8, 3, 4)
    assert (len(q1) - 1) + (len(q2) - 1) >= 9 > 8
    assert is_path(H, q1) and is_path(H, q2)


def test_two_tails_accepts_reversed_inputs():
    q1, q2 = surgery_two_tails((4, 3, 2, 1, 0), (4, 3), (9, 8, 7, 6, 5), (9, 8), (8, 3), H)
    assert len(q1) + len(q2) == 12


@pytest.mark.parametrize(
    "args, code",
    [
        (((0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9, 3), (8, 9), (3, 8)), "p2-not-path"),
        (((0, 1, 2, 3, 4), (1, 2), (5, 6, 7, 8, 9), (8, 9), (3, 8)), "r1-not-tail"),
        (((0, 1, 2, 3, 4), (), (5, 6, 7, 8, 9), (8, 9), (3, 8)), "r1-empty"),
        (((0, 1, 2, 3, 8), (3, 8), (5, 6, 7, 8, 9), (8, 9), (3, 8)), "r1-meets-p2"),
        (((0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9), (8, 9), (2, 3, 8)), "conn-outside-r1"),
        (((0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9), (9,), (3, 8)), "conn-outside-r2"),
        (((0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9), (8, 9), (6, 7)), "conn-misses-p1"),
        (((0, 1, 1, 3, 4), (3, 4), (5, 6, 7, 8, 9), (8, 9), (3, 8)), "p1-not-simple"),
    ],
)
def test_two_tails_errors(args, code):
    g = None if code != "p2-not-path" else H
    with pytest.raises(PreconditionError) as info:
        surgery_two_tails(*args, g=g)
    assert info.value.code == code


def test_two_tails_r2_meets_p1():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 2), (2, 5)])
    with pytest.raises(PreconditionError) as info:
        surgery_two_tails((0, 1, 2), (2,), (3, 4, 2), (4, 2), (2,), g)
    assert info.value.code in ("r1-meets-p2", "r2-meets-p1")


def test_random_two_tails_sum_grows():
    rng = SplitMix64(11)
    for _ in range(300):
        c = sample_two_tails(rng)
        q1, q2 = surgery_two_tails(c["p1"], c["r1"], c["p2"], c["r2"], c["conn"], c["g"])
        assert is_path(c["g"], q1) and is_path(c["g"], q2)
        assert len(q1) + len(q2) > len(c["p1"]) + len(c["p2"])


# -- shared vertex -----------------------------------------------------------------

THETA = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 8), (4, 5), (5, 2), (2, 6), (6, 9), (3, 7), (7, 6), (8, 7)])


def test_shared_vertex_theta():
    out = surgery_shared_vertex((0, 1, 2, 3, 8), (4, 5, 2, 6), 2, (2, 3, 8), (2, 6), (8, 7, 6), THETA)
    assert is_path(THETA, out) and len(out) > 4
    assert out == (4, 5, 2, 3, 8, 7, 6)


def test_shared_vertex_tie_beats_p2():
    out = surgery_shared_vertex((0, 1, 2, 3), (4, 5, 2, 6), 2, (2, 3), (2, 6), (3, 7, 6), THETA)
    assert out == (4, 5, 2, 3, 7, 6) and len(out) - 1 > 3


def test_shared_vertex_other_branch_beats_p1():
    out = surgery_shared_vertex((0, 1, 2, 3), (4, 5, 2, 6, 9), 2, (2, 3), (2, 6, 9), (3, 7, 6), THETA)
    assert is_path(THETA, out)
    # the arm on p2 is not longer here, so p2 is the one beaten
    assert len(out) > 5 or len(out) > 4


def test_shared_vertex_longer_second_arm():
    g = Graph.from_edges(9, [(0, 1), (1, 2), (2, 3), (4, 2), (2, 5), (5, 6), (6, 7), (3, 8), (8, 7)])
    out = surgery_shared_vertex((0, 1, 2, 3), (4, 2, 5, 6, 7), 2, (2, 3), (2, 5, 6, 7), (3, 8, 7), g)
    assert is_path(g, out) and len(out) > 4  # longer than p1
    assert out[:3] == (0, 1, 2)


@pytest.mark.parametrize(
    "args, code",
    [
        (((0, 1, 2, 3), (4, 5, 2, 6), 9, (2, 3), (2, 6), (3, 7, 6)), "z-not-shared"),
        (((0, 1, 2, 3), (4, 5, 2, 6), 2, (2, 3), (2, 6), (3, 2, 6)), "z-on-conn"),
        (((0, 1, 2, 3), (4, 5, 2, 6), 2, (1, 2, 3), (2, 6), (3, 7, 6)), "r1-not-at-z"),
    ],
)
def test_shared_vertex_errors(args, code):
    with pytest.raises(PreconditionError) as info:
        surgery_shared_vertex(*args)
    assert info.value.code == code


# -- corollary -----------------------------------------------------------------------

COR = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 2), (2, 6), (6, 9), (3, 7), (7, 9), (7, 6)])


def test_corollary_shared_branch():
    out = surgery_corollary((0, 1, 2, 3), (4, 5, 2, 6, 9), 2, (2, 3), [(2, 6)], (3, 7, 6), COR)
    assert isinstance(out[0], int) and is_path(COR, out)


def test_corollary_two_tails_branch():
    q1, q2 = surgery_corollary((0, 1, 2, 3), (4, 5, 2, 6, 9), 2, (2, 3), [(9,), (2,)], (3, 7, 9), COR)
    assert is_path(COR, q1) and is_path(COR, q2)
    assert len(q1) + len(q2) > 4 + 5


@pytest.mark.parametrize(
    "pieces, conn, code",
    [
        ([(2, 6)], (0, 7, 6), "conn-r1"),
        ([(5,)], (3, 7, 6), "piece-unanchored"),
        ([(2, 6, 9), (6, 9)], (3, 7, 9), "pieces-overlap"),
        ([(2, 6)], (3, 7, 9), "conn-r2"),
    ],
)
def test_corollary_errors(pieces, conn, code):
    with pytest.raises(PreconditionError) as info:
        surgery_corollary((0, 1, 2, 3), (4, 5, 2, 6, 9), 2, (2, 3), pieces, conn)
    assert info.value.code == code


# -- both longest ------------------------------------------------------------------------


def test_connecting_path_exists_examples():
    assert connecting_path_exists(H, (0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9), (8, 9))
    assert not connecting_path_exists(H, (0, 1, 2, 3, 4), (4,), (5, 6, 7, 8, 9), (8, 9))
    assert not connecting_path_exists(H, (0, 1, 2, 3, 4), (3, 4), (5, 6, 7, 8, 9), (8, 9), blocked=(3,))


def test_search_finds_the_h_configuration_for_non_longest_paths():
    from spgallai.oracle import LongestPathSet

    fake = LongestPathSet(4, ((0, 1, 2, 3, 4), (5, 6, 7, 8, 9)))
    assert any(f["kind"] == "two_tails" for f in both_longest_search(H, fake))


@settings(max_examples=80)
@given(st.one_of(sp_graphs(min_n=2, max_n=12), sp_graphs(min_n=2, max_n=8, families=("random_connected",))))
def test_no_two_longest_paths_admit_surgery(g):
    lps = enumerate_longest_paths(g)
    assume(len(lps) <= 300)  # the pair search is quadratic in |L|
    assert both_longest_search(g, lps) == []


def test_no_surgery_on_wvz():
    assert both_longest_search(wvz()) == []


# -- triangle tails --------------------------------------------------------------------------


def test_p3_trivial_tails():
    g = path_graph(3)
    rep = validate_triangle_tails(complete_to_two_tree(g), g, (0, 1, 2), (0,), (1,), (2,))
    assert rep.intersecting == [] and rep.ok


C4 = Graph.from_edges(4, [(0, 2), (1, 2), (0, 3), (1, 3)])


def test_one_intersecting_pair_sits_in_a_component():
    emb = complete_to_two_tree(C4)
    assert (0, 2, 3) in virtual_triangles(emb)
    rep = validate_triangle_tails(emb, C4, (0, 2, 3), (0,), (2, 1), (3, 1))
    assert rep.intersecting == [(1, 2)]
    assert rep.component.anchor == (2, 3) and rep.component.vertices == {1, 2, 3}


def test_triangle_tail_preconditions():
    emb = complete_to_two_tree(C4)
    with pytest.raises(PreconditionError) as info:
        validate_triangle_tails(emb, C4, (0, 1, 2), (0,), (1,), (2,))
    assert info.value.code == "not-virtual-triangle"
    with pytest.raises(PreconditionError) as info:
        validate_triangle_tails(emb, C4, (0, 2, 3), (0, 2), (2,), (3,))
    assert info.value.code == "r1-hits-triangle"
    with pytest.raises(PreconditionError) as info:
        validate_triangle_tails(emb, C4, (0, 2, 3), (0, 1), (2,), (3,))
    assert info.value.code == "r1-not-path"


def test_side_paths():
    emb = complete_to_two_tree(C4)
    assert check_side_paths(emb, C4, (0, 2, 3), (2, 1), (2, 0), (0, 3))
    with pytest.raises(PreconditionError) as info:
        check_side_paths(emb, C4, (0, 2, 3), (2, 1), (2, 1, 3), (2, 0))
    assert info.value.code == "S2-shape"


def test_random_triangle_tails_hold():
    rng = SplitMix64(5)
    seen_pair = seen_side = 0
    for _ in range(500):
        c = sample_triangle_tails(rng)
        rep = validate_triangle_tails(c["emb"], c["g"], c["triangle"], *c["tails"], side_paths=c["side"])
        assert rep.ok
        seen_pair += bool(rep.intersecting)
        seen_side += rep.side_check is True
    assert seen_pair > 50 and seen_side > 50


def test_lemma_violation_carries_dump():
    err = LemmaViolation("boom", {"triangle": (0, 1, 2)})
    assert isinstance(err, AssertionError) and err.dump["triangle"] == (0, 1, 2)


# -- trace engine --------------------------------------------------------------------------------


def test_triangle_graph_zero_iterations():
    g = complete_graph(3)
    emb, lps = _setup(g)
    tri, steps = find_gallai_triangle(g, emb, lps)
    assert tri == (0, 1, 2) and [s.kind for s in steps] == [TRIANGLE_FOUND]
    assert select_gallai_edge(g, emb, tri, lps) in (0, 1, 2)


def test_p7_triangle_meets_the_path():
    g = path_graph(7)
    emb, lps = _setup(g)
    tri, steps = find_gallai_triangle(g, emb, lps)
    assert all(set(p) & set(tri) for p in lps.paths)
    # the lowest triangle already meets the unique longest path
    assert tri == virtual_triangles(emb)[0] and len(steps) == 1


WALK = Graph.from_edges(11, [(0, 1), (0, 2), (0, 3), (0, 8), (0, 9), (3, 4), (3, 5), (3, 6), (5, 10), (6, 7)])


def test_triangle_walk_moves_when_the_start_is_missed():
    emb, lps = _setup(WALK)
    tri, steps = find_gallai_triangle(WALK, emb, lps)
    start = virtual_triangles(emb)[0]
    assert not all(set(p) & set(start) for p in lps.paths)
    move = steps[0]
    assert move.component is not None and set(move.edge) <= set(start)
    assert set(lps.paths[move.witness]) <= move.component.interior
    assert all(set(p) & set(tri) for p in lps.paths)
    assert steps[-1].component is None and steps[-1].triangle == tri


def test_find_triangle_errors():
    g = path_graph(2)
    emb, lps = _setup(g)
    with pytest.raises(PreconditionError):
        find_gallai_triangle(g, emb, lps)
    g = path_graph(4)
    emb, _ = _setup(g)
    with pytest.raises(PreconditionError) as info:
        find_gallai_triangle(g, emb, enumerate_longest_paths(path_graph(5)))
    assert info.value.code == "stale-lps"


def test_star_returns_centre():
    g = star_graph(3)
    emb, lps = _setup(g)
    tri, _ = find_gallai_triangle(g, emb, lps)
    assert select_gallai_edge(g, emb, tri, lps) == 0


SPIDER = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)])


def test_select_rejects_non_gallai_triangle():
    emb, lps = _setup(SPIDER)
    assert (7, 8, 9) in virtual_triangles(emb)
    with pytest.raises(PreconditionError) as info:
        select_gallai_edge(SPIDER, emb, (7, 8, 9), lps)
    assert info.value.code == "not-gallai-triangle"


def test_spider_centre():
    assert run_trace(SPIDER).final_vertex == 0


DESCENT = Graph.from_edges(8, [(0, 1), (0, 4), (0, 6), (1, 2), (1, 3), (4, 5), (6, 7)])


def test_descent_with_edge_and_iteration():
    emb, lps = _setup(DESCENT)
    steps, v = descend_from_triangle(DESCENT, emb, (5, 6, 7), lps)
    assert [s.kind for s in steps] == [EDGE_SELECTED, COMPONENT_ITERATED, VERTEX_FOUND]
    assert steps[0].edge == (5, 6) and steps[1].edge == (4, 6)
    assert steps[1].component.vertices < steps[0].component.vertices
    assert v == 0 and v in gallai_set_bruteforce(DESCENT)
    trace = ProofTrace([TraceStep(TRIANGLE_FOUND, triangle=(5, 6, 7))] + steps, v, lps.L, lps.paths)
    assert verify_trace(trace, DESCENT) == []


def test_iterate_component_shrinks_or_stops():
    emb, lps = _setup(DESCENT)
    edge, c = select_gallai_edge(DESCENT, emb, (5, 6, 7), lps)
    res = iterate_component(DESCENT, emb, edge, c, lps)
    f, c1 = res
    assert c1.vertices < c.vertices and pair_condition(_masks(lps), f[0], f[1], c1)
    assert iterate_component(DESCENT, emb, f, c1, lps) == 0


def test_iterate_component_rejects_stale_edge():
    emb, lps = _setup(DESCENT)
    edge, c = select_gallai_edge(DESCENT, emb, (5, 6, 7), lps)
    with pytest.raises(PreconditionError):
        iterate_component(DESCENT, emb, (6, 7), c, lps)


def test_single_triangle_iteration_returns_vertex():
    g = complete_graph(3)
    emb, lps = _setup(g)
    assert isinstance(select_gallai_edge(g, emb, (0, 1, 2), lps), int)


def test_run_trace_k1_and_p5():
    tr = run_trace(Graph.from_edges(1, []))
    assert tr.final_vertex == 0 and [s.kind for s in tr.steps] == [VERTEX_FOUND]
    tr = run_trace(path_graph(5))
    # lowest-id tie-breaking stops at the first vertex of the lowest triangle
    assert tr.final_vertex == 0 and verify_trace(tr, path_graph(5)) == []


def test_trace_json_keys():
    doc = run_trace(fan_two_tree(3)).to_json()
    assert set(doc) == {"L", "final_vertex", "steps"}
    assert doc["steps"][-1]["kind"] == VERTEX_FOUND


@settings(max_examples=120)
@given(sp_graphs(min_n=1, max_n=12))
def test_run_trace_verifies(g):
    tr = run_trace(g)
    assert tr.final_vertex in gallai_set_bruteforce(g)
    assert verify_trace(tr, g) == []


@settings(max_examples=60)
@given(sp_graphs(min_n=3, max_n=11), st.integers(0, 1000))
def test_descent_from_every_gallai_triangle(g, seed):
    g = relabel(g, seed)
    emb, lps = _setup(g)
    masks = _masks(lps)
    truth = gallai_set_bruteforce(g)
    for tri in virtual_triangles(emb):
        if not all(m & sum(1 << v for v in tri) for m in masks):
            continue
        steps, v = descend_from_triangle(g, emb, tri, lps)
        assert v in truth
        trace = ProofTrace([TraceStep(TRIANGLE_FOUND, triangle=tri)] + steps, v, lps.L, lps.paths)
        assert verify_trace(trace, g) == []


def test_verify_trace_catches_tampering():
    emb, lps = _setup(DESCENT)
    steps, v = descend_from_triangle(DESCENT, emb, (5, 6, 7), lps)
    head = [TraceStep(TRIANGLE_FOUND, triangle=(5, 6, 7))]
    bad_vertex = ProofTrace(head + steps, 7, lps.L, lps.paths)
    assert any("misses" in p for p in verify_trace(bad_vertex, DESCENT))
    swapped = ProofTrace(head + [steps[1], steps[0], steps[2]], v, lps.L, lps.paths)
    assert verify_trace(swapped, DESCENT)
    stale = ProofTrace(head + steps, v, lps.L, lps.paths[1:])
    assert verify_trace(stale, DESCENT) == ["stored longest paths differ from a fresh enumeration"]
