import itertools
import random
from fractions import Fraction

import pytest

from orderedparity.core import OutOfRangeError
from orderedparity.gtsp import (
    BinarizedSolution,
    CutConfig,
    CutKind,
    DisconnectedError,
    DuplicateEdgeError,
    Graph,
    GraphParseError,
    OrderingViolatedError,
    SelfLoopError,
    TooManyNodesError,
    blossom_weights_original,
    blossom_weights_strengthened,
    cutting_plane_solve,
    cycle_graph,
    greedy_odd_flip_set,
    load_graph,
    min_odd_cut,
    petersen_graph,
    separate_connectivity,
    stoer_wagner_min_cut,
    unfold_original_flip_set,
)

F = Fraction

K4 = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def test_load_square():
    g = load_graph("4 4\n0 1\n1 2\n2 3\n3 0")
    assert g.n == 4
    assert set(g.edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_load_path_and_comments():
    g = load_graph("# a path\n3 2\n0 1\n\n1 2\n")
    assert g.n == 3 and g.m == 2


def test_load_rejects_disconnected():
    with pytest.raises(DisconnectedError):
        load_graph("3 1\n0 1")


def test_load_parse_errors_carry_line_numbers():
    with pytest.raises(GraphParseError, match="line 2"):
        load_graph("3 2\n0 x\n1 2")
    with pytest.raises(SelfLoopError):
        load_graph("3 3\n0 1\n1 2\n2 2")
    with pytest.raises(DuplicateEdgeError):
        load_graph("3 3\n0 1\n1 2\n1 0")
    with pytest.raises(GraphParseError):
        load_graph("3 2\n0 1")  # fewer edge lines than promised


def test_stoer_wagner_on_cycle():
    value, side = stoer_wagner_min_cut(cycle_graph(5), [F(1)] * 5)
    assert value == 2
    assert 0 < len(side) < 5


def test_stoer_wagner_weighted():
    # a dumbbell: two triangles joined by one light edge
    g = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)))
    weights = [F(5)] * 6 + [F(1, 3)]
    value, side = stoer_wagner_min_cut(g, weights)
    assert value == F(1, 3)
    assert sorted(side) in ([0, 1, 2], [3, 4, 5])


def test_connectivity_separation_examples():
    c4 = cycle_graph(4)
    assert separate_connectivity(c4, [F(1)] * 4) is None
    cut = separate_connectivity(c4, [F(1, 2)] * 4)
    assert cut is not None
    assert cut.kind is CutKind.CONNECTIVITY
    assert cut.beta == 1
    assert 0 not in cut.s_nodes
    assert separate_connectivity(K4, [F(2, 3)] * 6) is None


def test_blossom_weights_original_examples():
    pairs = [((1, 0), (1, 0)), ((F(1, 2), F(1, 2)), (1, 1)), ((1, 1), (0, 1))]
    for (a, b), (ce, cpe) in pairs:
        c, cp = blossom_weights_original(BinarizedSolution((F(a),), (F(b),)))
        assert (c[0], cp[0]) == (ce, cpe)


def test_blossom_weights_strengthened_examples():
    pairs = [((1, 0), (1, 0)), ((F(1, 2), F(1, 2)), (0, 1)),
             ((F(3, 4), F(1, 4)), (F(1, 2), F(1, 2)))]
    for (a, b), (ce, cpe) in pairs:
        c, cp = blossom_weights_strengthened(BinarizedSolution((F(a),), (F(b),)))
        assert (c[0], cp[0]) == (ce, cpe)


def test_binarized_solution_validation():
    with pytest.raises(OrderingViolatedError):
        BinarizedSolution((F(1, 4),), (F(1, 2),))
    with pytest.raises(OrderingViolatedError):
        BinarizedSolution((F(3, 2),), (F(0),))


def test_min_odd_cut_single_edge():
    cut = min_odd_cut(Graph(2, ((0, 1),)), (F(1),), (F(0),))
    assert cut.s_nodes == frozenset({1})
    assert cut.f_edges == frozenset({0})
    assert cut.beta == 0


def test_min_odd_cut_on_square():
    c4 = cycle_graph(4)
    cut = min_odd_cut(c4, (F(1),) * 4, (F(0),) * 4)
    assert cut.beta == 1
    cut = min_odd_cut(c4, (F(0),) * 4, (F(1),) * 4)
    assert cut.beta == 1
    assert len(cut.f_edges) == 1


def test_min_odd_cut_guard():
    with pytest.raises(TooManyNodesError):
        min_odd_cut(cycle_graph(19), (F(1),) * 19, (F(0),) * 19)


def test_greedy_flip_set_matches_exhaustive_small():
    rng = random.Random(3)
    for _ in range(120):
        size = rng.randint(1, 9)
        edges = tuple(range(size))
        c = {e: F(rng.randint(0, 12), 4) for e in edges}
        cp = {e: F(rng.randint(0, 12), 4) for e in edges}
        f_set, beta = greedy_odd_flip_set(edges, c, cp)
        assert len(f_set) % 2 == 1
        best = min(
            sum(cp[e] for e in comb) + sum(c[e] for e in edges if e not in comb)
            for r in range(1, size + 1, 2)
            for comb in itertools.combinations(edges, r))
        assert beta == best


def test_unfold_keeps_folded_cost():
    sol = BinarizedSolution((F(1), F(3, 4), F(1, 2), F(1, 8)),
                            (F(1), F(1, 4), F(1, 2), F(0)))
    c, cp = blossom_weights_original(sol)
    delta = (0, 1, 2, 3)
    f_folded = frozenset({1, 3})
    pairs = unfold_original_flip_set(sol, delta, f_folded)
    x = {1: sol.x1, 2: sol.x2}
    unfolded = sum(
        (1 - x[lvl][e]) if (e, lvl) in pairs else x[lvl][e]
        for e in delta for lvl in (1, 2))
    folded = sum(cp[e] for e in f_folded) + sum(
        c[e] for e in delta if e not in f_folded)
    assert unfolded == folded


def test_solve_needs_three_nodes():
    with pytest.raises(OutOfRangeError):
        cutting_plane_solve(Graph(2, ((0, 1),)))


def test_parity_separation_node_guard():
    with pytest.raises(TooManyNodesError):
        cutting_plane_solve(cycle_graph(19), CutConfig(blossom_original=True))


def test_five_cycle_all_configs():
    for config in (CutConfig(),
                   CutConfig(blossom_original=True),
                   CutConfig(blossom_strengthened=True),
                   CutConfig(blossom_original=True, blossom_strengthened=True)):
        report = cutting_plane_solve(cycle_graph(5), config)
        assert report.final_bound == 5
        assert not report.round_cap_hit
        assert all(v == 1 for v in report.final_solution.z)


def test_round_cap_reporting():
    report = cutting_plane_solve(petersen_graph(), CutConfig(max_rounds=1))
    assert report.round_cap_hit
    assert "round cap exceeded" in report.render()


def test_report_render_structure():
    report = cutting_plane_solve(
        petersen_graph(),
        CutConfig(blossom_original=True, blossom_strengthened=True))
    text = report.render()
    assert text.splitlines()[0] == "graph: 10 nodes, 15 edges (desk-scale instance)"
    assert "round 1: bound 10, +1 connectivity, +0 blossom" in text
    assert "bound 10" in text
    assert "total cuts:" in text
    assert "hedging floor" in text


def _integral_tours(g):
    """All z in {0,1,2}^m whose support is spanning, connected, and whose
    degrees are all even and positive: exactly the closed-walk edge counts."""
    for z in itertools.product((0, 1, 2), repeat=g.m):
        deg = [0] * g.n
        for e, (u, v) in enumerate(g.edges):
            deg[u] += z[e]
            deg[v] += z[e]
        if any(d == 0 or d % 2 for d in deg):
            continue
        seen = {0}
        frontier = [0]
        while frontier:
            u = frontier.pop()
            for e in g.incident(u):
                if z[e] == 0:
                    continue
                a, b = g.edges[e]
                w = b if a == u else a
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) == g.n:
            yield z


def test_generated_cuts_never_cut_off_integral_tours():
    for g in (cycle_graph(4), cycle_graph(5), K4):
        report = cutting_plane_solve(
            g, CutConfig(blossom_original=True, blossom_strengthened=True))
        tours = list(_integral_tours(g))
        assert tours
        best_tour = min(sum(z) for z in tours)
        assert report.final_bound <= best_tour
        for z in tours:
            x1 = tuple(F(1) if v >= 1 else F(0) for v in z)
            x2 = tuple(F(1) if v == 2 else F(0) for v in z)
            flat = tuple(F(v) for v in z) + x1 + x2
            for coeffs, sense, rhs in report.cut_rows:
                lhs = sum(a * b for a, b in zip(coeffs, flat))
                assert sense == ">="
                assert lhs >= rhs, (g.edges, z, coeffs, rhs)
