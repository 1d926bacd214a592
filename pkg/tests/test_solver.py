import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperopic import rules
from hyperopic.acceptance import small_connected_graphs
from hyperopic.graphs import (Graph, GraphError, bits, clique, clique_minus_edges, co_clique, cycle,
                              disjoint_union, grid, metrics, path, petersen, random_connected)
from hyperopic.oracles import naive_classical_win, naive_hyperopic_win
from hyperopic.rules import CAPTURED
from hyperopic.solver import (CLASSICAL, HYPEROPIC, Limits, SearchLimitExceeded,
                              classical_cop_number, classical_copwin, clear_cache, extract_strategy,
                              hyperopic_cop_number, hyperopic_copwin, solve_arena)


def test_copwin_examples():
    assert not hyperopic_copwin(clique(3), 1).cop_win
    assert hyperopic_copwin(path(5), 1).cop_win
    assert not hyperopic_copwin(clique(5), 2).cop_win
    assert hyperopic_copwin(clique(5), 3).cop_win


def test_cop_number_examples():
    assert hyperopic_cop_number(clique_minus_edges(6, [(0, 1)])) == 3
    assert hyperopic_cop_number(petersen()) == 3
    assert hyperopic_cop_number(cycle(4)) == 2
    assert classical_cop_number(path(7)) == 1
    assert classical_cop_number(cycle(4)) == 2
    assert classical_cop_number(petersen()) == 3


def test_result_fields():
    res = hyperopic_copwin(path(5), 1)
    assert res.k == 1 and res.variant == HYPEROPIC and res.visited_positions > 0
    assert res.rounds_bound >= 1 and res.elapsed >= 0 and len(res.placement) == 1
    assert hyperopic_copwin(clique(3), 1).rounds_bound is None


def test_naive_oracle_examples():
    assert naive_hyperopic_win(cycle(4), 2, 4)
    assert not naive_hyperopic_win(cycle(4), 1, 8)
    assert naive_classical_win(cycle(4), 2) and not naive_classical_win(cycle(4), 1)


@pytest.mark.parametrize("g", small_connected_graphs(5), ids=lambda g: g.describe())
def test_classical_matches_naive(g):
    for k in (1, 2):
        assert classical_copwin(g, k).cop_win == naive_classical_win(g, k)


def test_classical_petersen_naive():
    g = petersen()
    assert not naive_classical_win(g, 2)
    assert not classical_copwin(g, 2).cop_win


@pytest.mark.parametrize("g", [cycle(5), path(4), clique(4), grid(2, 3)], ids=lambda g: g.describe())
def test_hyperopic_matches_naive(g):
    for k in (1, 2):
        assert hyperopic_copwin(g, k).cop_win == naive_hyperopic_win(g, k, 3 * g.n)


def test_extract_examples():
    t = extract_strategy(path(3), 1, CLASSICAL)
    assert t.initial == (1,) and t.rounds_bound <= 2
    t = extract_strategy(cycle(4), 2, HYPEROPIC)
    assert t.rounds_bound <= 2
    t = extract_strategy(clique(6), 3, HYPEROPIC)
    assert t.rounds_bound <= 2
    with pytest.raises(ValueError):
        extract_strategy(clique(3), 1)


def _table_ranks_decrease(g, table):
    for (cops, state), new in table.moves.items():
        r = table.ranks[cops, state]
        assert new in rules.cop_move_options(g, cops)
        nexts = []
        if table.variant == HYPEROPIC:
            for b1 in rules.observe_after_cop_move(g, new, state):
                if b1.kind == CAPTURED:
                    continue
                for b2 in rules.robber_move_branches(g, new, b1.belief):
                    if b2.kind != CAPTURED:
                        nexts.append(b2.belief)
        elif state not in new:
            nexts = [x for x in bits(g.closed(state)) if x not in new]
        if r == 1:
            assert not nexts
        for s in nexts:
            assert table.ranks[new, s] < r


@pytest.mark.parametrize("g,k,variant", [
    (cycle(4), 2, HYPEROPIC), (petersen(), 3, HYPEROPIC), (path(6), 1, HYPEROPIC),
    (grid(3, 3), 2, HYPEROPIC), (petersen(), 3, CLASSICAL), (cycle(6), 2, CLASSICAL),
], ids=str)
def test_table_moves_decrease_rank(g, k, variant):
    _table_ranks_decrease(g, extract_strategy(g, k, variant))


def test_lonely_classical_table():
    t = extract_strategy(cycle(4), 2, CLASSICAL, lonely=True)
    assert len(set(t.initial)) == 2
    assert all(len(set(m)) == len(m) for m in t.moves.values())


@pytest.mark.parametrize("g", [cycle(5), petersen(), grid(3, 3), clique(5), path(5)],
                         ids=lambda g: g.describe())
def test_belief_monotonicity(g):
    """A winning (C, B) makes every explored (C, B') with B' inside B winning."""
    for k in (1, 2):
        _, arena = solve_arena(g, k)
        by_conf = {}
        for i, key in enumerate(arena.keys):
            ci, b = arena.unpack(key)
            by_conf.setdefault(ci, []).append((b, arena.rank[i] > 0))
        for items in by_conf.values():
            winning = [b for b, w in items if w]
            losing = [b for b, w in items if not w]
            for b in winning:
                assert not any(l & ~b == 0 for l in losing)


@pytest.mark.parametrize("g", [cycle(5), petersen(), clique(6), grid(3, 3)], ids=lambda g: g.describe())
def test_monotone_in_k(g):
    top = min(math.ceil(g.n / 2) + 1, 4)
    wins = [hyperopic_copwin(g, k).cop_win for k in range(1, top + 1)]
    assert wins == sorted(wins)
    assert wins[-1]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.sampled_from([0.0, 0.1, 0.3, 0.6]), st.integers(0, 10**6))
def test_tree_characterization(n, extra, seed):
    g = random_connected(n, extra, seed)
    assert (hyperopic_cop_number(g) == 1) == metrics(g).is_tree


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.sampled_from([0.2, 0.5, 0.9]), st.integers(0, 10**6))
def test_sandwich(n, extra, seed):
    g = random_connected(n, extra, seed)
    assert classical_cop_number(g) <= hyperopic_cop_number(g) <= math.ceil(n / 2)


def test_limits_are_reported():
    clear_cache()
    with pytest.raises(SearchLimitExceeded):
        hyperopic_copwin(grid(3, 4), 2, Limits(max_positions=50))
    with pytest.raises(SearchLimitExceeded) as info:
        hyperopic_cop_number(clique(7), Limits(max_positions=200))
    assert info.value.lower is not None


def test_disconnected_rejected():
    g = disjoint_union(path(2), path(2))
    with pytest.raises(GraphError):
        hyperopic_copwin(g, 1)
    with pytest.raises(GraphError):
        hyperopic_copwin(co_clique(2), 1)


def test_single_vertex():
    g = Graph.from_edges(1, [])
    assert hyperopic_cop_number(g) == 1
    assert hyperopic_copwin(g, 1).rounds_bound == 0
