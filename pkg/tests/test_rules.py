import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperopic import rules
from hyperopic.graphs import (GraphError, bits, clique, common_neighborhood, cycle, mask_of, path,
                              petersen, random_connected, random_tree)
from hyperopic.rules import CAPTURED, SEEN, UNSEEN, Branch, Observation


def test_visibility_examples():
    k3 = clique(3)
    assert not rules.visible(k3, [0], 1)
    assert rules.visible(k3, [0, 1], 1)
    assert rules.visible(path(5), [0], 2)
    assert rules.observe(path(5), [0], 0).kind == CAPTURED


def test_cop_move_options_examples():
    assert rules.cop_move_options(path(3), [1]) == [(0,), (1,), (2,)]
    assert len(rules.cop_move_options(clique(3), [0, 0])) == 6
    # 9 ordered moves, but {1, 3} arises twice
    c4 = rules.cop_move_options(cycle(4), [0, 2])
    brute = {tuple(sorted((a, b))) for a in (0, 1, 3) for b in (1, 2, 3)}
    assert set(c4) == brute and len(c4) == 8


def test_observe_after_cop_move_examples():
    k3 = clique(3)
    assert rules.observe_after_cop_move(k3, [0], mask_of([1, 2])) == [Branch(UNSEEN, mask_of([1, 2]))]
    assert rules.observe_after_cop_move(cycle(4), [1, 3], mask_of([1, 3])) == [Branch(CAPTURED, 0)]
    assert rules.observe_after_cop_move(path(4), [1], mask_of([1])) == [Branch(CAPTURED, 0)]
    with pytest.raises(GraphError):
        rules.observe_after_cop_move(k3, [0], 0)


def test_robber_move_examples():
    assert rules.robber_move_branches(clique(3), [0], mask_of([1, 2])) == [Branch(UNSEEN, mask_of([1, 2]))]
    c5 = rules.robber_move_branches(cycle(5), [0], mask_of([1]))
    assert sorted(c5) == sorted([Branch(SEEN, 1 << 2), Branch(UNSEEN, 1 << 1)])
    assert rules.robber_move_branches(path(3), [1], 1 << 0) == [Branch(UNSEEN, 1 << 0)]
    assert rules.robber_move_branches(path(2), [1], 1 << 0) == [Branch(UNSEEN, 1 << 0)]
    assert rules.robber_move_branches(clique(2), [0, 1], 1 << 0) == [Branch(CAPTURED, 0)]


def test_initial_branch_examples():
    t = path(5)
    got = rules.initial_branches(t, [0])
    assert Branch(UNSEEN, 1 << 1) in got
    assert {b.vertex() for b in got if b.kind == SEEN} == {2, 3, 4}
    kn = rules.initial_branches(clique(6), [0, 1, 2])
    assert kn == [Branch(UNSEEN, mask_of([3, 4, 5]))]
    assert sorted(rules.initial_branches(path(5), [2])) == sorted(
        [Branch(SEEN, 1), Branch(SEEN, 1 << 4), Branch(UNSEEN, mask_of([1, 3]))])


def test_update_belief():
    g = cycle(6)
    assert rules.update_belief(g, [0], g.full, Observation(SEEN, 3)) == 1 << 3
    assert rules.update_belief(g, [0, 2], g.full, Observation(UNSEEN)) == 1 << 1
    assert rules.update_belief(g, [0], 1 << 1, Observation(CAPTURED)) == 0


@st.composite
def walk_setup(draw):
    n = draw(st.integers(2, 9))
    g = random_connected(n, draw(st.sampled_from([0.0, 0.3, 0.7])), draw(st.integers(0, 10**6)))
    k = draw(st.integers(1, 3))
    return g, k, draw(st.integers(0, 10**6))


def _match(branches, cops, g, r):
    """Branches consistent with the concrete robber at r."""
    obs = rules.observe(g, cops, r)
    return [b for b in branches
            if (obs.kind == SEEN and b == Branch(SEEN, 1 << r))
            or (obs.kind == UNSEEN and b.kind == UNSEEN)]


@settings(max_examples=150, deadline=None)
@given(walk_setup())
def test_branch_completeness(setup):
    """A concrete play always follows exactly one branch, which contains the robber."""
    g, k, seed = setup
    rng = random.Random(seed)
    cops = tuple(rng.randrange(g.n) for _ in range(k))
    free = [v for v in range(g.n) if v not in cops]
    if not free:
        return
    r = rng.choice(free)
    hit = _match(rules.initial_branches(g, cops), cops, g, r)
    assert len(hit) == 1 and hit[0].belief >> r & 1
    belief = hit[0].belief
    for _ in range(12):
        cops = tuple(rng.choice(list(bits(g.closed(c)))) for c in cops)
        if r in cops:
            return
        branches = rules.observe_after_cop_move(g, cops, belief)
        hit = _match(branches, cops, g, r)
        assert len(hit) == 1 and hit[0].belief >> r & 1
        _check_unseen(g, cops, hit[0])
        options = [x for x in bits(g.closed(r)) if x not in cops]
        if not options:
            assert rules.robber_move_branches(g, cops, hit[0].belief) != []
            return
        r = rng.choice(options)
        hit = _match(rules.robber_move_branches(g, cops, hit[0].belief), cops, g, r)
        assert len(hit) == 1 and hit[0].belief >> r & 1
        _check_unseen(g, cops, hit[0])
        belief = hit[0].belief


def _check_unseen(g, cops, branch):
    if branch.kind == UNSEEN:
        assert branch.belief & ~common_neighborhood(g, cops) == 0
        assert branch.belief & mask_of(cops) == 0


@settings(max_examples=100, deadline=None)
@given(walk_setup(), st.integers(0, 8))
def test_visibility_monotone_in_cops(setup, extra):
    g, k, seed = setup
    rng = random.Random(seed)
    cops = [rng.randrange(g.n) for _ in range(k)]
    more = cops + [extra % g.n]
    for r in range(g.n):
        if rules.visible(g, cops, r):
            assert rules.visible(g, more, r)


def test_transitions_are_deterministic():
    g = petersen()
    a = rules.robber_move_branches(g, [0, 2], mask_of([1, 6]))
    b = rules.robber_move_branches(g, [2, 0], mask_of([1, 6]))
    assert a == b
    assert rules.canon([3, 1, 2]) == (1, 2, 3)


def test_tree_leaf_start():
    t = random_tree(8, 2)
    leaf = next(v for v in range(t.n) if t.degree(v) == 1)
    unseen = [b for b in rules.initial_branches(t, [leaf]) if b.kind == UNSEEN]
    assert unseen == [Branch(UNSEEN, t.adj[leaf])]
