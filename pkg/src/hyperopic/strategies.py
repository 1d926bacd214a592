"""Executable cop strategies and an exhaustive adversarial verifier.

A strategy is a deterministic controller with immutable, hashable state
``(belief, extra)``.  The belief is kept exactly (the set of robber vertices
consistent with the observations); ``extra`` holds whatever else a strategy
remembers.  The verifier enumerates every robber behaviour against the
controller, memoised on ``(state, cops, robber)``, and either certifies
capture with a worst-case round count or returns an escaping play.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import rules
from .graphs import (Graph, _reach, bits, common_neighborhood, contains_biclique,
                     greedy_dominating_set, mask_of, metrics)
from .rules import CAPTURED, SEEN, UNSEEN, Observation, canon
from .solver import (CLASSICAL, HYPEROPIC, Limits, SearchLimitExceeded, StrategyTable,
                     classical_cop_number, extract_strategy, hyperopic_cop_number)

__all__ = [
    "Strategy",
    "StrategyInapplicable",
    "StrategyInvariantError",
    "Verdict",
    "CATALOG",
    "make_strategy",
    "verify_strategy",
    "certify",
    "playout",
    "lonely_check",
    "transcript_lines",
    "TableStrategy",
]


class StrategyInapplicable(ValueError):
    """The graph does not meet the strategy's preconditions."""


class StrategyInvariantError(AssertionError):
    """A strategy broke the invariant its correctness argument relies on."""


class StrategyStuck(RuntimeError):
    """The controller reached a situation its rules do not cover."""


# ------------------------------------------------------------------ helpers

def _match(left: list, rights: list, ok) -> dict | None:
    """Kuhn matching saturating ``left``; returns left-index -> right-index."""
    owner: dict[int, int] = {}

    def augment(li, seen):
        for ri in range(len(rights)):
            if ri in seen or not ok(left[li], rights[ri]):
                continue
            seen.add(ri)
            if ri not in owner or augment(owner[ri], seen):
                owner[ri] = li
                return True
        return False

    for li in range(len(left)):
        if not augment(li, set()):
            return None
    return {li: ri for ri, li in owner.items()}


def cover_move(g: Graph, cops: tuple, targets: int) -> tuple | None:
    """Move distinct cops onto every vertex of ``targets``; the rest stay put."""
    ts = list(bits(targets))
    if not ts or len(ts) > len(cops):
        return None
    m = _match(ts, list(range(len(cops))), lambda t, i: g.closed(cops[i]) >> t & 1)
    if m is None:
        return None
    new = list(cops)
    for ti, ci in m.items():
        new[ci] = ts[ti]
    return tuple(new)


def assign_moves(g: Graph, old: tuple, target) -> tuple:
    """Order the multiset ``target`` so that cop i moves within N[old[i]]."""
    target = list(target)
    m = _match(list(range(len(old))), target, lambda i, t: g.closed(old[i]) >> t & 1)
    if m is None:
        raise StrategyStuck(f"{canon(target)} is not one move away from {canon(old)}")
    return tuple(target[m[i]] for i in range(len(old)))


@lru_cache(maxsize=64)
def distances(g: Graph) -> tuple[tuple[int, ...], ...]:
    out = []
    for s in range(g.n):
        d = [-1] * g.n
        d[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in bits(g.adj[v]):
                    if d[u] < 0:
                        d[u] = d[v] + 1
                        nxt.append(u)
            frontier = nxt
        out.append(tuple(d))
    return tuple(out)


def step_toward(g: Graph, a: int, b: int) -> int:
    d = distances(g)[b]
    return min(bits(g.closed(a)), key=lambda x: (d[x], x))


def _single(mask: int) -> int | None:
    if mask and not mask & (mask - 1):
        return mask.bit_length() - 1
    return None


def _play_table(g: Graph, table: StrategyTable, cops: tuple, r: int) -> tuple:
    """Follow a classical table once inside its winning region, else walk the
    cops (cop i to ``table.initial[i]``) toward the table's placement."""
    key = (canon(cops), r)
    if key in table.moves:
        return assign_moves(g, cops, table.moves[key])
    return tuple(step_toward(g, c, t) for c, t in zip(cops, table.initial))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise StrategyInapplicable(msg)


# ------------------------------------------------------------------ base

class Strategy:
    """Base controller.  Subclasses set ``k`` and implement ``placement`` and
    ``decide``; ``check`` may assert invariants after robber moves."""

    name = ""
    capture_first = True

    def __init__(self, g: Graph):
        self.g = g
        self.k = 0

    def placement(self) -> tuple:
        raise NotImplementedError

    def initial_extra(self):
        return None

    def decide(self, belief: int, cops: tuple, extra):
        raise StrategyStuck(f"{self.name}: no rule for belief {sorted(bits(belief))} "
                            f"with cops at {cops}")

    def check(self, belief: int, cops: tuple, extra, obs: Observation) -> None:
        pass

    # driver interface

    def start(self):
        cops = tuple(self.placement())
        return (self.g.full & ~mask_of(cops), self.initial_extra()), cops

    def update(self, state, cops: tuple, obs: Observation, phase: str):
        belief, extra = state
        occ = mask_of(cops)
        if phase == "cops":
            prior = belief & ~occ
        elif phase == "robber":
            prior = self.g.closed_of(belief) & ~occ
        else:
            prior = belief
        return rules.update_belief(self.g, cops, prior, obs), extra

    def move(self, state, cops: tuple):
        belief, extra = state
        if self.capture_first:
            hit = cover_move(self.g, cops, belief)
            if hit is not None:
                return state, hit
        new, extra = self.decide(belief, cops, extra)
        return (belief, extra), tuple(new)


class TreeStrategy(Strategy):
    name = "tree"

    def __init__(self, g: Graph):
        super().__init__(g)
        _require(metrics(g).is_tree, "graph is not a tree")
        self.k = 1

    def placement(self):
        return (min(v for v in range(self.g.n) if self.g.degree(v) <= 1),)

    def decide(self, belief, cops, extra):
        r = _single(belief)
        if r is None:
            return super().decide(belief, cops, extra)
        return (step_toward(self.g, cops[0], r),), extra


class DominatingSetStrategy(Strategy):
    name = "dominating_set"

    def __init__(self, g: Graph, k: int | None = None):
        super().__init__(g)
        _require(g.is_connected() and g.n >= 2, "needs a connected graph on >= 2 vertices")
        self.dom = greedy_dominating_set(g)
        self.k = k or -(-g.n // 2)
        _require(self.k >= self.dom.bit_count(), "too few cops for the dominating set")

    def placement(self):
        cops = list(bits(self.dom))
        cops += [v for v in range(self.g.n) if not self.dom >> v & 1][:self.k - len(cops)]
        return tuple(cops)


def _missing_edges(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]


class CliqueMinusEdgeStrategy(Strategy):
    name = "clique_minus_edge"

    def __init__(self, g: Graph):
        super().__init__(g)
        miss = _missing_edges(g)
        _require(g.n >= 4 and len(miss) == 1, "graph is not K_n - e with n >= 4")
        self.u, self.v = miss[0]
        self.k = g.n // 2

    def placement(self):
        others = [x for x in range(self.g.n) if x not in (self.u, self.v)]
        return (self.u, *others[:self.k - 1])


class CliqueMinusTwoEdgesStrategy(Strategy):
    name = "clique_minus_two_edges"

    def __init__(self, g: Graph):
        super().__init__(g)
        miss = _missing_edges(g)
        _require(g.n >= 5 and len(miss) == 2, "graph is not K_n - 2e with n >= 5")
        self.k = -(-g.n // 2) - 1
        (a, b), (c, d) = miss
        shared = {a, b} & {c, d}
        if shared:
            u = shared.pop()
            self.pattern = "shared"
            self.anchors = (u,)
            self.excluded = {a, b, c, d}
        else:
            self.pattern = "disjoint"
            self.anchors = (a, c)
            self.excluded = {a, b, c, d}

    def placement(self):
        rest = [x for x in range(self.g.n) if x not in self.excluded]
        return (*self.anchors, *rest[:self.k - len(self.anchors)])


class CutVertexCompositeStrategy(Strategy):
    """One sentinel guards a neighbour of a cut vertex; c cops play a
    classical winning table in the robber's part of the graph."""

    name = "cut_vertex_composite"

    def __init__(self, g: Graph, table: StrategyTable):
        super().__init__(g)
        cuts = metrics(g).cut_vertices
        _require(bool(cuts), "graph has no cut vertex")
        _require(table.variant == CLASSICAL, "needs a classical table")
        self.table = table
        self.k = table.k + 1
        self.u = u = min(bits(cuts))
        nbrs = g.neighbors(u)
        self.v = nbrs[0]
        self.side_v = _reach(g, self.v, removed=1 << u)
        self.w = next(x for x in nbrs if not self.side_v >> x & 1)
        self.side_w = _reach(g, self.w, removed=1 << u)

    def placement(self):
        return (self.v,) + (self.w,) * (self.k - 1)

    def decide(self, belief, cops, sentinel):
        r = _single(belief)
        if r is None:
            return super().decide(belief, cops, sentinel)
        if sentinel is None:
            sentinel = 0 if self.side_w >> r & 1 else 1
        players = tuple(c for i, c in enumerate(cops) if i != sentinel)
        moved = iter(_play_table(self.g, self.table, players, r))
        new = tuple(c if i == sentinel else next(moved) for i, c in enumerate(cops))
        return new, sentinel

    def check(self, belief, cops, sentinel, obs):
        if sentinel is not None and cops[sentinel] != (self.v, self.w)[sentinel]:
            raise StrategyInvariantError("sentinel left its post")
        if obs.kind == UNSEEN and belief != 1 << self.u:
            raise StrategyInvariantError(f"robber hidden away from the cut vertex {self.u}")


class TriangleFreeShadowStrategy(Strategy):
    """c table cops plus a shadow that trails cop 0 by one step."""

    name = "triangle_free_shadow"

    def __init__(self, g: Graph, table: StrategyTable):
        super().__init__(g)
        m = metrics(g)
        _require(m.triangle_free and g.n >= 2, "graph has a triangle")
        _require(table.variant == CLASSICAL, "needs a classical table")
        self.table = table
        self.c = table.k
        self.k = self.c + 1

    def placement(self):
        lead = self.table.initial[0]
        return (*self.table.initial, min(bits(self.g.adj[lead])))

    def decide(self, belief, cops, extra):
        r = _single(belief)
        if r is None:
            return super().decide(belief, cops, extra)
        players = cops[:self.c]
        new = _play_table(self.g, self.table, players, r)
        shadow = cops[-1] if new[0] == players[0] else players[0]
        return (*new, shadow), extra

    def check(self, belief, cops, extra, obs):
        if not self.g.has_edge(cops[0], cops[-1]):
            raise StrategyInvariantError("shadow not adjacent to its lead cop")
        if obs.kind != SEEN:
            raise StrategyInvariantError("robber became invisible")


class Diameter3SentinelsStrategy(Strategy):
    name = "diameter3_sentinels"

    def __init__(self, g: Graph, table: StrategyTable):
        super().__init__(g)
        d = distances(g)
        far = [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if d[a][b] >= 3]
        _require(bool(far), "diameter below 3")
        _require(table.variant == CLASSICAL, "needs a classical table")
        self.posts = far[0]
        self.table = table
        self.k = table.k + 2

    def placement(self):
        return (*self.posts, *self.table.initial)

    def decide(self, belief, cops, extra):
        r = _single(belief)
        if r is None:
            return super().decide(belief, cops, extra)
        return (*self.posts, *_play_table(self.g, self.table, cops[2:], r)), extra

    def check(self, belief, cops, extra, obs):
        if cops[:2] != self.posts or obs.kind != SEEN:
            raise StrategyInvariantError("sentinels moved or robber hidden")


class MinDegreeSentinelStrategy(Strategy):
    name = "min_degree_sentinel"

    def __init__(self, g: Graph, table: StrategyTable):
        super().__init__(g)
        m = metrics(g)
        _require(table.variant == CLASSICAL, "needs a classical table")
        _require(m.diameter is not None and m.diameter >= 3, "diameter below 3")
        _require(m.min_degree <= table.k, "minimum degree exceeds the cop number")
        self.table = table
        self.k = table.k + 1
        self.post = min(range(g.n), key=lambda x: (g.degree(x), x))
        self.delta = m.min_degree

    def placement(self):
        nbrs = self.g.neighbors(self.post)
        guards = nbrs + [nbrs[0]] * (self.table.k - len(nbrs))
        return (self.post, *guards)

    def decide(self, belief, cops, extra):
        r = _single(belief)
        if r is None:
            return super().decide(belief, cops, extra)
        return (self.post, *_play_table(self.g, self.table, cops[1:], r)), extra

    def check(self, belief, cops, extra, obs):
        if cops[0] != self.post:
            raise StrategyInvariantError("sentinel left the minimum-degree vertex")
        if obs.kind == UNSEEN and (belief & ~self.g.adj[self.post] or belief.bit_count() > self.delta):
            raise StrategyInvariantError("hidden robber outside N(v) or too many candidates")


class Diameter2DeltaStrategy(Strategy):
    name = "diameter2_delta"

    def __init__(self, g: Graph):
        super().__init__(g)
        m = metrics(g)
        _require(m.diameter == 2, "diameter is not 2")
        self.u = min(range(g.n), key=lambda x: (g.degree(x), x))
        self.k = m.min_degree + 1

    def placement(self):
        return (self.u, *self.g.neighbors(self.u))


class Diameter2MaxDegStrategy(Strategy):
    name = "diameter2_maxdeg"

    def __init__(self, g: Graph):
        super().__init__(g)
        m = metrics(g)
        _require(m.diameter == 2, "diameter is not 2")
        self.u = min(range(g.n), key=lambda x: (-g.degree(x), x))
        nbrs = g.neighbors(self.u)
        self.gap = nbrs[-1]
        self.k = m.max_degree

    def placement(self):
        return (self.u, *[x for x in self.g.neighbors(self.u) if x != self.gap])

    def decide(self, belief, cops, extra):
        if _single(belief) is not None and cops[0] == self.u:
            return (self.gap, *cops[1:]), extra
        return super().decide(belief, cops, extra)


class JoinIsolatedStrategy(Strategy):
    """Cops of a hyperopic table for G plus one cop parked on a vertex of J
    that is isolated in J (its neighbourhood is exactly V(G))."""

    name = "join_isolated"

    def __init__(self, g: Graph, base: Graph, table: StrategyTable):
        super().__init__(g)
        nb = base.n
        gmask = base.full
        _require(table.variant == HYPEROPIC and table.graph == base, "needs a hyperopic table for G")
        _require(g.n > nb, "J is empty")
        _require(all(g.adj[v] & gmask == base.adj[v] and g.adj[v] >> nb == (1 << (g.n - nb)) - 1
                     for v in range(nb)), "graph is not G v J with G on the low indices")
        iso = [z for z in range(nb, g.n) if g.adj[z] == gmask]
        _require(bool(iso), "J has no isolated vertex")
        self.base = base
        self.z = iso[0]
        self.table = table
        self.k = table.k + 1

    def placement(self):
        return (*self.table.initial, self.z)

    def decide(self, belief, cops, extra):
        players = cops[:-1]
        key = (canon(players), belief)
        if belief & ~self.base.full or key not in self.table.moves:
            return super().decide(belief, cops, extra)
        return (*assign_moves(self.g, players, self.table.moves[key]), self.z), extra


class IncidencePlaneStrategy(Strategy):
    """q+1 cops on points of a projective plane's incidence graph."""

    name = "incidence_plane"

    def __init__(self, g: Graph):
        super().__init__(g)
        degs = {g.degree(v) for v in range(g.n)}
        _require(len(degs) == 1, "graph is not regular")
        q = degs.pop() - 1
        _require(q >= 2 and g.n == 2 * (q * q + q + 1), "vertex count does not match a plane")
        m = metrics(g)
        _require(m.girth == 6 and m.diameter == 3, "not the incidence graph of a projective plane")
        layers = [0, 0]
        for depth, d in enumerate(distances(g)[0]):
            layers[d % 2] |= 1 << depth
        self.points = layers[0]
        self.q = q
        self.k = q + 1

    def is_point(self, x: int) -> bool:
        return bool(self.points >> x & 1)

    def meet(self, a: int, b: int) -> int:
        """Unique line through two points, or unique point on two lines."""
        common = self.g.adj[a] & self.g.adj[b]
        return common.bit_length() - 1

    def placement(self):
        first_line = next(x for x in range(self.g.n) if not self.is_point(x))
        on_line = list(bits(self.g.adj[first_line]))
        off = next(p for p in bits(self.points) if not self.g.has_edge(p, first_line))
        return (*on_line[:self.q], off)

    def decide(self, belief, cops, extra):
        r = _single(belief)
        if r is None:
            return super().decide(belief, cops, extra)
        on_lines = [i for i, c in enumerate(cops) if not self.is_point(c)]
        if self.is_point(r):
            if on_lines:
                return super().decide(belief, cops, extra)
            # force the robber off its point: cop 0 moves onto a line through it
            return (self.meet(cops[0], r), *cops[1:]), extra
        targets = list(bits(self.g.adj[r]))
        if not on_lines:
            return tuple(self.meet(c, s) for c, s in zip(cops, targets)), extra
        if len(on_lines) == len(cops):
            return tuple(self.meet(c, r) for c in cops), extra
        if len(on_lines) == 1:
            lead = on_lines[0]
            p = self.meet(cops[lead], r)
            rest = iter(s for s in targets if s != p)
            return tuple(p if i == lead else self.meet(c, next(rest))
                         for i, c in enumerate(cops)), extra
        return super().decide(belief, cops, extra)


class LonelyLiftStrategy(Strategy):
    """Run a lonely classical strategy with d cops on a K_{d,d+1}-free graph."""

    name = "lonely_lift"

    def __init__(self, g: Graph, table: StrategyTable):
        super().__init__(g)
        _require(table.variant == CLASSICAL, "needs a classical table")
        self.d = table.k
        _require(not contains_biclique(g, self.d), f"graph contains K_{{{self.d},{self.d + 1}}}")
        _require(lonely_check(table), "classical table is not lonely")
        self.table = table
        self.k = self.d

    def placement(self):
        return self.table.initial

    def decide(self, belief, cops, extra):
        r = _single(belief)
        key = (canon(cops), r)
        if r is None or key not in self.table.moves:
            return super().decide(belief, cops, extra)
        return assign_moves(self.g, cops, self.table.moves[key]), extra

    def check(self, belief, cops, extra, obs):
        if obs.kind == UNSEEN and belief.bit_count() > self.d:
            raise StrategyInvariantError("hidden robber has more than d candidate positions")


class TableStrategy(Strategy):
    """Replay a solver table verbatim (no opportunistic captures)."""

    capture_first = False

    def __init__(self, table: StrategyTable):
        super().__init__(table.graph)
        self.table = table
        self.k = table.k
        self.name = f"{table.variant}_table"

    def placement(self):
        return self.table.initial

    def decide(self, belief, cops, extra):
        state = belief if self.table.variant == HYPEROPIC else _single(belief)
        key = (canon(cops), state)
        if key not in self.table.moves:
            return super().decide(belief, cops, extra)
        return assign_moves(self.g, cops, self.table.moves[key]), extra


# ------------------------------------------------------------------ catalog

def _classical_table(g: Graph, limits: Limits | None, lonely: bool = False, k: int | None = None):
    k = k or classical_cop_number(g, limits)
    return extract_strategy(g, k, CLASSICAL, limits, lonely=lonely)


def _with_table(cls):
    def build(g, table=None, limits=None):
        return cls(g, table or _classical_table(g, limits))
    return build


def _join_isolated(g, base=None, table=None, limits=None):
    _require(base is not None, "join_isolated needs the base graph G")
    if table is None:
        table = extract_strategy(base, hyperopic_cop_number(base, limits), HYPEROPIC, limits)
    return JoinIsolatedStrategy(g, base, table)


def _lonely_lift(g, table=None, d=2, limits=None):
    if table is None:
        table = _classical_table(g, limits, lonely=True, k=d)
    return LonelyLiftStrategy(g, table)


CATALOG = {
    "tree": lambda g, **kw: TreeStrategy(g),
    "dominating_set": lambda g, k=None, **kw: DominatingSetStrategy(g, k),
    "clique_minus_edge": lambda g, **kw: CliqueMinusEdgeStrategy(g),
    "clique_minus_two_edges": lambda g, **kw: CliqueMinusTwoEdgesStrategy(g),
    "cut_vertex_composite": _with_table(CutVertexCompositeStrategy),
    "triangle_free_shadow": _with_table(TriangleFreeShadowStrategy),
    "diameter3_sentinels": _with_table(Diameter3SentinelsStrategy),
    "min_degree_sentinel": _with_table(MinDegreeSentinelStrategy),
    "diameter2_delta": lambda g, **kw: Diameter2DeltaStrategy(g),
    "diameter2_maxdeg": lambda g, **kw: Diameter2MaxDegStrategy(g),
    "join_isolated": _join_isolated,
    "incidence_plane": lambda g, **kw: IncidencePlaneStrategy(g),
    "lonely_lift": _lonely_lift,
}


def make_strategy(name: str, g: Graph, **params) -> Strategy:
    try:
        build = CATALOG[name]
    except KeyError:
        raise StrategyInapplicable(f"unknown strategy {name!r}") from None
    if not g.is_connected():
        raise StrategyInapplicable("graph is not connected")
    return build(g, **params)


# ------------------------------------------------------------------ verifier

@dataclass
class Verdict:
    strategy: str
    k: int
    outcome: str  # "capture" | "escape" | "inapplicable"
    rounds: int | None = None
    explored: int = 0
    witness: list = field(default_factory=list)
    reason: str = ""

    @property
    def captured(self) -> bool:
        return self.outcome == "capture"


def _observe(g: Graph, cops: tuple, r: int, visibility: str) -> Observation:
    if visibility == CLASSICAL and r not in cops:
        return Observation(SEEN, r)
    return rules.observe(g, cops, r)


def _legal(g: Graph, old: tuple, new: tuple, k: int) -> None:
    if len(new) != k or any(not g.closed(a) >> b & 1 for a, b in zip(old, new)):
        raise StrategyInvariantError(f"illegal cop move {old} -> {new}")


class _Explorer:
    def __init__(self, g: Graph, s: Strategy, visibility: str, limits: Limits):
        self.g, self.s, self.visibility, self.limits = g, s, visibility, limits
        self.rank: dict = {}
        self.kids: dict = {}

    def roots(self):
        state0, cops = self.s.start()
        if len(cops) != self.s.k or any(not 0 <= c < self.g.n for c in cops):
            raise StrategyInvariantError(f"bad placement {cops}")
        out = []
        for r in range(self.g.n):
            if r in cops:
                continue
            obs = _observe(self.g, cops, r, self.visibility)
            st = self.s.update(state0, cops, obs, "place")
            self.s.check(st[0], cops, st[1], obs)
            out.append((st, cops, r))
        return out

    def children(self, node):
        """Successor nodes; an empty list means the round ends in capture."""
        st, cops, r = node
        st, new = self.s.move(st, cops)
        _legal(self.g, cops, new, self.s.k)
        if r in new:
            return [], new
        obs = _observe(self.g, new, r, self.visibility)
        st = self.s.update(st, new, obs, "cops")
        out = []
        for r2 in bits(self.g.closed(r) & ~mask_of(new)):
            obs2 = _observe(self.g, new, r2, self.visibility)
            st2 = self.s.update(st, new, obs2, "robber")
            self.s.check(st2[0], new, st2[1], obs2)
            out.append((st2, new, r2))
        return out, new

    def run(self) -> tuple[str, list, str]:
        """Post-order DFS; returns (outcome, witness path, reason)."""
        on_stack: set = set()
        for root in self.roots():
            if root in self.rank:
                continue
            try:
                kids, _ = self.children(root)
            except StrategyStuck as exc:
                return "escape", [root], str(exc)
            stack = [(root, iter(kids))]
            self.kids[root] = kids
            on_stack.add(root)
            while stack:
                node, it = stack[-1]
                pushed = False
                for kid in it:
                    if kid in self.rank:
                        continue
                    if kid in on_stack:
                        path = [n for n, _ in stack]
                        return ("escape", path + [kid],
                                "robber repeats a position forever without capture")
                    if len(self.rank) + len(on_stack) > self.limits.max_positions:
                        raise SearchLimitExceeded("strategy verification exceeded "
                                                  f"{self.limits.max_positions} positions")
                    try:
                        grand, _ = self.children(kid)
                    except StrategyStuck as exc:
                        return "escape", [n for n, _ in stack] + [kid], str(exc)
                    self.kids[kid] = grand
                    on_stack.add(kid)
                    stack.append((kid, iter(grand)))
                    pushed = True
                    break
                if pushed:
                    continue
                stack.pop()
                on_stack.discard(node)
                self.rank[node] = 1 + max((self.rank[c] for c in self.kids[node]), default=0)
        return "capture", [], ""


def verify_strategy(g: Graph, s: Strategy, limits: Limits | None = None,
                    visibility: str = HYPEROPIC) -> Verdict:
    """Exhaustively play ``s`` against every robber behaviour."""
    ex = _Explorer(g, s, visibility, limits or Limits())
    outcome, lasso, reason = ex.run()
    if outcome == "escape":
        witness = [(cops, r) for _, cops, r in lasso]
        return Verdict(s.name, s.k, "escape", None, len(ex.rank), witness, reason)
    roots = ex.roots()
    rounds = max((ex.rank[x] for x in roots), default=0)
    return Verdict(s.name, s.k, "capture", rounds, len(ex.rank))


def certify(name: str, g: Graph, limits: Limits | None = None, **params) -> Verdict:
    """Build and verify a catalog strategy; inapplicable graphs give a verdict."""
    try:
        s = make_strategy(name, g, limits=limits, **params)
    except StrategyInapplicable as exc:
        return Verdict(name, 0, "inapplicable", reason=str(exc))
    return verify_strategy(g, s, limits)


def playout(g: Graph, s: Strategy, robber: str = "adversarial", seed: int = 0,
            max_rounds: int = 1000, visibility: str = HYPEROPIC) -> list[dict]:
    """Play one game and return its transcript, one record per half-move.

    The adversarial robber follows the verifier's worst-case ranks; the
    random robber picks uniformly among non-suicidal options.
    """
    ex = _Explorer(g, s, visibility, Limits())
    if robber == "adversarial":
        outcome, _, _ = ex.run()
        if outcome != "capture":
            raise ValueError("strategy does not capture; no worst-case ranks available")
    rng = random.Random(seed)

    def pick(options):
        if robber == "adversarial":
            return max(options, key=lambda n: (ex.rank[n], -n[2]))
        return rng.choice(options)

    roots = ex.roots()
    records = [{"round": 0, "cops": list(s.start()[1]), "observation": None, "robber": None}]
    if not roots:
        records.append({"round": 0, "cops": list(s.start()[1]), "observation": CAPTURED,
                        "robber": None})
        return records
    node = pick(roots)
    records.append({"round": 0, "cops": list(node[1]),
                    "observation": str(_observe(g, node[1], node[2], visibility)),
                    "robber": node[2]})
    for t in range(1, max_rounds + 1):
        kids, new = ex.children(node)
        r = node[2]
        if not kids:
            records.append({"round": t, "cops": list(new), "observation": CAPTURED, "robber": r})
            return records
        records.append({"round": t, "cops": list(new),
                        "observation": str(_observe(g, new, r, visibility)), "robber": r})
        node = pick(kids)
        records.append({"round": t, "cops": list(new),
                        "observation": str(_observe(g, new, node[2], visibility)),
                        "robber": node[2]})
    return records


def transcript_lines(records: list[dict]) -> str:
    return "\n".join(json.dumps(rec, sort_keys=True) for rec in records) + "\n"


# ------------------------------------------------------------------ lonely

def lonely_check(obj) -> bool:
    """True iff no reachable end-of-round configuration stacks two cops.

    ``obj`` is a StrategyTable (explored against every robber behaviour) or
    an iterable of cop configurations from a play trace.
    """
    if not isinstance(obj, StrategyTable):
        return all(len(set(c)) == len(c) for c in obj)
    table = obj
    g = table.graph
    if len(set(table.initial)) != table.k:
        return False
    if table.k == 1:
        return True
    seen = set()
    if table.variant == CLASSICAL:
        occ0 = mask_of(table.initial)
        frontier = [(table.initial, r) for r in range(g.n) if not occ0 >> r & 1]
    else:
        frontier = [(table.initial, b.belief) for b in rules.initial_branches(g, table.initial)]
    while frontier:
        key = frontier.pop()
        if key in seen:
            continue
        seen.add(key)
        new = table.moves[key]
        if len(set(new)) != len(new):
            return False
        occ = mask_of(new)
        cops, state = key
        if table.variant == CLASSICAL:
            if occ >> state & 1:
                continue
            frontier.extend((new, r2) for r2 in bits(g.closed(state) & ~occ))
        else:
            for b1 in rules.observe_after_cop_move(g, new, state):
                if b1.kind == CAPTURED:
                    continue
                for b2 in rules.robber_move_branches(g, new, b1.belief):
                    if b2.kind != CAPTURED:
                        frontier.append((new, b2.belief))
    return True
