"""Exact cop numbers by least-fixed-point solving of the pursuit game.

Both variants are explicit AND-OR graphs over cop-to-move positions.  A
position is decided winning with rank ``t`` when the cops can force capture
within ``t`` rounds; ranks are computed backwards from immediate captures
(retrograde analysis), so positions that are never ranked are exactly those
where the robber survives forever.

Hyperopic positions are ``(cop multiset, belief)``; classical positions are
``(cop multiset, robber vertex)``.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .graphs import Graph, GraphError, bits, mask_of
from .rules import CopConfig, canon

__all__ = [
    "Limits",
    "SearchLimitExceeded",
    "SolveResult",
    "StrategyTable",
    "hyperopic_copwin",
    "classical_copwin",
    "hyperopic_cop_number",
    "classical_cop_number",
    "extract_strategy",
    "solve_arena",
    "clear_cache",
]

HYPEROPIC = "hyperopic"
CLASSICAL = "classical"


@dataclass(frozen=True)
class Limits:
    max_positions: int = 4_000_000
    time_budget: float | None = 1800.0


class SearchLimitExceeded(RuntimeError):
    """The search hit a resource limit before deciding the game.

    ``lower``/``upper`` bracket the cop number when known.
    """

    def __init__(self, reason: str, lower: int | None = None, upper: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.lower = lower
        self.upper = upper


@dataclass
class SolveResult:
    variant: str
    k: int
    cop_win: bool
    visited_positions: int
    rounds_bound: int | None
    elapsed: float
    placement: CopConfig | None = None


@dataclass
class StrategyTable:
    """Winning cop moves for every winning position the solver explored.

    Keys are ``(cops, state)`` where ``state`` is a belief bitmask for the
    hyperopic variant and the robber vertex for the classical one.
    """

    graph: Graph
    variant: str
    k: int
    initial: CopConfig
    moves: dict = field(repr=False)
    ranks: dict = field(repr=False)
    rounds_bound: int

    def __contains__(self, key) -> bool:
        return key in self.moves

    def next(self, cops, state) -> CopConfig:
        return self.moves[canon(cops), state]


class _Configs:
    """Indexed cop configurations with cached masks and move lists."""

    def __init__(self, g: Graph, k: int, lonely: bool = False):
        if k < 1:
            raise GraphError("need at least one cop")
        self.g = g
        self.k = k
        self.lonely = lonely
        source = combinations(range(g.n), k) if lonely else combinations_with_replacement(range(g.n), k)
        self.configs: list[CopConfig] = list(source)
        self.index = {c: i for i, c in enumerate(self.configs)}
        self.occ = [mask_of(c) for c in self.configs]
        self.cn = []
        for c in self.configs:
            m = g.full
            for v in set(c):
                m &= g.adj[v]
            self.cn.append(m)
        self._moves: dict[int, list[int]] = {}

    def moves(self, ci: int) -> list[int]:
        out = self._moves.get(ci)
        if out is None:
            partial = {()}
            for c in self.configs[ci]:
                opts = list(bits(self.g.closed(c)))
                partial = {tuple(sorted(t + (v,))) for t in partial for v in opts}
            if self.lonely:
                partial = {t for t in partial if len(set(t)) == len(t)}
            out = sorted(self.index[t] for t in partial)
            self._moves[ci] = out
        return out

    def distinct(self, ci: int) -> bool:
        c = self.configs[ci]
        return len(set(c)) == len(c)


class _Arena:
    """Shared exploration + retrograde ranking over encoded position keys."""

    variant = ""

    def __init__(self, g: Graph, k: int, limits: Limits, lonely: bool = False):
        self.g = g
        self.k = k
        self.limits = limits
        self.cfg = _Configs(g, k, lonely)
        self.t0 = time.perf_counter()

    # subclasses: unpack(key), roots(ci), immediate(ci, s), successors(ci, s, cj)

    def explore(self) -> None:
        ids: dict[int, int] = {}
        keys: list[int] = []
        moves: list = []
        rank: list[int] = []
        nconf = len(self.cfg.configs)

        def node(key: int) -> int:
            i = ids.get(key)
            if i is None:
                i = ids[key] = len(keys)
                keys.append(key)
            return i

        self.root_ids = []
        for ci in range(nconf):
            self.root_ids.append([node(key) for key in self.roots(ci)])
        pos = 0
        while pos < len(keys):
            if len(keys) > self.limits.max_positions:
                raise SearchLimitExceeded(f"{self.variant} k={self.k}: more than "
                                          f"{self.limits.max_positions} positions")
            if pos % 2048 == 0 and self.limits.time_budget is not None:
                if time.perf_counter() - self.t0 > self.limits.time_budget:
                    raise SearchLimitExceeded(f"{self.variant} k={self.k}: time budget "
                                              f"{self.limits.time_budget}s exhausted")
            ci, s = self.unpack(keys[pos])
            pos += 1
            entry = []
            won = self.immediate(ci, s)
            for cj in () if won else self.cfg.moves(ci):
                succ = self.successors(ci, s, cj)
                if not succ:
                    won = True
                    break
                entry.append((cj, [node(x) for x in succ]))
            if won:
                moves.append(None)
                rank.append(1)
            else:
                moves.append(entry)
                rank.append(0)
        self.ids, self.keys, self.moves, self.rank = ids, keys, moves, rank

    def retrograde(self) -> None:
        nconf = len(self.cfg.configs)
        preds: list[list[int]] = [[] for _ in self.keys]
        counters: list[list[int] | None] = []
        for p, entry in enumerate(self.moves):
            if entry is None:
                counters.append(None)
                continue
            cnt = []
            for m, (_, succ) in enumerate(entry):
                cnt.append(len(succ))
                code = p * nconf + m
                for s in succ:
                    preds[s].append(code)
            counters.append(cnt)
        rank = self.rank
        queue = deque(i for i, r in enumerate(rank) if r == 1)
        while queue:
            s = queue.popleft()
            nxt = rank[s] + 1
            for code in preds[s]:
                p, m = divmod(code, nconf)
                if rank[p]:
                    continue
                cnt = counters[p]
                cnt[m] -= 1
                if cnt[m] == 0:
                    rank[p] = nxt
                    queue.append(p)

    def solve(self) -> SolveResult:
        self.explore()
        self.retrograde()
        best = None
        for ci, roots in enumerate(self.root_ids):
            ranks = [self.rank[i] for i in roots]
            if all(ranks):
                rounds = max(ranks, default=0)
                pref = (rounds, not self.cfg.distinct(ci), self.cfg.configs[ci])
                if best is None or pref < best[0]:
                    best = (pref, ci, rounds)
        elapsed = time.perf_counter() - self.t0
        if best is None:
            return SolveResult(self.variant, self.k, False, len(self.keys), None, elapsed)
        _, ci, rounds = best
        self.placement = ci
        return SolveResult(self.variant, self.k, True, len(self.keys), rounds, elapsed,
                           self.cfg.configs[ci])

    def choose(self, i: int) -> int:
        """Rank-decreasing move for winning node ``i``, preferring distinct cops."""
        ci, s = self.unpack(self.keys[i])
        r = self.rank[i]
        options = []
        if self.moves[i] is None:
            for cj in self.cfg.moves(ci):
                if not self.successors(ci, s, cj):
                    options.append(cj)
        else:
            for cj, succ in self.moves[i]:
                if all(0 < self.rank[x] < r for x in succ):
                    options.append(cj)
        return min(options, key=lambda cj: (not self.cfg.distinct(cj), self.cfg.configs[cj]))

    def table(self) -> StrategyTable:
        moves = {}
        ranks = {}
        for i, key in enumerate(self.keys):
            if not self.rank[i]:
                continue
            ci, s = self.unpack(key)
            c = self.cfg.configs[ci]
            moves[c, s] = self.cfg.configs[self.choose(i)]
            ranks[c, s] = self.rank[i]
        rounds = max((self.rank[i] for i in self.root_ids[self.placement]), default=0)
        return StrategyTable(self.g, self.variant, self.k, self.cfg.configs[self.placement],
                             moves, ranks, rounds)


class HyperopicArena(_Arena):
    variant = HYPEROPIC

    def __init__(self, g, k, limits, lonely=False):
        super().__init__(g, k, limits, lonely)
        self.shift = g.n
        self.low = g.full
        self._closed: dict[int, int] = {}

    def unpack(self, key: int) -> tuple[int, int]:
        return key >> self.shift, key & self.low

    def _split(self, cj: int, cand: int) -> list[int]:
        cn = self.cfg.cn[cj]
        out = [1 << v for v in bits(cand & ~cn)]
        if cand & cn:
            out.append(cand & cn)
        return out

    def roots(self, ci: int) -> list[int]:
        cand = self.g.full & ~self.cfg.occ[ci]
        return [(ci << self.shift) | b for b in self._split(ci, cand)]

    def successors(self, ci: int, belief: int, cj: int) -> set[int]:
        occ = self.cfg.occ[cj]
        rest = belief & ~occ
        out: set[int] = set()
        if not rest:
            return out
        base = cj << self.shift
        closed = self._closed
        for b1 in self._split(cj, rest):
            nb = closed.get(b1)
            if nb is None:
                nb = closed[b1] = self.g.closed_of(b1)
            cand = nb & ~occ
            for b2 in self._split(cj, cand):
                out.add(base | b2)
        return out

    def immediate(self, ci: int, belief: int) -> bool:
        occ = self.cfg.occ
        return any(not belief & ~occ[cj] for cj in self.cfg.moves(ci))


class ClassicalArena(_Arena):
    variant = CLASSICAL

    def unpack(self, key: int) -> tuple[int, int]:
        return divmod(key, self.g.n)

    def roots(self, ci: int) -> list[int]:
        free = self.g.full & ~self.cfg.occ[ci]
        return [ci * self.g.n + r for r in bits(free)]

    def immediate(self, ci: int, r: int) -> bool:
        return bool(self.g.closed_of(self.cfg.occ[ci]) >> r & 1)

    def successors(self, ci: int, r: int, cj: int) -> set[int]:
        occ = self.cfg.occ[cj]
        if occ >> r & 1:
            return set()
        cand = self.g.closed(r) & ~occ
        base = cj * self.g.n
        return {base + x for x in bits(cand)}


def _arena(g: Graph, k: int, variant: str, limits: Limits | None, lonely: bool) -> _Arena:
    if not g.is_connected():
        raise GraphError("the game is only defined on connected graphs")
    limits = limits or Limits()
    cls = HyperopicArena if variant == HYPEROPIC else ClassicalArena
    return cls(g, k, limits, lonely)


def solve_arena(g: Graph, k: int, variant: str = HYPEROPIC, limits: Limits | None = None,
                lonely: bool = False) -> tuple[SolveResult, _Arena]:
    arena = _arena(g, k, variant, limits, lonely)
    return arena.solve(), arena


_RESULTS: dict = {}


def _cached(g: Graph, k: int, variant: str, limits: Limits | None) -> SolveResult:
    key = (g.adj, k, variant)
    hit = _RESULTS.get(key)
    if hit is None:
        hit, _ = solve_arena(g, k, variant, limits)
        if len(_RESULTS) > 20000:
            _RESULTS.clear()
        _RESULTS[key] = hit
    return hit


def clear_cache() -> None:
    """Forget memoised results (they are reused regardless of limits)."""
    _RESULTS.clear()


def hyperopic_copwin(g: Graph, k: int, limits: Limits | None = None) -> SolveResult:
    """Decide whether ``k`` hyperopic cops can force a capture on ``g``."""
    return _cached(g, k, HYPEROPIC, limits)


def classical_copwin(g: Graph, k: int, limits: Limits | None = None) -> SolveResult:
    return _cached(g, k, CLASSICAL, limits)


def _least_k(g: Graph, variant: str, limits: Limits | None, start: int) -> int:
    for k in range(max(1, start), g.n + 1):
        try:
            res = _cached(g, k, variant, limits)
        except SearchLimitExceeded as exc:
            raise SearchLimitExceeded(exc.reason, lower=k, upper=None) from None
        if res.cop_win:
            return k
    raise AssertionError("n cops always win")  # pragma: no cover


def hyperopic_cop_number(g: Graph, limits: Limits | None = None, start: int = 1) -> int:
    """Least k with a hyperopic cop win.  ``start`` may skip known-losing k."""
    return _least_k(g, HYPEROPIC, limits, start)


def classical_cop_number(g: Graph, limits: Limits | None = None, start: int = 1) -> int:
    return _least_k(g, CLASSICAL, limits, start)


def extract_strategy(g: Graph, k: int, variant: str = HYPEROPIC, limits: Limits | None = None,
                     lonely: bool = False) -> StrategyTable:
    """Winning-move table for ``k`` cops; ``lonely`` restricts cops to distinct vertices."""
    res, arena = solve_arena(g, k, variant, limits, lonely)
    if not res.cop_win:
        raise ValueError(f"{k} cops do not win the {variant} game on {g.describe()}"
                         + (" with distinct cops" if lonely else ""))
    return arena.table()


def ceil_half(n: int) -> int:
    return math.ceil(n / 2)
