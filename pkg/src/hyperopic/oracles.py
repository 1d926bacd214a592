"""Independent brute-force references used to cross-check the fast paths.

Nothing here imports the rules, solver or density modules: the game is
re-read straight from its definition with ordered cop tuples, plain Python
sets and no pruning beyond memoisation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .graphs import Graph


def _nbrs(g: Graph) -> list[list[int]]:
    return [[u for u in range(g.n) if g.adj[v] >> u & 1] for v in range(g.n)]


def naive_hyperopic_win(g: Graph, k: int, horizon: int) -> bool:
    """Can ``k`` cops force a capture within ``horizon`` rounds?

    The cops' knowledge is the set of robber positions compatible with the
    observation history, obtained by filtering every concrete robber
    trajectory through the observations it would have produced.
    """
    nb = _nbrs(g)
    closed = [[v] + nb[v] for v in range(g.n)]

    def seen(cops, r):
        if r in cops:
            return True
        return not all(r in nb[c] for c in cops)

    def groups(cops, positions):
        out = {}
        for r in positions:
            out.setdefault(r if seen(cops, r) else None, set()).add(r)
        return [frozenset(s) for s in out.values()]

    @lru_cache(maxsize=None)
    def win(cops, positions, h):
        if h == 0:
            return False
        for new in product(*(closed[c] for c in cops)):
            alive = [r for r in positions if r not in new]
            if not alive:
                return True
            ok = True
            for after_cops in groups(new, alive):
                moved = {r2 for r in after_cops for r2 in closed[r] if r2 not in new}
                if not moved:
                    continue
                for after_robber in groups(new, moved):
                    if not win(new, after_robber, h - 1):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
        return False

    for cops in product(range(g.n), repeat=k):
        starts = [r for r in range(g.n) if r not in cops]
        if all(win(cops, grp, horizon) for grp in groups(cops, starts)):
            return True
    return False


def naive_classical_win(g: Graph, k: int) -> bool:
    """Plain fixed-point iteration over (ordered cops, robber) positions."""
    nb = _nbrs(g)
    closed = [[v] + nb[v] for v in range(g.n)]
    states = [(c, r) for c in product(range(g.n), repeat=k) for r in range(g.n) if r not in c]
    won: set = set()
    changed = True
    while changed:
        changed = False
        for c, r in states:
            if (c, r) in won:
                continue
            for new in product(*(closed[x] for x in c)):
                if r in new or all((new, r2) in won for r2 in closed[r] if r2 not in new):
                    won.add((c, r))
                    changed = True
                    break
    return any(all((c, r) in won for r in range(g.n) if r not in c)
               for c in product(range(g.n), repeat=k))


def floyd_distances(g: Graph) -> list[list[float]]:
    inf = float("inf")
    d = [[0 if i == j else (1 if g.adj[i] >> j & 1 else inf) for j in range(g.n)] for i in range(g.n)]
    for m in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if d[i][m] + d[m][j] < d[i][j]:
                    d[i][j] = d[i][m] + d[m][j]
    return d


def connected_without(g: Graph, removed: int) -> bool:
    rest = [v for v in range(g.n) if v != removed]
    if not rest:
        return True
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        v = stack.pop()
        for u in range(g.n):
            if u != removed and u not in seen and g.adj[v] >> u & 1:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(rest)


def naive_cut_vertices(g: Graph) -> set[int]:
    return {v for v in range(g.n) if g.n > 2 and not connected_without(g, v)}


def naive_girth(g: Graph) -> int | None:
    """Shortest cycle by deleting each edge and measuring the detour."""
    best = None
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.adj[u] >> v & 1:
                continue
            dist = {u: 0}
            frontier = [u]
            while frontier and v not in dist:
                nxt = []
                for x in frontier:
                    for y in range(g.n):
                        if g.adj[x] >> y & 1 and y not in dist and {x, y} != {u, v}:
                            dist[y] = dist[x] + 1
                            nxt.append(y)
                frontier = nxt
            if v in dist:
                length = dist[v] + 1
                best = length if best is None else min(best, length)
    return best


def brute_diophantine(a: int, b: int, i: int, j: int, x_max: int) -> tuple[int, int] | None:
    """Smallest even x (then y) in range with density (i+x, j+y) equal to a/b."""
    target = Fraction(a, b)
    for x in range(0, x_max + 1, 2):
        cops = (i + x) // 2 + 1
        total = Fraction(cops) / target
        if total.denominator != 1:
            continue
        y = int(total) - i - j - x
        if y >= 0 and Fraction(cops, i + j + x + y) == target:
            return x, y
    return None
