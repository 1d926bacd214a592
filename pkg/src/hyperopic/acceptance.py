"""The acceptance suite, shared by ``hyperopic verify-theorems`` and the tests.

Each check builds its own instances, runs at desk scale and reports a
``CheckResult``; nothing is read from disk or the network.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import density
from .graphs import (Graph, clique, clique_join_coclique, clique_minus_edges, co_clique,
                     complete_bipartite, cycle, disjoint_union, grid, incidence_plane, join,
                     maximal_outerplanar, metrics, path, petersen, random_connected,
                     random_tree)
from .oracles import brute_diophantine, naive_hyperopic_win
from .solver import (Limits, SearchLimitExceeded, classical_cop_number, classical_copwin,
                     hyperopic_cop_number, hyperopic_copwin)
from .strategies import certify


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title} ({self.elapsed:.1f}s): {self.detail}"


def small_connected_graphs(max_n: int = 6, min_n: int = 2) -> list[Graph]:
    """Every connected graph on min_n..max_n vertices, one per isomorphism class."""
    import networkx as nx

    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(h):
            out.append(Graph.from_edges(n, sorted(h.edges()), "atlas", n=n, index=len(out)))
    return out


def random_corpus(count: int = 50, max_n: int = 8, seed: int = 0) -> list[Graph]:
    rng = random.Random(seed)
    return [random_connected(rng.randint(4, max_n), rng.choice([0.2, 0.35, 0.5]), seed=rng.randrange(10**6))
            for _ in range(count)]


def non_trees(count: int = 20, max_n: int = 8, seed: int = 1) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_connected(rng.randint(3, max_n), 0.3, seed=rng.randrange(10**6))
        if not metrics(g).is_tree:
            out.append(g)
    return out


def bound_violations(g: Graph, c: int, h: int) -> list[str]:
    """Every applicable inequality between c, c_H and the graph's metrics."""
    m = metrics(g)
    bad = []

    def need(cond, what):
        if not cond:
            bad.append(f"{g.describe()}: {what} (c={c}, c_H={h})")

    need(c <= h <= math.ceil(g.n / 2), "c <= c_H <= ceil(n/2)")
    need((h == 1) == m.is_tree, "c_H = 1 iff tree")
    if m.cut_vertices:
        need(h <= c + 1, "cut vertex => c_H <= c+1")
    if m.triangle_free:
        need(h <= c + 1, "triangle-free => c_H <= c+1")
    if m.diameter is not None and m.diameter >= 3:
        need(h <= c + 2, "diam >= 3 => c_H <= c+2")
        if m.min_degree <= c:
            need(h <= c + 1, "diam >= 3 and min degree <= c => c_H <= c+1")
        if m.girth is None or m.girth >= 5:
            need(h <= c + 1, "diam >= 3 and girth >= 5 => c_H <= c+1")
    if m.diameter == 2:
        need(h <= min(m.min_degree + 1, m.max_degree), "diam 2 => c_H <= min(delta+1, Delta)")
    return bad


# ------------------------------------------------------------------ checks

def check_trees():
    bad = []
    for seed in range(20):
        n = 4 + seed % 9
        g = random_tree(n, seed)
        t = time.perf_counter()
        h = hyperopic_cop_number(g)
        if h != 1 or time.perf_counter() - t > 5:
            bad.append(f"{g.describe()} c_H={h}")
    for g in non_trees():
        t = time.perf_counter()
        if hyperopic_copwin(g, 1).cop_win or time.perf_counter() - t > 5:
            bad.append(f"{g.describe()} is a non-tree won by one cop")
    return not bad, "20 trees at 1, 20 non-trees at >= 2" if not bad else "; ".join(bad)


def check_cliques():
    got = {n: hyperopic_cop_number(clique(n)) for n in range(2, 8)}
    ok = all(got[n] == math.ceil(n / 2) for n in got)
    return ok, ", ".join(f"K{n}={h}" for n, h in got.items())


def _two_edge_patterns(n):
    return {"shared": [(0, 1), (0, 2)], "disjoint": [(0, 1), (2, 3)]}


def check_near_cliques():
    parts, ok = [], True
    for n in range(4, 8):
        h = hyperopic_cop_number(clique_minus_edges(n, [(0, 1)]))
        ok &= h == n // 2
        parts.append(f"K{n}-e={h}")
    for n in range(5, 8):
        for name, edges in _two_edge_patterns(n).items():
            h = hyperopic_cop_number(clique_minus_edges(n, edges))
            ok &= h <= math.ceil(n / 2) - 1
            parts.append(f"K{n}-2e[{name}]={h}")
    return ok, ", ".join(parts)


def check_petersen():
    g = petersen()
    h, c = hyperopic_cop_number(g), classical_cop_number(g)
    return h == 3 and c == 3, f"c_H={h}, c={c}"


def check_projective_plane():
    g = incidence_plane(2)
    two = classical_copwin(g, 2).cop_win
    three = classical_copwin(g, 3).cop_win
    h = hyperopic_cop_number(g)
    verdict = certify("incidence_plane", g)
    ok = not two and three and h == 3 and verdict.captured and verdict.k == 3
    return ok, (f"c={2 if two else (3 if three else '>3')}, c_H={h}, "
                f"strategy {verdict.outcome} with k={verdict.k} in {verdict.rounds} rounds")


def check_planar():
    bad = []
    seeds = []
    for seed in range(10):
        n = 4 + seed % 7
        g = maximal_outerplanar(n, seed)
        seeds.append(n)
        if not hyperopic_copwin(g, 2).cop_win:
            bad.append(g.describe())
    grids = {}
    for m, n in [(3, 3), (3, 4)]:
        g = grid(m, n)
        grids[g.describe()] = hyperopic_cop_number(g)
        if grids[g.describe()] > 3:
            bad.append(g.describe())
    detail = f"10 outerplanar (n={min(seeds)}..{max(seeds)}) <= 2; " + ", ".join(
        f"{k}: c_H={v}" for k, v in grids.items())
    return not bad, detail if not bad else "violations: " + "; ".join(bad)


def check_bound_suite():
    bad = []
    graphs = small_connected_graphs(6) + random_corpus()
    for g in graphs:
        c = classical_cop_number(g)
        h = hyperopic_cop_number(g)
        bad += bound_violations(g, c, h)
        if h < g.n and not hyperopic_copwin(g, h + 1).cop_win:
            bad.append(f"{g.describe()}: not monotone in k")
    return not bad, f"{len(graphs)} graphs, {len(bad)} violations" + (": " + "; ".join(bad[:5]) if bad else "")


def check_oracle():
    graphs = small_connected_graphs(6)
    bad = []
    for g in graphs:
        for k in (1, 2):
            fast = hyperopic_copwin(g, k).cop_win
            slow = naive_hyperopic_win(g, k, horizon=3 * g.n)
            if fast != slow:
                bad.append(f"{g.describe()} k={k}: solver {fast}, oracle {slow}")
    return not bad, f"{2 * len(graphs)} (graph, k) pairs, {len(bad)} disagreements"


def certificate_instances() -> list[tuple[str, Graph, dict]]:
    bridge = Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)],
                              "triangle_bridge_square")
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], "bowtie")
    pendant_c4 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], "c4_pendant")
    out = [
        ("tree", path(6), {}),
        ("tree", random_tree(9, 3), {}),
        ("tree", random_tree(12, 7), {}),
    ]
    out += [("dominating_set", clique(n), {}) for n in (5, 6, 7)]
    out += [("clique_minus_edge", clique_minus_edges(n, [(0, 1)]), {}) for n in (5, 6, 7)]
    out += [("clique_minus_two_edges", clique_minus_edges(n, e), {})
            for n in (5, 6, 7) for e in _two_edge_patterns(n).values()]
    out += [("cut_vertex_composite", g, {}) for g in (bridge, bowtie, pendant_c4, path(5))]
    out += [("triangle_free_shadow", g, {}) for g in (cycle(6), grid(3, 3), petersen())]
    out += [("diameter3_sentinels", g, {}) for g in (cycle(7), grid(3, 3), pendant_c4)]
    out += [("min_degree_sentinel", g, {}) for g in (cycle(6), cycle(8), grid(3, 4))]
    out += [("diameter2_delta", g, {}) for g in (petersen(), cycle(5), complete_bipartite(3, 4))]
    out += [("diameter2_maxdeg", g, {}) for g in (petersen(), cycle(5), complete_bipartite(3, 4))]
    for base, other in [(cycle(4), co_clique(2)), (cycle(5), co_clique(1)),
                        (cycle(4), disjoint_union(co_clique(1), path(2)))]:
        out.append(("join_isolated", join(base, other), {"base": base}))
    out += [("incidence_plane", incidence_plane(q), {}) for q in (2, 3, 5)]
    out += [("lonely_lift", maximal_outerplanar(n, s), {}) for n, s in ((6, 0), (8, 1), (10, 2))]
    return out


def check_certificates():
    per, bad = {}, []
    cap = Limits(max_positions=1_000_000, time_budget=60)
    for name, g, params in certificate_instances():
        v = certify(name, g, **params)
        if not v.captured:
            bad.append(f"{name} on {g.describe()}: {v.outcome} ({v.reason})")
            continue
        per[name] = per.get(name, 0) + 1
        if g.n <= 12:
            try:
                h = hyperopic_cop_number(g, cap)
            except SearchLimitExceeded:
                continue
            if v.k < h:
                bad.append(f"{name} on {g.describe()}: k={v.k} < c_H={h}")
    from .strategies import CATALOG
    short = [n for n in CATALOG if per.get(n, 0) < 3]
    ok = not bad and not short
    detail = f"{sum(per.values())} capture verdicts over {len(per)} strategies"
    if bad or short:
        detail += "; " + "; ".join(bad + [f"{n}: fewer than 3 certificates" for n in short])
    return ok, detail


def check_density():
    bad = []
    pairs = [(r, s) for r in range(2, 5) for s in range(2, 5)] + [(5, 2)]
    for r, s in pairs:
        h = hyperopic_cop_number(clique_join_coclique(r, s))
        if h != density.vlem_cop_number(r, s):
            bad.append(f"K{r} v co-K{s}: solver {h}, formula {density.vlem_cop_number(r, s)}")
    for target in (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), "sqrt2-1"):
        p = density.approximant_sequence(target, 20)
        ch = density.build_chain(p, target)
        els = ch.elements
        if (els[0].i, els[0].j) != (2, 2) or els[0].density != Fraction(1, 2):
            bad.append(f"{target}: bad seed element")
        for e, pn in zip(els, p):
            if e.density != pn or e.x % 2:
                bad.append(f"{target}: element {e.n} density {e.density} vs {pn}, x={e.x}")
        for a, b in zip(els, els[1:]):
            if b.i < a.i or b.j < a.j:
                bad.append(f"{target}: containment broken at {b.n}")
    rng = random.Random(5)
    done = 0
    while done < 100:
        b = rng.randint(3, 24)
        a = rng.randint(1, (b - 1) // 2)
        i, j = rng.randint(2, 10), rng.randint(2, 40)
        if math.gcd(a, b) != 1 or density.beta(a, b, i, j) <= 0:
            continue
        done += 1
        fast = density.solve_diophantine(a, b, i, j)
        slow = brute_diophantine(a, b, i, j, x_max=4 * b * (i + j + b))
        if fast != slow:
            bad.append(f"diophantine {a}/{b} at {(i, j)}: {fast} vs {slow}")
    return not bad, (f"{len(pairs)} joins, 5 chains of 20 terms, 100 Diophantine instances"
                     if not bad else "; ".join(bad[:5]))


CHECKS = [
    (1, "tree characterization", check_trees),
    (2, "cliques", check_cliques),
    (3, "near-cliques", check_near_cliques),
    (4, "Petersen graph", check_petersen),
    (5, "projective plane q=2", check_projective_plane),
    (6, "planar and outerplanar ceilings", check_planar),
    (7, "bound suite", check_bound_suite),
    (8, "oracle equivalence", check_oracle),
    (9, "strategy certificates", check_certificates),
    (10, "density machinery", check_density),
]


def run_check(number: int) -> CheckResult:
    for num, title, fn in CHECKS:
        if num == number:
            t = time.perf_counter()
            try:
                ok, detail = fn()
            except SearchLimitExceeded as exc:
                ok, detail = False, f"resource limit: {exc.reason}"
            return CheckResult(num, title, ok, detail, time.perf_counter() - t)
    raise KeyError(number)


def run_all(only=None, report=print) -> list[CheckResult]:
    out = []
    for num, _, _ in CHECKS:
        if only and num not in only:
            continue
        res = run_check(num)
        if report:
            report(res.line())
        out.append(res)
    return out
