"""Graph core: bitmask adjacency, parsers/serializers, generators and metrics.

Vertex sets are plain ``int`` bitmasks over ``0..n-1``.  Loops are never
stored; the game layer adds the "stay" move itself.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

__all__ = [
    "Graph",
    "GraphError",
    "GraphMetrics",
    "bits",
    "mask_of",
    "build_graph",
    "parse_edge_list",
    "parse_graph6",
    "to_edge_list",
    "to_graph6",
    "generate",
    "FAMILIES",
    "clique",
    "clique_minus_edges",
    "path",
    "cycle",
    "random_tree",
    "random_connected",
    "complete_bipartite",
    "co_clique",
    "clique_join_coclique",
    "petersen",
    "incidence_plane",
    "grid",
    "maximal_outerplanar",
    "join",
    "disjoint_union",
    "metrics",
    "greedy_dominating_set",
    "dominates",
    "common_neighborhood",
    "contains_biclique",
]


class GraphError(ValueError):
    """Malformed graph input or an out-of-range generator request."""


def bits(mask: int) -> Iterator[int]:
    """Yield the vertex indices set in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the open neighbourhood of ``v`` as a bitmask.  ``family``
    and ``params`` record how the graph was produced and do not take part in
    equality.
    """

    n: int
    adj: tuple[int, ...]
    family: str | None = field(default=None, compare=False)
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   family: str | None = None, /, **params) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), family, dict(params))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def closed_of(self, mask: int) -> int:
        """Closed neighbourhood N[S] of a vertex set."""
        out = mask
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return _reach(self, 0) == self.full

    def describe(self) -> str:
        if self.family is None:
            return f"graph(n={self.n}, m={self.m})"
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({args})"


def _reach(g: Graph, root: int, removed: int = 0) -> int:
    seen = 1 << root
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= ~seen & ~removed
        seen |= nxt
        frontier = nxt
    return seen


# ---------------------------------------------------------------- formats

def parse_edge_list(text: str, **meta) -> Graph:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise GraphError("empty edge list")
    try:
        header = [int(t) for t in lines[0]]
        rows = [[int(t) for t in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    if len(header) != 2 or header[0] < 0 or header[1] < 0:
        raise GraphError("header must be 'n m'")
    n, m = header
    if len(rows) != m:
        raise GraphError(f"header announces {m} edges, found {len(rows)}")
    edges = []
    for row in rows:
        if len(row) != 2:
            raise GraphError(f"edge line must hold two vertices: {row}")
        edges.append((row[0], row[1]))
    return Graph.from_edges(n, edges, **meta)


def to_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def _g6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 8 and data[1] == 126:
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise GraphError("truncated graph6 size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(text: str | bytes, **meta) -> Graph:
    data = text.encode() if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 bytes must lie in 63..126")
    n, offset = _g6_size(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    stream = []
    for c in body:
        x = c - 63
        stream.extend((x >> s) & 1 for s in range(5, -1, -1))
    if any(stream[nbits:]):
        raise GraphError("graph6 padding bits must be zero")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if stream[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges, **meta)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    stream = [(g.adj[v] >> u) & 1 for v in range(1, n) for u in range(v)]
    stream.extend([0] * (-len(stream) % 6))
    body = []
    for i in range(0, len(stream), 6):
        x = 0
        for b in stream[i:i + 6]:
            x = (x << 1) | b
        body.append(x + 63)
    return bytes(head + body).decode("ascii")


def build_graph(source: str, fmt: str | None = None, **meta) -> Graph:
    """Parse an edge list or a graph6 string; ``fmt`` of None sniffs the input."""
    if fmt is None:
        first = source.strip().splitlines()[0].split() if source.strip() else []
        fmt = "edges" if len(first) == 2 and all(t.isdigit() for t in first) else "graph6"
    if fmt == "edges":
        return parse_edge_list(source, **meta)
    if fmt == "graph6":
        return parse_graph6(source, **meta)
    raise GraphError(f"unknown format {fmt!r}")


# ------------------------------------------------------------- generators

def clique(n: int) -> Graph:
    _need(n >= 1, "clique needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2), "clique", n=n)


def clique_minus_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    removed = {tuple(sorted(e)) for e in edges}
    full = set(combinations(range(n), 2))
    missing = removed - full
    _need(not missing, f"edges {sorted(missing)} are not edges of K_{n}")
    g = Graph.from_edges(n, sorted(full - removed), "clique_minus_edges",
                         n=n, edges=sorted(removed))
    _need(g.is_connected(), "removing these edges disconnects the clique")
    return g


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], "path", n=n)


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], "cycle", n=n)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    _need(n >= 1, "tree needs n >= 1")
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [], "random_tree", n=n, seed=seed)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges, "random_tree", n=n, seed=seed)


def random_connected(n: int, extra: float = 0.3, seed: int = 0) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    rng = random.Random(seed)
    tree = random_tree(n, rng.randrange(1 << 30))
    edges = set(tree.edges())
    for e in combinations(range(n), 2):
        if e not in edges and rng.random() < extra:
            edges.add(e)
    return Graph.from_edges(n, sorted(edges), "random_connected", n=n, extra=extra, seed=seed)


def complete_bipartite(m: int, n: int) -> Graph:
    _need(m >= 1 and n >= 1, "complete_bipartite needs both sides nonempty")
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return Graph.from_edges(m + n, edges, "complete_bipartite", m=m, n=n)


def co_clique(n: int) -> Graph:
    """Edgeless graph; only legal as a join operand or for n=1."""
    _need(n >= 1, "co_clique needs n >= 1")
    return Graph.from_edges(n, [], "co_clique", n=n)


def clique_join_coclique(r: int, s: int) -> Graph:
    """K_r v co-K_s with the clique on 0..r-1."""
    g = join(clique(r), co_clique(s))
    return Graph(g.n, g.adj, "clique_join_coclique", {"r": r, "s": s})


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, "petersen")


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalised representatives of the 1-dim subspaces of GF(q)^3."""
    pts = []
    for x in range(q):
        for y in range(q):
            for z in range(q):
                v = (x, y, z)
                if v == (0, 0, 0):
                    continue
                lead = next(c for c in v if c)
                if lead == 1:
                    pts.append(v)
    return pts


def incidence_plane(q: int) -> Graph:
    """Point/line incidence graph of PG(2, q); points first, then lines.

    A line is a 2-dim subspace, represented by its normal vector; point p
    lies on line l iff p . l = 0 (mod q).
    """
    _need(_is_prime(q), f"q={q} must be prime")
    pts = projective_points(q)
    npts = len(pts)
    edges = []
    for i, p in enumerate(pts):
        for j, l in enumerate(pts):
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0:
                edges.append((i, npts + j))
    return Graph.from_edges(2 * npts, edges, "incidence_plane", q=q)


def grid(m: int, n: int) -> Graph:
    _need(m >= 1 and n >= 1, "grid needs positive sides")
    edges = []
    for r in range(m):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < m:
                edges.append((v, v + n))
    return Graph.from_edges(m * n, edges, "grid", m=m, n=n)


def maximal_outerplanar(n: int, seed: int = 0) -> Graph:
    """Random triangulation of the polygon 0..n-1 (2n-3 edges)."""
    _need(n >= 3, "maximal_outerplanar needs n >= 3")
    rng = random.Random(seed)
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    stack = [list(range(n))]
    while stack:
        poly = stack.pop()
        if len(poly) < 4:
            continue
        k = rng.randrange(1, len(poly) - 1)
        a, apex, b = poly[0], poly[k], poly[-1]
        edges.add((min(a, apex), max(a, apex)))
        edges.add((min(apex, b), max(apex, b)))
        stack.append(poly[:k + 1])
        stack.append(poly[k:])
    return Graph.from_edges(n, sorted(edges), "maximal_outerplanar", n=n, seed=seed)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def join(g: Graph, h: Graph) -> Graph:
    """G v H: disjoint union plus every edge between the two vertex sets."""
    _need(g.n >= 1 and h.n >= 1, "join operands must be nonempty")
    gmask = g.full
    hmask = h.full << g.n
    adj = [nb | hmask for nb in g.adj] + [(nb << g.n) | gmask for nb in h.adj]
    return Graph(g.n + h.n, tuple(adj), "join", {"left": g.describe(), "right": h.describe()})


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [nb << g.n for nb in h.adj]
    return Graph(g.n + h.n, tuple(adj), "union", {"left": g.describe(), "right": h.describe()})


FAMILIES = {
    "clique": clique,
    "clique_minus_edges": clique_minus_edges,
    "path": path,
    "cycle": cycle,
    "random_tree": random_tree,
    "random_connected": random_connected,
    "complete_bipartite": complete_bipartite,
    "co_clique": co_clique,
    "clique_join_coclique": clique_join_coclique,
    "petersen": petersen,
    "incidence_plane": incidence_plane,
    "grid": grid,
    "maximal_outerplanar": maximal_outerplanar,
}


def generate(family: str, **params) -> Graph:
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}") from None
    return fn(**params)


# ---------------------------------------------------------------- metrics

@dataclass(frozen=True)
class GraphMetrics:
    """Exact structural invariants.  ``girth`` is None for forests and
    ``diameter`` is None for disconnected graphs."""

    diameter: int | None
    girth: int | None
    min_degree: int
    max_degree: int
    is_tree: bool
    cut_vertices: int
    triangle_free: bool
    connected: bool

    def as_dict(self) -> dict:
        return {
            "diameter": self.diameter,
            "girth": self.girth,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "is_tree": self.is_tree,
            "cut_vertices": list(bits(self.cut_vertices)),
            "triangle_free": self.triangle_free,
            "connected": self.connected,
        }


def eccentricity(g: Graph, v: int) -> int | None:
    seen = frontier = 1 << v
    depth = 0
    while True:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
        depth += 1
    return depth if seen == g.full else None


def _girth(g: Graph) -> int | None:
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for u in bits(g.adj[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
    return best


def _articulation_points(g: Graph) -> int:
    """Hopcroft-Tarjan lowpoint search, iterative."""
    disc = [-1] * g.n
    low = [0] * g.n
    cut = 0
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] < 0:
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        children += 1
                    stack.append((u, v, iter(g.neighbors(u))))
                    advanced = True
                    break
                if u != parent:
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cut |= 1 << parent
        if children > 1:
            cut |= 1 << root
    return cut


def metrics(g: Graph) -> GraphMetrics:
    connected = g.is_connected()
    if connected:
        diameter = max(eccentricity(g, v) for v in range(g.n))
    else:
        diameter = None
    girth = _girth(g)
    degrees = [g.degree(v) for v in range(g.n)] or [0]
    return GraphMetrics(
        diameter=diameter,
        girth=girth,
        min_degree=min(degrees),
        max_degree=max(degrees),
        is_tree=connected and g.m == g.n - 1,
        cut_vertices=_articulation_points(g),
        triangle_free=girth != 3,
        connected=connected,
    )


def bfs_layers(g: Graph, root: int = 0) -> list[int]:
    layers = [1 << root]
    seen = 1 << root
    while True:
        nxt = 0
        for v in bits(layers[-1]):
            nxt |= g.adj[v]
        nxt &= ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)


def dominates(g: Graph, s: int) -> bool:
    return g.closed_of(s) == g.full


def greedy_dominating_set(g: Graph) -> int:
    """Smaller parity class of the BFS layering from vertex 0.

    Every vertex of an odd layer has a parent in the even layer above it and
    vice versa, so each class dominates the graph and the smaller one has at
    most n/2 vertices.  For n=1 the set {0} is returned and the n/2 bound
    does not apply.
    """
    _need(g.is_connected(), "dominating-set construction needs a connected graph")
    layers = bfs_layers(g, 0)
    even = odd = 0
    for depth, layer in enumerate(layers):
        if depth % 2:
            odd |= layer
        else:
            even |= layer
    if g.n == 1:
        return even
    return odd if odd.bit_count() < even.bit_count() else even


def common_neighborhood(g: Graph, cops: Iterable[int]) -> int:
    """Intersection of the open neighbourhoods of the (distinct) cop vertices."""
    out = g.full
    seen = False
    for c in set(cops):
        out &= g.adj[c]
        seen = True
    if not seen:
        raise GraphError("common neighbourhood of an empty cop set")
    return out


def contains_biclique(g: Graph, d: int, max_n: int = 64) -> bool:
    """True iff K_{d,d+1} is a (not necessarily induced) subgraph."""
    _need(d >= 1, "d must be positive")
    _need(g.n <= max_n, f"biclique search refused for n={g.n} > {max_n}")
    for xs in combinations(range(g.n), d):
        inside = mask_of(xs)
        common = g.full & ~inside
        for x in xs:
            common &= g.adj[x]
            if common.bit_count() <= d:
                break
        if common.bit_count() >= d + 1:
            return True
    return False
