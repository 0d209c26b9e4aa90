"""Graph and hypergraph value types, file IO, and small structural tests.

All types are immutable values; every operation here is a pure function.
Vertex conventions: general graphs use indices 0..n-1 (file tokens "1".."n"),
bipartite graphs put the A side first (indices 0..a_size-1, file tokens
"a1".."a|A|") and the B side after it (tokens "b1".."b|B|").
"""

from __future__ import annotations

import dataclasses


class GraphFormatError(ValueError):
    """Malformed graph file; `kind` names the violated rule."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclasses.dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or not canonical")

    @staticmethod
    def make(n: int, edges) -> "Graph":
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            canon.add((min(u, v), max(u, v)))
        return Graph(n, frozenset(canon))

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclasses.dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph (A, B, E) stored as the neighbourhood list of B.

    `adj[j]` is N(b_j) as a set of A indices.  In the flattened vertex
    numbering A occupies 0..a_size-1 and b_j is vertex a_size+j.
    """

    a_size: int
    b_size: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.a_size < 0 or self.b_size < 0:
            raise ValueError("negative side size")
        if len(self.adj) != self.b_size:
            raise ValueError("adjacency length does not match b_size")
        for nb in self.adj:
            for a in nb:
                if not (0 <= a < self.a_size):
                    raise ValueError(f"A-neighbour {a} out of range")

    @property
    def n(self) -> int:
        return self.a_size + self.b_size

    def b_vertex(self, j: int) -> int:
        return self.a_size + j

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj)

    def to_graph(self) -> Graph:
        edges = set()
        for j, nb in enumerate(self.adj):
            b = self.a_size + j
            for a in nb:
                edges.add((a, b))
        return Graph(self.n, frozenset(edges))


@dataclasses.dataclass(frozen=True)
class Hypergraph:
    """Ground set 0..ground_size-1 with one hyperedge per B vertex."""

    ground_size: int
    hyperedges: tuple[frozenset[int], ...]

    def __post_init__(self):
        for he in self.hyperedges:
            for v in he:
                if not (0 <= v < self.ground_size):
                    raise ValueError(f"hyperedge vertex {v} out of range")


def neighbourhood_hypergraph(g: BipartiteGraph) -> Hypergraph:
    """View a bipartite graph as the hypergraph (A, {N(b) : b in B})."""
    return Hypergraph(g.a_size, g.adj)


# ---------------------------------------------------------------------------
# file format


def vertex_token(g, v: int) -> str:
    if isinstance(g, BipartiteGraph):
        if v < g.a_size:
            return f"a{v + 1}"
        return f"b{v - g.a_size + 1}"
    return str(v + 1)


def _bip_token(tok: str, a_size: int, b_size: int) -> int:
    side = tok[:1]
    if side not in ("a", "b") or not tok[1:].isdigit():
        raise GraphFormatError("token", f"bad bipartite vertex token {tok!r}")
    idx = int(tok[1:]) - 1
    limit = a_size if side == "a" else b_size
    if not (0 <= idx < limit):
        raise GraphFormatError("range", f"vertex {tok} out of range")
    return idx if side == "a" else a_size + idx


def parse_graph(text: str | bytes):
    """Parse the graph file format; returns Graph or BipartiteGraph.

    Format: header line ``bipartite <|A|> <|B|>`` or ``graph <n>``, then one
    ``e <u> <v>`` line per edge.  ``#`` starts a comment line.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise GraphFormatError("header", "empty file")
    head = lines[0].split()
    if head[0] == "bipartite":
        if len(head) != 3 or not head[1].isdigit() or not head[2].isdigit():
            raise GraphFormatError("header", f"malformed header {lines[0]!r}")
        a_size, b_size = int(head[1]), int(head[2])
        nbrs = [set() for _ in range(b_size)]
        seen = set()
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "e":
                raise GraphFormatError("edge-format", f"bad edge line {line!r}")
            u = _bip_token(parts[1], a_size, b_size)
            v = _bip_token(parts[2], a_size, b_size)
            au, bv = (u, v) if u < a_size else (v, u)
            if au >= a_size or bv < a_size:
                raise GraphFormatError("non-crossing", f"edge {line!r} is not A-B")
            if (au, bv) in seen:
                raise GraphFormatError("duplicate", f"duplicate edge {line!r}")
            seen.add((au, bv))
            nbrs[bv - a_size].add(au)
        return BipartiteGraph(a_size, b_size, tuple(frozenset(s) for s in nbrs))
    if head[0] == "graph":
        if len(head) != 2 or not head[1].isdigit():
            raise GraphFormatError("header", f"malformed header {lines[0]!r}")
        n = int(head[1])
        edges = set()
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "e":
                raise GraphFormatError("edge-format", f"bad edge line {line!r}")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError("token", f"bad vertex token in {line!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError("range", f"vertex out of range in {line!r}")
            if u == v:
                raise GraphFormatError("edge-format", f"loop in {line!r}")
            e = (min(u, v), max(u, v))
            if e in edges:
                raise GraphFormatError("duplicate", f"duplicate edge {line!r}")
            edges.add(e)
        return Graph(n, frozenset(edges))
    raise GraphFormatError("header", f"unknown header {lines[0]!r}")


def serialize_graph(g) -> str:
    """Canonical text form; parse(serialize(g)) == g and edges sorted."""
    out = []
    if isinstance(g, BipartiteGraph):
        out.append(f"bipartite {g.a_size} {g.b_size}")
        pairs = sorted((a, j) for j, nb in enumerate(g.adj) for a in nb)
        for a, j in pairs:
            out.append(f"e a{a + 1} b{j + 1}")
    else:
        out.append(f"graph {g.n}")
        for u, v in sorted(g.edges):
            out.append(f"e {u + 1} {v + 1}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# induced substructure


def induced_subgraph(g, subset):
    """Induced subgraph on `subset`, relabelled canonically.

    Returns (subgraph of the same kind, mapping old vertex -> new vertex).
    For bipartite inputs the subset may mix A and B vertices; sides are
    relabelled separately, keeping A before B.
    """
    sub = set(subset)
    for v in sub:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    if isinstance(g, BipartiteGraph):
        a_keep = sorted(v for v in sub if v < g.a_size)
        b_keep = sorted(v for v in sub if v >= g.a_size)
        a_map = {old: i for i, old in enumerate(a_keep)}
        nbrs = tuple(
            frozenset(a_map[a] for a in g.adj[old - g.a_size] if a in a_map)
            for old in b_keep
        )
        mapping = dict(a_map)
        for i, old in enumerate(b_keep):
            mapping[old] = len(a_keep) + i
        return BipartiteGraph(len(a_keep), len(b_keep), nbrs), mapping
    keep = sorted(sub)
    mapping = {old: i for i, old in enumerate(keep)}
    edges = frozenset(
        (mapping[u], mapping[v]) for u, v in g.edges if u in sub and v in sub
    )
    return Graph(len(keep), edges), mapping


# ---------------------------------------------------------------------------
# chordal bipartite test


def is_chordal_bipartite(g) -> bool:
    """True iff every induced cycle of g has exactly four vertices.

    Accepts Graph or BipartiteGraph.  Non-bipartite graphs fail as soon as
    an odd induced cycle is found (triangles included), which makes the test
    usable on the forbidden-pattern graphs as well.
    """
    if isinstance(g, BipartiteGraph):
        g = g.to_graph()
    adj = g.adjacency()

    # Grow induced paths s,x1,..,xk with min vertex s; the only permitted
    # chord back to s is the one closing the cycle.
    def extend(path, on_path):
        last = path[-1]
        s = path[0]
        for w in sorted(adj[last]):
            if w <= s or w in on_path:
                continue
            inner = adj[w]
            if any(p in inner for p in path[1:-1]):
                continue
            closes = s in inner
            if closes:
                if len(path) + 1 != 4:
                    return False  # induced cycle (triangle or >= 5) found
                continue  # closes a C4; extending past w would add a chord
            path.append(w)
            on_path.add(w)
            if not extend(path, on_path):
                return False
            path.pop()
            on_path.remove(w)
        return True

    for s in range(g.n):
        for x1 in sorted(adj[s]):
            if x1 <= s:
                continue
            if not extend([s, x1], {s, x1}):
                return False
    return True


# ---------------------------------------------------------------------------
# induced pattern search


def pattern_k3_s3() -> Graph:
    """Triangle 0,1,2 with a pendant vertex attached to each corner."""
    return Graph.make(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)])


def pattern_k3_k3() -> Graph:
    """Two triangles 0,1,2 and 3,4,5 joined by a perfect matching."""
    return Graph.make(
        6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]
    )


def has_induced_pattern(g: Graph, p: Graph) -> bool:
    """True iff g contains an induced subgraph isomorphic to p.

    Backtracking over injective mappings with degree pruning; intended for
    patterns on at most ~8 vertices.
    """
    if p.n > g.n:
        raise ValueError("pattern larger than host")
    if p.n == 0:
        return True
    g_adj = g.adjacency()
    p_adj = p.adjacency()
    g_deg = [len(s) for s in g_adj]
    p_deg = [len(s) for s in p_adj]

    # map pattern vertices in an order that keeps the partial image connected
    # where possible (first vertex = max degree, then most-anchored next).
    order = [max(range(p.n), key=lambda v: p_deg[v])]
    remaining = set(range(p.n)) - set(order)
    while remaining:
        nxt = max(
            remaining,
            key=lambda v: (sum(1 for u in order if u in p_adj[v]), p_deg[v]),
        )
        order.append(nxt)
        remaining.remove(nxt)

    image = [-1] * p.n
    used = set()

    def place(i):
        if i == len(order):
            return True
        pv = order[i]
        for gv in range(g.n):
            if gv in used or g_deg[gv] < p_deg[pv]:
                continue
            ok = True
            for pu in order[:i]:
                adj_required = pu in p_adj[pv]
                if (image[pu] in g_adj[gv]) != adj_required:
                    ok = False
                    break
            if ok:
                image[pv] = gv
                used.add(gv)
                if place(i + 1):
                    return True
                used.remove(gv)
                image[pv] = -1
        return False

    return place(0)


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    full = frozenset(range(a))
    return BipartiteGraph(a, b, tuple(full for _ in range(b)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs >= 3 vertices")
    return Graph.make(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.make(n, [(i, i + 1) for i in range(n - 1)])
