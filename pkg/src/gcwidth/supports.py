"""Host-graph supports: witnesses, verification, and recognizers.

A support witness is a graph on the A side of a bipartite graph in which
every neighbourhood N(b) must induce a connected subgraph.  Recognizers
return a witness or None; every returned witness passes verify_support.
"""

from __future__ import annotations

import dataclasses
from itertools import combinations

from .graphs import BipartiteGraph, Hypergraph, neighbourhood_hypergraph

KINDS = ("path", "cycle", "tree", "star", "comb")


@dataclasses.dataclass(frozen=True)
class SupportWitness:
    """Host graph on a set of A-vertices, tagged with its shape kind."""

    kind: str
    vertices: tuple[int, ...]
    host_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate witness vertices")
        for u, v in self.host_edges:
            if u >= v or u not in vs or v not in vs:
                raise ValueError(f"host edge ({u},{v}) invalid")

    def host_adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.host_edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.host_edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def branching(self) -> tuple[int, ...]:
        deg = self.degrees()
        return tuple(sorted(v for v, d in deg.items() if d >= 3))

    @property
    def max_degree(self) -> int:
        deg = self.degrees()
        return max(deg.values(), default=0)

    @property
    def t(self) -> int:
        return len(self.branching)

    @property
    def delta(self) -> int:
        return self.max_degree

    def path_order(self) -> tuple[int, ...]:
        """Vertex sequence of a path-shaped host, least endpoint first."""
        if not _is_path(self):
            raise ValueError("host is not a path")
        if len(self.vertices) <= 1:
            return tuple(self.vertices)
        adj = self.host_adjacency()
        ends = sorted(v for v in self.vertices if len(adj[v]) <= 1)
        return _walk_path(adj, ends[0], len(self.vertices))

    def cycle_order(self) -> tuple[int, ...]:
        """Circular order of a cycle-shaped host, canonical rotation."""
        n = len(self.vertices)
        if n <= 2:
            return tuple(sorted(self.vertices))
        adj = self.host_adjacency()
        start = min(self.vertices)
        nxt = min(adj[start])
        order = [start, nxt]
        while len(order) < n:
            cur, prev = order[-1], order[-2]
            (following,) = adj[cur] - {prev}
            order.append(following)
        return tuple(order)


def _walk_path(adj, start, n):
    order = [start]
    prev = None
    while len(order) < n:
        nexts = sorted(adj[order[-1]] - ({prev} if prev is not None else set()))
        prev = order[-1]
        order.append(nexts[0])
    return tuple(order)


def _connected(vertices, adj, inside) -> bool:
    inside = set(inside)
    if len(inside) <= 1:
        return True
    start = next(iter(inside))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in inside and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == inside


def _is_tree(w: SupportWitness) -> bool:
    n = len(w.vertices)
    if n == 0:
        return len(w.host_edges) == 0
    return len(w.host_edges) == n - 1 and _connected(w.vertices, w.host_adjacency(), w.vertices)


def _is_path(w: SupportWitness) -> bool:
    return _is_tree(w) and w.max_degree <= 2


def _is_cycle(w: SupportWitness) -> bool:
    n = len(w.vertices)
    if n == 1:
        return len(w.host_edges) == 0
    if n == 2:
        return len(w.host_edges) == 1  # degenerate closed pair
    deg = w.degrees()
    return (
        len(w.host_edges) == n
        and all(d == 2 for d in deg.values())
        and _connected(w.vertices, w.host_adjacency(), w.vertices)
    )


def _is_star(w: SupportWitness) -> bool:
    n = len(w.vertices)
    if not _is_tree(w):
        return False
    if n <= 2:
        return True
    deg = w.degrees()
    return sorted(deg.values())[-1] == n - 1


def _is_comb(w: SupportWitness) -> bool:
    # backbone = non-leaves; every backbone vertex needs exactly one tooth
    n = len(w.vertices)
    if not _is_tree(w) or n % 2 != 0:
        return False
    if n == 2:
        return True
    deg = w.degrees()
    backbone = {v for v, d in deg.items() if d >= 2}
    if len(backbone) != n // 2:
        return False
    adj = w.host_adjacency()
    if not _connected(w.vertices, adj, backbone):
        return False
    for v in backbone:
        inside = sum(1 for x in adj[v] if x in backbone)
        if inside > 2 or len(adj[v]) - inside != 1:
            return False
    return True


_SHAPE_TESTS = {
    "path": _is_path,
    "cycle": _is_cycle,
    "tree": _is_tree,
    "star": _is_star,
    "comb": _is_comb,
}


def verify_support(g: BipartiteGraph, w: SupportWitness) -> bool:
    """Check the shape invariant and connectivity of every N(b) in the host.

    Empty and singleton neighbourhoods count as connected.  Raises ValueError
    when the witness does not span exactly the A side of g.
    """
    if tuple(sorted(w.vertices)) != tuple(range(g.a_size)):
        raise ValueError("witness does not span the A side of the graph")
    if not _SHAPE_TESTS[w.kind](w):
        return False
    adj = w.host_adjacency()
    if w.kind == "cycle" and len(w.vertices) == 2:
        # closed pair: both subsets of size 2 are arcs
        return True
    return all(_connected(w.vertices, adj, nb) for nb in g.adj)


# ---------------------------------------------------------------------------
# degree-bounded tree support (exact search)


def tree_support_degree_bounded(h: Hypergraph, caps) -> frozenset[tuple[int, int]] | None:
    """Spanning tree on the ground set with every hyperedge inducing a subtree
    and deg(i) <= caps[i] for all i, or None when none exists.

    Exact branch and bound over partial forests.  At each node the first
    unsatisfied hyperedge (smallest first) is selected and the component of
    its least member is connected to the rest of the hyperedge by one new
    edge; a branch dies when two members of a hyperedge are already joined
    by a forest path that leaves the hyperedge, since no supertree can then
    induce a connected subgraph on it.
    """
    n = h.ground_size
    caps = list(caps)
    if len(caps) != n:
        raise ValueError("cap count must match ground size")
    if n == 0:
        raise ValueError("empty ground set")
    if n == 1:
        return frozenset()
    targets = sorted(
        {he for he in h.hyperedges if len(he) >= 2},
        key=lambda s: (len(s), sorted(s)),
    )
    targets.append(frozenset(range(n)))  # spanning connectivity last

    edges: list[tuple[int, int]] = []
    deg = [0] * n
    comp = list(range(n))  # global component representative (min vertex)

    def local_components(target):
        # components of the forest restricted to the hyperedge
        rep = {v: v for v in target}

        def find(x):
            while rep[x] != x:
                rep[x] = rep[rep[x]]
                x = rep[x]
            return x

        for u, v in edges:
            if u in rep and v in rep:
                ru, rv = find(u), find(v)
                if ru != rv:
                    if rv < ru:
                        ru, rv = rv, ru
                    rep[rv] = ru
        return {v: find(v) for v in target}

    def pick_branch_target():
        # returns (target, local reps) for the first unsatisfied hyperedge,
        # None when all are satisfied, or "dead" when the branch cannot win
        for target in targets:
            local = local_components(target)
            roots = set(local.values())
            if len(roots) == 1:
                continue
            groups: dict[int, set[int]] = {}
            for v in target:
                groups.setdefault(comp[v], set()).add(local[v])
            if any(len(ls) > 1 for ls in groups.values()):
                return None, None, True
            return target, local, False
        return None, None, False

    def solve():
        target, local, dead = pick_branch_target()
        if dead:
            return False
        if target is None:
            return True
        c0 = local[min(target)]
        inside = sorted(v for v in target if local[v] == c0)
        outside = sorted(v for v in target if local[v] != c0)
        for u in inside:
            if deg[u] >= caps[u]:
                continue
            for v in outside:
                if deg[v] >= caps[v]:
                    continue
                edge = (min(u, v), max(u, v))
                edges.append(edge)
                deg[u] += 1
                deg[v] += 1
                saved = comp[:]
                ru, rv = comp[u], comp[v]
                keep, drop = min(ru, rv), max(ru, rv)
                for i in range(n):
                    if comp[i] == drop:
                        comp[i] = keep
                if solve():
                    return True
                comp[:] = saved
                deg[u] -= 1
                deg[v] -= 1
                edges.pop()
        return False

    if solve():
        return frozenset(edges)
    return None


# ---------------------------------------------------------------------------
# recognizers


def recognize_convex(g: BipartiteGraph) -> SupportWitness | None:
    """Path support on A making every N(b) an interval, if one exists."""
    a = g.a_size
    if a == 0:
        return SupportWitness("path", (), frozenset())
    if all(len(nb) <= 1 for nb in g.adj):
        # unconstrained: canonical identity path
        return SupportWitness(
            "path", tuple(range(a)), frozenset((i, i + 1) for i in range(a - 1))
        )
    edges = tree_support_degree_bounded(neighbourhood_hypergraph(g), [2] * a)
    if edges is None:
        return None
    return SupportWitness("path", tuple(range(a)), edges)


def recognize_circular(g: BipartiteGraph) -> SupportWitness | None:
    """Cycle support on A making every N(b) a circular arc, if one exists.

    A convex graph is closed into a cycle directly.  Otherwise the cycle is
    cut at a fixed vertex a0: arcs avoiding a0 must become intervals of the
    remaining path and arcs through a0 are replaced by their complements,
    which reduces recognition to one consecutive-ones instance.  Any single
    cut vertex is complete because a circular order can be rotated.
    """
    a = g.a_size
    if a == 0:
        return SupportWitness("cycle", (), frozenset())
    if a <= 2:
        edges = [(0, 1)] if a == 2 else []
        return SupportWitness("cycle", tuple(range(a)), frozenset(edges))
    w = recognize_convex(g)
    if w is not None:
        order = w.path_order()
        edges = {tuple(sorted((order[i], order[i + 1]))) for i in range(a - 1)}
        edges.add(tuple(sorted((order[-1], order[0]))))
        return SupportWitness("cycle", tuple(range(a)), frozenset(edges))
    cut = 0
    rest = list(range(1, a))
    relabel = {v: i for i, v in enumerate(rest)}
    full = frozenset(rest)
    reduced = []
    for nb in g.adj:
        s = (full - nb) if cut in nb else nb
        reduced.append(frozenset(relabel[v] for v in s))
    edges = tree_support_degree_bounded(
        Hypergraph(a - 1, tuple(reduced)), [2] * (a - 1)
    )
    if edges is None:
        return None
    pw = SupportWitness("path", tuple(range(a - 1)), frozenset(edges))
    order = [cut] + [rest[i] for i in pw.path_order()]
    cyc = {tuple(sorted((order[i], order[(i + 1) % a]))) for i in range(a)}
    return SupportWitness("cycle", tuple(range(a)), frozenset(cyc))


def recognize_star(g: BipartiteGraph) -> SupportWitness | None:
    """Star support: a centre lying in every N(b) of size >= 2, if any."""
    a = g.a_size
    if a == 0:
        return SupportWitness("star", (), frozenset())
    candidates = set(range(a))
    for nb in g.adj:
        if len(nb) >= 2:
            candidates &= nb
        if not candidates:
            return None
    centre = min(candidates)
    edges = frozenset((min(centre, v), max(centre, v)) for v in range(a) if v != centre)
    return SupportWitness("star", tuple(range(a)), edges)


def recognize_tdelta(g: BipartiteGraph, t: int, delta: int) -> SupportWitness | None:
    """Tree support with at most t branching vertices and max degree <= delta.

    Iterates over all A-subsets of size 0..t, capping the chosen vertices at
    degree delta and everything else at 2, and runs the exact degree-bounded
    search on each cap assignment.  Empty iff no subset succeeds.
    """
    if t < 0 or delta < 2:
        raise ValueError("need t >= 0 and delta >= 2")
    a = g.a_size
    if a == 0:
        return SupportWitness("tree", (), frozenset())
    h = neighbourhood_hypergraph(g)
    for size in range(0, t + 1):
        for chosen in combinations(range(a), size):
            caps = [2] * a
            for v in chosen:
                caps[v] = delta
            edges = tree_support_degree_bounded(h, caps)
            if edges is not None:
                return SupportWitness("tree", tuple(range(a)), edges)
    return None


def restrict_support(w: SupportWitness, subset) -> SupportWitness:
    """Witness restricted to `subset`, which must induce a connected subtree.

    Vertex labels are preserved; kind is recomputed (path when the restricted
    host has maximum degree <= 2, tree otherwise).
    """
    if w.kind == "cycle":
        raise ValueError("cannot restrict a cycle witness")
    sub = set(subset)
    if not sub <= set(w.vertices):
        raise ValueError("subset not within witness vertices")
    edges = frozenset(e for e in w.host_edges if e[0] in sub and e[1] in sub)
    adj = {v: set() for v in sub}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if not _connected(sub, adj, sub):
        raise ValueError("subset not connected in host")
    maxdeg = max((len(s) for s in adj.values()), default=0)
    kind = "path" if maxdeg <= 2 else "tree"
    return SupportWitness(kind, tuple(sorted(sub)), edges)


# ---------------------------------------------------------------------------
# JSON wire form


def witness_to_json(w: SupportWitness) -> dict:
    return {
        "kind": w.kind,
        "vertices": [f"a{v + 1}" for v in w.vertices],
        "host_edges": sorted([f"a{u + 1}", f"a{v + 1}"] for u, v in w.host_edges),
        "t": w.t,
        "delta": w.delta,
    }


def witness_from_json(data: dict) -> SupportWitness:
    def parse(tok):
        if not tok.startswith("a") or not tok[1:].isdigit():
            raise ValueError(f"bad A-vertex token {tok!r}")
        return int(tok[1:]) - 1

    vertices = tuple(sorted(parse(tok) for tok in data["vertices"]))
    edges = frozenset(
        (min(parse(u), parse(v)), max(parse(u), parse(v)))
        for u, v in data["host_edges"]
    )
    return SupportWitness(data["kind"], vertices, edges)
