"""Branch decompositions, cut functions, width measurement, and the
width-bounded constructions for generalized convex bipartite graphs.

Cut conventions: a decomposition tree is subcubic with a bijection from
graph vertices to its leaves; every tree edge splits the leaves and hence
the vertex set, and the cut value of the split is the size of a maximum
induced matching across it (induced in the cut graph for mim, induced in
the whole graph for sim).
"""

from __future__ import annotations

import dataclasses

from .graphs import BipartiteGraph, Graph, induced_subgraph
from .supports import SupportWitness, restrict_support, verify_support


class SizeGuardError(ValueError):
    """Exact oracle invoked beyond its configured instance-size guard."""


@dataclasses.dataclass
class BranchDecomposition:
    """Subcubic tree plus a bijection leaf node -> graph vertex."""

    tree: Graph
    leaf_map: dict[int, int]
    linear: bool = False
    spine: tuple[int, ...] = ()

    def leaves(self) -> set[int]:
        if self.tree.n == 1:
            return {0}
        deg = self.tree.degree_sequence()
        return {v for v in range(self.tree.n) if deg[v] == 1}


@dataclasses.dataclass(frozen=True)
class CutReport:
    edge: tuple[int, int]
    side: tuple[int, ...]
    value: int


def validate_decomposition(g: Graph | BipartiteGraph, d: BranchDecomposition) -> None:
    """Raise ValueError unless d is a valid branch decomposition of g."""
    n = g.n
    t = d.tree
    if t.n == 0:
        raise ValueError("empty decomposition tree")
    if len(t.edges) != t.n - 1:
        raise ValueError("decomposition tree is not a tree")
    if t.n > 1:
        seen = {0}
        stack = [0]
        adj = t.adjacency()
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != t.n:
            raise ValueError("decomposition tree is disconnected")
    leaves = d.leaves()
    deg = t.degree_sequence()
    for v in range(t.n):
        if v not in leaves and deg[v] > 3:
            raise ValueError(f"internal node {v} has degree {deg[v]} > 3")
    if set(d.leaf_map) != leaves:
        raise ValueError("leaf_map keys do not match tree leaves")
    if sorted(d.leaf_map.values()) != list(range(n)):
        raise ValueError("leaf_map is not a bijection onto the vertex set")


def caterpillar_from_ordering(order) -> BranchDecomposition:
    """Linear decomposition whose i-th leaf carries the i-th vertex.

    Degenerate forms: length 1 gives the one-node tree, length 2 a single
    edge with both endpoints leaves; length l >= 3 gives the 2l-vertex
    caterpillar with spine s_1..s_l and leaf t_i attached to s_i.
    """
    order = list(order)
    if len(set(order)) != len(order):
        raise ValueError("ordering contains duplicates")
    l = len(order)
    if l == 0:
        raise ValueError("empty ordering")
    if l == 1:
        return BranchDecomposition(Graph(1, frozenset()), {0: order[0]}, True, ())
    if l == 2:
        tree = Graph.make(2, [(0, 1)])
        return BranchDecomposition(tree, {0: order[0], 1: order[1]}, True, ())
    edges = [(i, i + 1) for i in range(l - 1)]
    edges += [(i, l + i) for i in range(l)]
    tree = Graph.make(2 * l, edges)
    leaf_map = {l + i: order[i] for i in range(l)}
    return BranchDecomposition(tree, leaf_map, True, tuple(range(l)))


# ---------------------------------------------------------------------------
# exact maximum induced matching across a cut


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_independent_set(conflict: list[int], universe: int) -> int:
    """Exact MIS on the conflict graph, returned as a bitmask of vertices.

    Splits into connected components first; each component is solved by
    include/exclude branching on a maximum-conflict pivot with the trivial
    remaining-count bound, which is effective because conflict graphs of
    small cuts are dense.
    """
    chosen = 0
    remaining = universe
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= conflict[v] & remaining & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp

        best_size = 0
        best_mask = 0

        def solve(cand, cur_mask, cur_size):
            nonlocal best_size, best_mask
            while cand:
                if cur_size + cand.bit_count() <= best_size:
                    return
                iso = 0
                pivot = -1
                pivot_deg = -1
                for v in _bits(cand):
                    d = (conflict[v] & cand).bit_count()
                    if d == 0:
                        iso |= 1 << v
                    elif d > pivot_deg:
                        pivot_deg = d
                        pivot = v
                if iso:
                    cur_mask |= iso
                    cur_size += iso.bit_count()
                    cand &= ~iso
                    continue
                bit = 1 << pivot
                solve(cand & ~(conflict[pivot] | bit), cur_mask | bit, cur_size + 1)
                cand &= ~bit
            if cur_size > best_size:
                best_size = cur_size
                best_mask = cur_mask

        solve(comp, 0, 0)
        chosen |= best_mask
    return chosen


def _mim_pair(adj_masks, edges, xmask: int, ymask: int, mode: str):
    """Maximum induced matching between the disjoint vertex sets X and Y.

    mode "mim": the matching must be induced in the cut graph (only X-Y
    edges forbid pairs); mode "sim": induced in the whole graph.
    Returns (size, tuple of matching edges).
    """
    cross = []
    for u, v in edges:
        if (xmask >> u) & 1 and (ymask >> v) & 1:
            cross.append((u, v))
        elif (ymask >> u) & 1 and (xmask >> v) & 1:
            cross.append((v, u))
    m = len(cross)
    if m == 0:
        return 0, ()
    inc: dict[int, int] = {}
    for i, (u, v) in enumerate(cross):
        inc[u] = inc.get(u, 0) | (1 << i)
        inc[v] = inc.get(v, 0) | (1 << i)
    both = xmask | ymask
    conflict = []
    for i, (u, v) in enumerate(cross):
        c = inc[u] | inc[v]
        if mode == "mim":
            for w in _bits(adj_masks[u] & ymask):
                c |= inc.get(w, 0)
            for w in _bits(adj_masks[v] & xmask):
                c |= inc.get(w, 0)
        else:
            for w in _bits((adj_masks[u] | adj_masks[v]) & both):
                c |= inc.get(w, 0)
        conflict.append(c & ~(1 << i))
    sol = _max_independent_set(conflict, (1 << m) - 1)
    witness = tuple(sorted((min(cross[i]), max(cross[i])) for i in _bits(sol)))
    return len(witness), witness


def _prep(g: Graph):
    return g.adjacency_masks(), sorted(g.edges)


def max_induced_matching_cut(g: Graph, side) -> tuple[int, tuple]:
    """Exact maximum induced matching of the cut graph G[X, V-X]."""
    xmask = 0
    for v in side:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
        xmask |= 1 << v
    ymask = ((1 << g.n) - 1) & ~xmask
    adj, edges = _prep(g)
    return _mim_pair(adj, edges, xmask, ymask, "mim")


def max_induced_matching_sim(g: Graph, side) -> tuple[int, tuple]:
    """As max_induced_matching_cut but the matching is induced in G itself."""
    xmask = 0
    for v in side:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
        xmask |= 1 << v
    ymask = ((1 << g.n) - 1) & ~xmask
    adj, edges = _prep(g)
    return _mim_pair(adj, edges, xmask, ymask, "sim")


# ---------------------------------------------------------------------------
# width of a decomposition


def _tree_side(adj: list[set[int]] | dict, u: int, v: int) -> set[int]:
    """Nodes of the component containing u after deleting edge (u,v)."""
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if {x, y} == {u, v}:
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def width_of(g: Graph | BipartiteGraph, d: BranchDecomposition, mode: str = "mim"):
    """Maximum cut value over all tree edges, with the worst cut reported.

    Ties go to the first edge in canonical (sorted) tree-edge order.  All
    edges are included: leaf edges contribute at most 1.
    Returns (width, CutReport or None for edgeless trees).
    """
    if mode not in ("mim", "sim"):
        raise ValueError(f"unknown mode {mode!r}")
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    validate_decomposition(gg, d)
    if not d.tree.edges:
        return 0, None
    adj_masks, edges = _prep(gg)
    tree_adj = d.tree.adjacency()
    full = (1 << gg.n) - 1
    best = -1
    best_report = None
    for (u, v) in sorted(d.tree.edges):
        side_nodes = _tree_side(tree_adj, u, v)
        xmask = 0
        for node in side_nodes:
            if node in d.leaf_map:
                xmask |= 1 << d.leaf_map[node]
        value, _ = _mim_pair(adj_masks, edges, xmask, full & ~xmask, mode)
        if value > best:
            best = value
            side = tuple(sorted(_bits(xmask)))
            best_report = CutReport((u, v), side, value)
    return best, best_report


# ---------------------------------------------------------------------------
# exact width oracles (small instances)


def _min_width_over_trees(g: Graph, mode: str, guard: int):
    n = g.n
    if n == 0:
        raise ValueError("empty graph")
    if n > guard:
        raise SizeGuardError(f"{n} vertices exceeds oracle guard {guard}")
    if n == 1:
        return 0, BranchDecomposition(Graph(1, frozenset()), {0: 0}, True, ())
    adj_masks, edges = _prep(g)
    memo: dict[tuple[int, int], int] = {}

    def cutv(xmask, ymask):
        key = (xmask, ymask) if xmask <= ymask else (ymask, xmask)
        if key not in memo:
            memo[key] = _mim_pair(adj_masks, edges, xmask, ymask, mode)[0]
        return memo[key]

    start = caterpillar_from_ordering(range(n))
    best_val, _ = width_of(g, start, mode)
    best_tree = start
    if n == 2:
        return best_val, best_tree

    def partial_width(tadj, placed_mask, stop_at):
        worst = 0
        todo = [(u, v) for u in tadj for v in tadj[u] if u < v]
        for u, v in todo:
            side = _tree_side(tadj, u, v)
            xmask = 0
            for node in side:
                if node < n and (placed_mask >> node) & 1:
                    xmask |= 1 << node
            val = cutv(xmask, placed_mask & ~xmask)
            if val > worst:
                worst = val
                if worst >= stop_at:
                    return worst
        return worst

    def insert(k, tadj, next_internal, placed_mask):
        nonlocal best_val, best_tree
        if k == n:
            w = partial_width(tadj, placed_mask, best_val)
            if w < best_val:
                best_val = w
                edge_list = [(u, v) for u in tadj for v in tadj[u] if u < v]
                node_ids = sorted(tadj)
                relabel = {node: i for i, node in enumerate(node_ids)}
                tree = Graph.make(len(node_ids), [(relabel[u], relabel[v]) for u, v in edge_list])
                best_tree = BranchDecomposition(tree, {relabel[i]: i for i in range(n)}, False, ())
            return
        tree_edges = sorted((u, v) for u in tadj for v in tadj[u] if u < v)
        for (u, v) in tree_edges:
            w = next_internal
            tadj[u].discard(v)
            tadj[v].discard(u)
            tadj[w] = {u, v, k}
            tadj[u].add(w)
            tadj[v].add(w)
            tadj[k] = {w}
            new_mask = placed_mask | (1 << k)
            if partial_width(tadj, new_mask, best_val) < best_val:
                insert(k + 1, tadj, next_internal + 1, new_mask)
            del tadj[w]
            del tadj[k]
            tadj[u].discard(w)
            tadj[v].discard(w)
            tadj[u].add(v)
            tadj[v].add(u)

    tadj0 = {0: {1}, 1: {0}}
    insert(2, tadj0, n, 0b11)
    return best_val, best_tree


def mimw_oracle(g: Graph | BipartiteGraph, guard: int = 8):
    """Exact mim-width over all branch decompositions; (value, witness)."""
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    return _min_width_over_trees(gg, "mim", guard)


def simw_oracle(g: Graph | BipartiteGraph, guard: int = 8):
    """Exact sim-width over all branch decompositions; (value, witness)."""
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    return _min_width_over_trees(gg, "sim", guard)


# ---------------------------------------------------------------------------
# bound formulas


def spider_bound(delta: int) -> int:
    """Width guarantee for one branching vertex of degree at most delta."""
    return max(2 * ((delta * delta) // 4), 2 * delta - 1)


def tdelta_bound(t: int, delta: int) -> int:
    """Width guarantee for at most t branching vertices of degree <= delta."""
    if t == 0:
        return 1
    return spider_bound(delta) + t * t * delta


def multijoin_bound(c: int, p: int, part_widths) -> int:
    """Width guarantee when gluing p parts with pairwise cut values <= c."""
    inner = max(part_widths, default=0)
    return max(c * ((p * p) // 4), inner + c * (p - 1))


# ---------------------------------------------------------------------------
# constructions


def decompose_convex(g: BipartiteGraph, w: SupportWitness) -> BranchDecomposition:
    """Linear decomposition of width <= 1 from a path support.

    Order: A along the path; each b with neighbours goes immediately after
    its largest A-neighbour (ties by b index), isolated b's at the end.
    """
    if w.kind != "path":
        raise ValueError(f"need a path witness, got {w.kind!r}")
    if not verify_support(g, w):
        raise ValueError("invalid path witness")
    order = list(w.path_order()) if g.a_size else []
    pos = {a: i for i, a in enumerate(order)}
    after: dict[int, list[int]] = {i: [] for i in range(len(order))}
    tail = []
    for j, nb in enumerate(g.adj):
        if nb:
            after[max(pos[a] for a in nb)].append(g.a_size + j)
        else:
            tail.append(g.a_size + j)
    total = []
    for i, a in enumerate(order):
        total.append(a)
        total.extend(sorted(after[i]))
    total.extend(sorted(tail))
    return caterpillar_from_ordering(total)


def decompose_circular(g: BipartiteGraph, w: SupportWitness) -> BranchDecomposition:
    """Linear decomposition of width <= 2 from a cycle support.

    The circular order is linearized; B splits into the neighbours of the
    last A-vertex (inserted right after it) and the rest (each inserted
    immediately after its largest A-neighbour).
    """
    if w.kind != "cycle":
        raise ValueError(f"need a cycle witness, got {w.kind!r}")
    if not verify_support(g, w):
        raise ValueError("invalid cycle witness")
    order = list(w.cycle_order()) if g.a_size else []
    pos = {a: i for i, a in enumerate(order)}
    n = len(order)
    after: dict[int, list[int]] = {i: [] for i in range(n)}
    tail = []
    for j, nb in enumerate(g.adj):
        b = g.a_size + j
        if not nb:
            tail.append(b)
        elif n - 1 in (pos[a] for a in nb):
            after[n - 1].append(b)
        else:
            after[max(pos[a] for a in nb)].append(b)
    total = []
    for i, a in enumerate(order):
        total.append(a)
        total.extend(sorted(after[i]))
    total.extend(sorted(tail))
    return caterpillar_from_ordering(total)


def glue_multijoin(g: Graph, parts, part_decomps) -> BranchDecomposition:
    """Join decompositions of a vertex partition along a new spine.

    Each part tree is attached to its own spine vertex (subdividing one
    part-tree edge to create the hook).  Width obeys the multijoin bound
    h = max{c*floor((p/2)^2), max_i width_i + c(p-1)} for c the maximum
    pairwise cut value between parts; callers assert it per instance.
    """
    parts = [sorted(p) for p in parts]
    p = len(parts)
    if p == 0:
        raise ValueError("no parts")
    flat = [v for part in parts for v in part]
    if sorted(flat) != list(range(g.n)) or len(flat) != len(set(flat)):
        raise ValueError("parts do not partition the vertex set")
    if len(part_decomps) != p:
        raise ValueError("one decomposition required per part")
    for part, d in zip(parts, part_decomps):
        if sorted(d.leaf_map.values()) != part:
            raise ValueError("part decomposition does not cover its part")
    if p == 1:
        return part_decomps[0]

    edges: list[tuple[int, int]] = [(i, i + 1) for i in range(p - 1)]
    leaf_map: dict[int, int] = {}
    next_id = p
    for i, d in enumerate(part_decomps):
        relabel = {}
        for node in range(d.tree.n):
            relabel[node] = next_id
            next_id += 1
        for u, v in sorted(d.tree.edges):
            edges.append((min(relabel[u], relabel[v]), max(relabel[u], relabel[v])))
        for leaf, vertex in d.leaf_map.items():
            leaf_map[relabel[leaf]] = vertex
        if d.tree.n == 1:
            edges.append((i, relabel[0]))
        else:
            hu, hv = min(sorted(d.tree.edges))
            hu, hv = relabel[hu], relabel[hv]
            edges.remove((min(hu, hv), max(hu, hv)))
            hook = next_id
            next_id += 1
            edges.append((min(hu, hook), max(hu, hook)))
            edges.append((min(hv, hook), max(hv, hook)))
            edges.append((i, hook))
    tree = Graph.make(next_id, edges)
    return BranchDecomposition(tree, leaf_map, False, ())


def _relabel_leaves(d: BranchDecomposition, value_map: dict[int, int]) -> BranchDecomposition:
    return BranchDecomposition(
        d.tree, {leaf: value_map[v] for leaf, v in d.leaf_map.items()}, d.linear, d.spine
    )


def _path_witness(vertices_in_order) -> SupportWitness:
    vs = list(vertices_in_order)
    edges = frozenset(
        (min(vs[i], vs[i + 1]), max(vs[i], vs[i + 1])) for i in range(len(vs) - 1)
    )
    return SupportWitness("path", tuple(sorted(vs)), edges)


def decompose_spider(g: BipartiteGraph, w: SupportWitness) -> BranchDecomposition:
    """Decomposition of width <= max{2*floor((D/2)^2), 2D-1} from a tree
    support with at most one branching vertex of degree D.

    The A side splits into the components around the branching vertex u;
    every part is convex on a path host, and the parts are glued along a
    spine.  A path-shaped support delegates to the convex construction.
    """
    if w.kind == "cycle":
        raise ValueError("need an acyclic witness")
    if not verify_support(g, w):
        raise ValueError("invalid tree witness")
    branching = w.branching
    if len(branching) > 1:
        raise ValueError("witness has more than one branching vertex")
    if len(branching) == 0:
        return decompose_convex(g, _path_witness(w.path_order()))
    u = branching[0]
    adj = w.host_adjacency()
    comps = []
    seen_all = {u}
    for c_start in sorted(adj[u]):
        if c_start in seen_all:
            continue
        comp = {c_start}
        stack = [c_start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != u and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen_all |= comp
        comps.append(comp)
    comps.sort(key=min)

    b_prime, b_rest = [], []
    b_of_comp: list[list[int]] = [[] for _ in comps]
    for j, nb in enumerate(g.adj):
        b = g.a_size + j
        if nb <= {u}:
            b_prime.append(b)
            continue
        placed = False
        for i, comp in enumerate(comps):
            if nb <= comp | {u}:
                b_of_comp[i].append(b)
                placed = True
                break
        if not placed:
            b_rest.append(b)

    def comp_path(comp):
        # each component is a path; u's neighbour inside it is an endpoint
        # (non-branching vertices have host degree <= 2), so walk from the
        # opposite end toward it
        (c_near,) = set(adj[u]) & comp
        if len(comp) == 1:
            return [c_near]
        local = {v: set(adj[v]) & comp for v in comp}
        ends = [v for v in comp if len(local[v]) <= 1]
        (far,) = [e for e in ends if e != c_near]
        order = [far]
        prev = None
        while len(order) < len(comp):
            nxt = sorted(local[order[-1]] - ({prev} if prev is not None else set()))
            prev = order[-1]
            order.append(nxt[0])
        return order

    parts = []
    hosts = []
    for i, comp in enumerate(comps):
        a_path = comp_path(comp)
        if i == 0:
            a_part = a_path + [u]
            b_part = sorted(b_of_comp[0] + b_prime + b_rest)
        else:
            a_part = a_path
            b_part = sorted(b_of_comp[i])
        parts.append(sorted(a_part) + b_part)
        hosts.append(a_part)

    decomps = []
    for part, host in zip(parts, hosts):
        sub, mapping = induced_subgraph(g, part)
        local_host = [mapping[v] for v in host]
        d = decompose_convex(sub, _path_witness(local_host))
        inverse = {new: old for old, new in mapping.items()}
        decomps.append(_relabel_leaves(d, inverse))
    return glue_multijoin(g.to_graph(), parts, decomps)


def decompose_tdelta(
    g: BipartiteGraph, w: SupportWitness, trace: list | None = None
) -> BranchDecomposition:
    """Recursive decomposition for tree supports with t branching vertices.

    Splits the support at an edge balancing the branching vertices between
    the two sides, partitions B by contact with the first side, recurses,
    and glues the two half-decompositions.  Width <= tdelta_bound(t, delta);
    every recursion level records its split cut value against the guarantee
    delta*(t-1) when a trace list is supplied.
    """
    if w.kind == "cycle":
        raise ValueError("need an acyclic witness")
    if not verify_support(g, w):
        raise ValueError("invalid tree witness")
    t = len(w.branching)
    if t <= 1:
        return decompose_spider(g, w)

    adj = w.host_adjacency()

    def side_branchings(side):
        count = 0
        for v in side:
            d = sum(1 for x in adj[v] if x in side)
            if d >= 3:
                count += 1
        return count

    best = None
    for (u, v) in sorted(w.host_edges):
        side_u = _component_without(adj, u, v)
        side_v = set(w.vertices) - side_u
        t1, t2 = side_branchings(side_u), side_branchings(side_v)
        key = (max(t1, t2), (u, v))
        if max(t1, t2) < t and (best is None or key < best[0]):
            best = (key, (u, v), side_u, side_v)
    if best is None:
        raise AssertionError("no splitting edge despite multiple branchings")
    _, (u, v), a1, a2 = best

    b1 = [g.a_size + j for j, nb in enumerate(g.adj) if nb & a1]
    b2 = [g.a_size + j for j, nb in enumerate(g.adj) if not (nb & a1)]
    x1 = sorted(a1) + b1
    x2 = sorted(a2) + b2

    if trace is not None:
        cut_value, _ = max_induced_matching_cut(g.to_graph(), x1)
        trace.append(
            {
                "t": t,
                "delta": w.max_degree,
                "cut": cut_value,
                "bound": w.max_degree * (t - 1),
            }
        )

    decomps = []
    for part, a_side in ((x1, a1), (x2, a2)):
        sub, mapping = induced_subgraph(g, part)
        rw = restrict_support(w, a_side)
        local_edges = frozenset(
            (min(mapping[p], mapping[q]), max(mapping[p], mapping[q]))
            for p, q in rw.host_edges
        )
        local_w = SupportWitness(rw.kind, tuple(sorted(mapping[a] for a in a_side)), local_edges)
        d = decompose_tdelta(sub, local_w, trace)
        inverse = {new: old for old, new in mapping.items()}
        decomps.append(_relabel_leaves(d, inverse))
    return glue_multijoin(g.to_graph(), [x1, x2], decomps)


def _component_without(adj: dict[int, set[int]], u: int, v: int) -> set[int]:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if {x, y} == {u, v}:
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


# ---------------------------------------------------------------------------
# JSON wire form


def decomposition_to_json(d: BranchDecomposition, g) -> dict:
    from .graphs import vertex_token

    leaves = sorted(d.leaf_map)
    internal = sorted(v for v in range(d.tree.n) if v not in d.leaf_map)
    name = {}
    for i, node in enumerate(leaves):
        name[node] = f"t{i + 1}"
    for i, node in enumerate(internal):
        name[node] = f"s{i + 1}"

    def tok_key(tok):
        return (tok[0], int(tok[1:]))

    pairs = [sorted((name[u], name[v]), key=tok_key) for u, v in d.tree.edges]
    return {
        "linear": d.linear,
        "spine": [name[s] for s in d.spine],
        "leaves": {name[leaf]: vertex_token(g, v) for leaf, v in sorted(d.leaf_map.items())},
        "tree_edges": sorted(pairs, key=lambda p: (tok_key(p[0]), tok_key(p[1]))),
    }


def decomposition_from_json(data: dict, g) -> BranchDecomposition:
    from .graphs import BipartiteGraph as _BG

    def vertex_of(tok: str) -> int:
        if isinstance(g, _BG):
            idx = int(tok[1:]) - 1
            return idx if tok[0] == "a" else g.a_size + idx
        return int(tok) - 1

    leaf_names = sorted(data["leaves"], key=lambda s: int(s[1:]))
    ids = {nm: i for i, nm in enumerate(leaf_names)}
    internal_names = sorted(
        {nm for e in data["tree_edges"] for nm in e if nm not in ids},
        key=lambda s: int(s[1:]),
    )
    for nm in internal_names:
        ids[nm] = len(ids)
    edges = [(ids[a], ids[b]) for a, b in data["tree_edges"]]
    tree = Graph.make(max(len(ids), 1), edges)
    leaf_map = {ids[nm]: vertex_of(tok) for nm, tok in data["leaves"].items()}
    spine = tuple(ids[nm] for nm in data.get("spine", []))
    return BranchDecomposition(tree, leaf_map, bool(data.get("linear", False)), spine)
