"""Thinness and proper thinness: verifiers, constructions, exact oracles,
and the bridge from vertex orderings to linear branch decompositions.

A representation is an ordering of V plus a partition into classes.  It is
consistent when for r < s < t with v_r, v_s co-classed, v_r v_t in E forces
v_s v_t in E; strongly consistent adds the mirrored condition on (s, t)
co-classed pairs.
"""

from __future__ import annotations

import dataclasses

from .decomp import BranchDecomposition, SizeGuardError, caterpillar_from_ordering
from .graphs import BipartiteGraph, Graph
from .supports import SupportWitness, verify_support


@dataclasses.dataclass
class ThinRepresentation:
    order: tuple[int, ...]
    classes: tuple[frozenset[int], ...]
    strong: bool = False

    def class_count(self) -> int:
        return len(self.classes)


@dataclasses.dataclass
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1


def _check_representation(g: Graph, r: ThinRepresentation) -> None:
    if sorted(r.order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertex set")
    flat = [v for c in r.classes for v in c]
    if sorted(flat) != list(range(g.n)) or len(flat) != len(set(flat)):
        raise ValueError("classes do not partition the vertex set")
    if any(not c for c in r.classes):
        raise ValueError("empty class")


def verify_consistent(g: Graph, r: ThinRepresentation) -> bool:
    """Triple condition: r<s<t, v_r,v_s co-classed, v_r v_t in E => v_s v_t in E."""
    _check_representation(g, r)
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(r.order)}
    for cls in r.classes:
        members = sorted(cls, key=pos.get)
        for i, vr in enumerate(members):
            for vs in members[i + 1 :]:
                ps = pos[vs]
                for vt in adj[vr]:
                    if pos[vt] > ps and vt not in adj[vs]:
                        return False
    return True


def strongly_consistent_by_triples(g: Graph, r: ThinRepresentation) -> bool:
    """Both triple conditions, checked directly on ordered co-class pairs."""
    if not verify_consistent(g, r):
        return False
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(r.order)}
    for cls in r.classes:
        members = sorted(cls, key=pos.get)
        for i, vs in enumerate(members):
            for vt in members[i + 1 :]:
                ps = pos[vs]
                for vr in adj[vt]:
                    if pos[vr] < ps and vr not in adj[vs]:
                        return False
    return True


def strongly_consistent_by_consecutiveness(g: Graph, r: ThinRepresentation) -> bool:
    """Equivalent strong-consistency test: for every v and class j, the set
    N[v] intersected with (V^j + v) must be consecutive in V^j + v."""
    _check_representation(g, r)
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(r.order)}
    for v in range(g.n):
        closed = adj[v] | {v}
        for cls in r.classes:
            pool = sorted(cls | {v}, key=pos.get)
            flags = [x in closed for x in pool]
            if True in flags:
                first = flags.index(True)
                last = len(flags) - 1 - flags[::-1].index(True)
                if not all(flags[first : last + 1]):
                    return False
    return True


def verify_strongly_consistent(g: Graph, r: ThinRepresentation) -> bool:
    """Both triple conditions; cross-checked against the consecutiveness
    characterization, which must agree."""
    by_triples = strongly_consistent_by_triples(g, r)
    by_consecutive = strongly_consistent_by_consecutiveness(g, r)
    assert by_triples == by_consecutive, "strong-consistency tests disagree"
    return by_triples


# ---------------------------------------------------------------------------
# construction from a tree support


def thin_from_tree_support(g: BipartiteGraph, w: SupportWitness) -> ThinRepresentation:
    """Consistent representation with at most 2 + t(delta-2) classes.

    Class 1 is all of B.  The support tree is rooted at its least leaf; the
    root opens class 2, the least child of every node inherits its parent's
    class and every further child opens a fresh class.  A is ordered by
    postorder of the rooted tree and each b is inserted right after its
    greatest A-neighbour (isolated b's at the end).
    """
    if not verify_support(g, w):
        raise ValueError("invalid tree witness")
    if g.a_size == 0:
        raise ValueError("need at least one A vertex")
    adj = w.host_adjacency()
    deg = w.degrees()
    leaves = sorted(v for v in w.vertices if deg[v] <= 1)
    root = leaves[0]

    children: dict[int, list[int]] = {}
    stack = [root]
    seen = {root}
    while stack:
        v = stack.pop()
        kids = sorted(x for x in adj[v] if x not in seen)
        children[v] = kids
        for x in kids:
            seen.add(x)
            stack.append(x)

    # class ids: 0 = B, 1 = root's class, further classes appended
    cls_of = {root: 1}
    next_cls = 2
    visit = [root]
    while visit:
        v = visit.pop()
        for i, x in enumerate(children[v]):
            if i == 0:
                cls_of[x] = cls_of[v]
            else:
                cls_of[x] = next_cls
                next_cls += 1
            visit.append(x)

    postorder = []
    stack = [(root, False)]
    while stack:
        v, expanded = stack.pop()
        if expanded:
            postorder.append(v)
            continue
        stack.append((v, True))
        for x in reversed(children[v]):
            stack.append((x, False))

    pos = {a: i for i, a in enumerate(postorder)}
    after: dict[int, list[int]] = {i: [] for i in range(len(postorder))}
    tail = []
    for j, nb in enumerate(g.adj):
        b = g.a_size + j
        if nb:
            after[max(pos[a] for a in nb)].append(b)
        else:
            tail.append(b)
    order = []
    for i, a in enumerate(postorder):
        order.append(a)
        order.extend(sorted(after[i]))
    order.extend(sorted(tail))

    class_sets: list[set[int]] = [set() for _ in range(next_cls)]
    class_sets[0] = {g.a_size + j for j in range(g.b_size)}
    for a, c in cls_of.items():
        class_sets[c].add(a)
    classes = tuple(frozenset(c) for c in class_sets if c)
    return ThinRepresentation(tuple(order), classes, False)


def linear_bd_from_thin(g: Graph | BipartiteGraph, r: ThinRepresentation) -> BranchDecomposition:
    """Caterpillar over the representation's order; mim width <= class count."""
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    if not verify_consistent(gg, r):
        raise ValueError("representation is not consistent")
    return caterpillar_from_ordering(r.order)


# ---------------------------------------------------------------------------
# exact oracles


def _feasible(n: int, adj: list[int], k: int, proper: bool) -> bool:
    """Is there a (strongly) consistent ordering + partition into <= k classes?

    Left-to-right DP over placement states.  Per class the state keeps the
    unplaced neighbours of its placed members (consistency forces them onto
    every later member) and, for proper thinness, the placed non-neighbours
    that any later member must avoid.  Classes whose state is empty behave
    exactly like unopened ones, so only nontrivial class states are kept,
    together with the least total number of classes used so far.
    """
    full = (1 << n) - 1
    closed = [adj[v] | (1 << v) for v in range(n)]
    states: dict[tuple[int, tuple], int] = {(0, ()): 0}
    for _ in range(n):
        nxt: dict[tuple[int, tuple], int] = {}

        def push(placed, fronts, count):
            key = (placed, fronts)
            old = nxt.get(key)
            if old is None or count < old:
                nxt[key] = count

        for (placed, fronts), count in states.items():
            remaining = full & ~placed
            for v in _bit_list(remaining):
                bit = 1 << v
                nplaced = placed | bit
                rest = full & ~nplaced
                nb = adj[v]
                opened = len(fronts)
                fresh_ok = count > opened or count < k
                fresh_count = count if count > opened else count + 1
                if proper:
                    live = 0
                    for u in _bit_list(rest):
                        live |= adj[u]
                    # vertices in a bad-set only matter while they still
                    # have unplaced neighbours
                    trimmed = [
                        (u_mask & rest, bad_mask & live) for u_mask, bad_mask in fronts
                    ]
                    bad_new = placed & ~nb & live
                    for i, (u_mask, bad_mask) in enumerate(fronts):
                        if u_mask & ~closed[v] or bad_mask & nb:
                            continue
                        ent = ((u_mask | nb) & rest, (bad_mask & live) | bad_new)
                        others = [
                            trimmed[j]
                            for j in range(opened)
                            if j != i and trimmed[j] != (0, 0)
                        ]
                        if ent != (0, 0):
                            others.append(ent)
                        push(nplaced, tuple(sorted(others)), count)
                    if fresh_ok:
                        ent = (nb & rest, bad_new)
                        others = [x for x in trimmed if x != (0, 0)]
                        if ent != (0, 0):
                            others.append(ent)
                        push(nplaced, tuple(sorted(others)), fresh_count)
                else:
                    trimmed = [u_mask & rest for u_mask in fronts]
                    for i, u_mask in enumerate(fronts):
                        if u_mask & ~closed[v]:
                            continue
                        ent = (u_mask | nb) & rest
                        others = [
                            trimmed[j] for j in range(opened) if j != i and trimmed[j]
                        ]
                        if ent:
                            others.append(ent)
                        push(nplaced, tuple(sorted(others)), count)
                    if fresh_ok:
                        ent = nb & rest
                        others = [x for x in trimmed if x]
                        if ent:
                            others.append(ent)
                        push(nplaced, tuple(sorted(others)), fresh_count)
        states = nxt
        if not states:
            return False
    return bool(states)


def _bit_list(mask: int):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def thin_oracle(g: Graph | BipartiteGraph, guard: int = 13) -> int:
    """Exact thinness by iterative deepening on the class count."""
    return _thinness_value(g, guard, proper=False)


def pthin_oracle(g: Graph | BipartiteGraph, guard: int = 13) -> int:
    """Exact proper thinness by iterative deepening on the class count."""
    return _thinness_value(g, guard, proper=True)


def _thinness_value(g, guard: int, proper: bool) -> int:
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    n = gg.n
    if n == 0:
        raise ValueError("empty graph")
    if n > guard:
        raise SizeGuardError(f"{n} vertices exceeds oracle guard {guard}")
    adj = gg.adjacency_masks()
    for k in range(1, n + 1):
        if _feasible(n, adj, k, proper):
            return k
    raise AssertionError("singleton classes are always feasible")


# ---------------------------------------------------------------------------
# path decompositions


def verify_pathdecomp(g: Graph, p: PathDecomposition) -> tuple[bool, int]:
    """Check the three axioms; returns (valid, width)."""
    width = p.width()
    covered = set()
    for bag in p.bags:
        for v in bag:
            if not (0 <= v < g.n):
                return False, width
        covered |= set(bag)
    if covered != set(range(g.n)):
        return False, width
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in p.bags):
            return False, width
    for v in range(g.n):
        hits = [i for i, bag in enumerate(p.bags) if v in bag]
        if hits != list(range(hits[0], hits[-1] + 1)):
            return False, width
    return True, width


def pathdecomp_to_pthin(g: Graph, p: PathDecomposition) -> ThinRepresentation:
    """Strongly consistent representation with at most 2^q (q+1) classes from
    a path decomposition of width q.

    Stage 1 orders vertices by first bag (ties by index) and colours them
    greedily so co-coloured vertices never share a bag; bag size bounds the
    colours by q+1, and each vertex then has at most one smaller neighbour
    of each colour.  Stage 2 splits every colour class by the set of other
    colours contributing a smaller neighbour, which makes the refined
    partition strongly consistent.
    """
    ok, q = verify_pathdecomp(g, p)
    if not ok:
        raise ValueError("invalid path decomposition")
    if not g.edges:
        return ThinRepresentation(
            tuple(range(g.n)), (frozenset(range(g.n)),), True
        )
    first = {}
    last = {}
    for i, bag in enumerate(p.bags):
        for v in bag:
            first.setdefault(v, i)
            last[v] = i
    order = sorted(range(g.n), key=lambda v: (first[v], v))
    pos = {v: i for i, v in enumerate(order)}

    colour = {}
    for v in order:
        used = {
            colour[u]
            for u in colour
            if not (last[u] < first[v] or last[v] < first[u])
        }
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    n_colours = max(colour.values()) + 1 if colour else 1
    assert n_colours <= q + 1

    adj = g.adjacency()
    smaller_by_colour: dict[int, dict[int, int]] = {}
    for v in range(g.n):
        per = {}
        for u in adj[v]:
            if pos[u] < pos[v]:
                per[colour[u]] = per.get(colour[u], 0) + 1
        assert all(cnt <= 1 for cnt in per.values()), "stage-1 property violated"
        smaller_by_colour[v] = per

    refined: dict[tuple[int, frozenset[int]], set[int]] = {}
    for v in range(g.n):
        key = (colour[v], frozenset(smaller_by_colour[v]) - {colour[v]})
        refined.setdefault(key, set()).add(v)
    classes = tuple(
        frozenset(refined[key]) for key in sorted(refined, key=lambda kv: (kv[0], sorted(kv[1])))
    )
    return ThinRepresentation(tuple(order), classes, True)


def parse_pathdecomp(text: str, g) -> PathDecomposition:
    """Lines ``bag v1 v2 ...`` in sequence order, vertex tokens as in files."""
    from .graphs import BipartiteGraph as _BG

    def vertex_of(tok: str) -> int:
        if isinstance(g, _BG):
            idx = int(tok[1:]) - 1
            return idx if tok[0] == "a" else g.a_size + idx
        return int(tok) - 1

    bags = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "bag":
            raise ValueError(f"bad path decomposition line {line!r}")
        bags.append(frozenset(vertex_of(tok) for tok in parts[1:]))
    return PathDecomposition(tuple(bags))


def serialize_pathdecomp(p: PathDecomposition, g) -> str:
    from .graphs import vertex_token

    lines = []
    for bag in p.bags:
        toks = " ".join(vertex_token(g, v) for v in sorted(bag))
        lines.append(f"bag {toks}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON wire form


def representation_to_json(r: ThinRepresentation, g) -> dict:
    from .graphs import vertex_token

    return {
        "order": [vertex_token(g, v) for v in r.order],
        "classes": [sorted(vertex_token(g, v) for v in c) for c in r.classes],
        "strong": r.strong,
    }


def representation_from_json(data: dict, g) -> ThinRepresentation:
    from .graphs import BipartiteGraph as _BG

    def vertex_of(tok: str) -> int:
        if isinstance(g, _BG):
            idx = int(tok[1:]) - 1
            return idx if tok[0] == "a" else g.a_size + idx
        return int(tok) - 1

    order = tuple(vertex_of(t) for t in data["order"])
    classes = tuple(frozenset(vertex_of(t) for t in c) for c in data["classes"])
    return ThinRepresentation(order, classes, bool(data.get("strong", False)))
