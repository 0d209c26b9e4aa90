import random

import pytest

from gcwidth import (
    BipartiteGraph,
    Graph,
    SizeGuardError,
    SupportWitness,
    caterpillar_from_ordering,
    decompose_circular,
    decompose_convex,
    decompose_spider,
    decompose_tdelta,
    decomposition_from_json,
    decomposition_to_json,
    glue_multijoin,
    max_induced_matching_cut,
    max_induced_matching_sim,
    mimw_oracle,
    multijoin_bound,
    simw_oracle,
    spider_bound,
    tdelta_bound,
    validate_decomposition,
    width_of,
)
from gcwidth.graphs import complete_bipartite, cycle_graph, path_graph
from gcwidth.families import gen_crown, gen_random_hconvex

from oracles import brute_max_induced_matching


def random_graph(rng, n, p=0.4):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.make(n, edges)


class TestCaterpillar:
    def test_length_two_is_single_edge(self):
        d = caterpillar_from_ordering([5, 7])
        assert d.tree.n == 2 and d.tree.edges == frozenset({(0, 1)})
        assert d.leaf_map == {0: 5, 1: 7}
        assert d.linear

    def test_length_four_has_spine(self):
        d = caterpillar_from_ordering([0, 1, 2, 3])
        assert d.tree.n == 8
        assert d.spine == (0, 1, 2, 3)
        deg = d.tree.degree_sequence()
        assert sorted(deg) == [1, 1, 1, 1, 2, 2, 3, 3]

    def test_leaf_count_is_length(self):
        for l in (1, 2, 3, 6):
            d = caterpillar_from_ordering(range(l))
            assert len(d.leaf_map) == l

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            caterpillar_from_ordering([0, 0, 1])


class TestCutSolvers:
    def test_p4_single_cross_edge(self):
        g = path_graph(4)
        size, matching = max_induced_matching_cut(g, {0, 1})
        assert size == 1 and matching == ((1, 2),)

    def test_c6_half(self):
        # frozen from the exhaustive oracle: the pair {(2,3),(0,5)} has no
        # connecting edge in C6, so it is induced in G as well
        g = cycle_graph(6)
        size, _ = max_induced_matching_cut(g, {0, 1, 2})
        assert size == 2
        sim_size, _ = max_induced_matching_sim(g, {0, 1, 2})
        assert sim_size == 2

    def test_complete_cut(self):
        g = complete_bipartite(3, 3).to_graph()
        size, _ = max_induced_matching_cut(g, {0, 1, 2})
        assert size == 1

    def test_triangle_sim(self):
        g = cycle_graph(3)
        size, _ = max_induced_matching_sim(g, {0})
        assert size == 1

    def test_bipartite_cut_along_sides_equal(self):
        rng = random.Random(17)
        for _ in range(10):
            g = gen_random_hconvex("path", 5, 5, rng.randint(0, 99))[0].to_graph()
            side = set(range(5))  # the A side: both sides independent
            assert max_induced_matching_cut(g, side)[0] == max_induced_matching_sim(g, side)[0]

    def test_agrees_with_exhaustive(self):
        rng = random.Random(23)
        checked = 0
        while checked < 60:
            n = rng.randint(2, 9)
            g = random_graph(rng, n)
            side = {v for v in range(n) if rng.random() < 0.5}
            cross = sum(1 for u, v in g.edges if (u in side) != (v in side))
            if cross > 14:
                continue
            checked += 1
            for mode, fn in (
                ("mim", max_induced_matching_cut),
                ("sim", max_induced_matching_sim),
            ):
                got, matching = fn(g, side)
                assert got == brute_max_induced_matching(n, g.edges, side, mode)
                assert len(matching) == got

    def test_witness_is_induced(self):
        g = cycle_graph(8)
        size, matching = max_induced_matching_cut(g, {0, 1, 2, 3})
        eset = set(g.edges)
        for i in range(len(matching)):
            for j in range(i + 1, len(matching)):
                for x in matching[i]:
                    for y in matching[j]:
                        pair = (min(x, y), max(x, y))
                        if (x in {0, 1, 2, 3}) != (y in {0, 1, 2, 3}):
                            assert pair not in eset


class TestWidthOf:
    def test_edgeless(self):
        g = Graph(4, frozenset())
        d = caterpillar_from_ordering(range(4))
        assert width_of(g, d)[0] == 0

    def test_complete_bipartite_caterpillar(self):
        g = complete_bipartite(4, 4)
        d = caterpillar_from_ordering(range(8))
        assert width_of(g, d)[0] == 1

    def test_single_leaf(self):
        g = Graph(1, frozenset())
        d = caterpillar_from_ordering([0])
        assert width_of(g, d) == (0, None)

    def test_worst_cut_reported(self):
        g = cycle_graph(6)
        d = caterpillar_from_ordering(range(6))
        value, report = width_of(g, d)
        assert value == report.value
        side = set(report.side)
        got, _ = max_induced_matching_cut(g, side)
        assert got == value

    def test_leafmap_mismatch(self):
        g = path_graph(3)
        d = caterpillar_from_ordering(range(4))
        with pytest.raises(ValueError):
            width_of(g, d)


class TestOracles:
    def test_trees_have_mimw_1(self):
        rng = random.Random(31)
        for _ in range(5):
            n = rng.randint(2, 7)
            edges = [(rng.randrange(i), i) for i in range(1, n)]
            g = Graph.make(n, edges)
            assert mimw_oracle(g)[0] == 1

    def test_k33(self):
        assert mimw_oracle(complete_bipartite(3, 3))[0] == 1

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            mimw_oracle(Graph(9, frozenset()))
        assert mimw_oracle(Graph(9, frozenset()), guard=9)[0] == 0

    def test_oracle_witness_achieves_value(self):
        rng = random.Random(37)
        for _ in range(6):
            g = random_graph(rng, rng.randint(2, 6))
            value, witness = mimw_oracle(g)
            validate_decomposition(g, witness)
            assert width_of(g, witness, "mim")[0] == value

    def test_sim_le_mim(self):
        rng = random.Random(41)
        for _ in range(8):
            g = random_graph(rng, rng.randint(2, 6))
            assert simw_oracle(g)[0] <= mimw_oracle(g)[0]

    def test_vertex_addition_monotone(self):
        rng = random.Random(43)
        for _ in range(6):
            n = rng.randint(2, 5)
            g = random_graph(rng, n)
            extra = [(v, n) for v in range(n) if rng.random() < 0.5]
            g2 = Graph.make(n + 1, list(g.edges) + extra)
            assert mimw_oracle(g2)[0] >= mimw_oracle(g)[0]
            assert simw_oracle(g2)[0] >= simw_oracle(g)[0]


class TestBounds:
    def test_spider_bound_values(self):
        assert spider_bound(3) == 5
        assert spider_bound(4) == 8
        assert spider_bound(5) == 12

    def test_tdelta_bound_values(self):
        assert tdelta_bound(1, 3) == 8
        assert tdelta_bound(2, 3) == 17
        assert tdelta_bound(2, 4) == 24

    def test_multijoin_bound(self):
        assert multijoin_bound(2, 3, [1, 1, 1]) == max(2 * 2, 1 + 2 * 2)


class TestDecomposeConvex:
    def test_empty_b(self):
        g = BipartiteGraph(3, 0, ())
        w = SupportWitness("path", (0, 1, 2), frozenset({(0, 1), (1, 2)}))
        d = decompose_convex(g, w)
        assert width_of(g, d)[0] == 0

    def test_insertion_order(self):
        g = BipartiteGraph(3, 2, (frozenset({0, 1}), frozenset({1, 2})))
        w = SupportWitness("path", (0, 1, 2), frozenset({(0, 1), (1, 2)}))
        d = decompose_convex(g, w)
        order = [d.leaf_map[leaf] for leaf in sorted(d.leaf_map)]
        assert order == [0, 1, 3, 2, 4]  # a1 a2 b1 a3 b2
        assert width_of(g, d)[0] == 1

    def test_random_instances_width_le_1(self):
        for seed in range(15):
            g, w = gen_random_hconvex("path", 10, 12, seed)
            d = decompose_convex(g, w)
            assert width_of(g, d)[0] <= 1

    def test_invalid_witness_rejected(self):
        g = BipartiteGraph(3, 1, (frozenset({0, 2}),))
        w = SupportWitness("path", (0, 1, 2), frozenset({(0, 1), (1, 2)}))
        with pytest.raises(ValueError):
            decompose_convex(g, w)

    def test_kind_mismatch_rejected(self):
        g, w = gen_crown(4)  # cycle witness
        with pytest.raises(ValueError):
            decompose_convex(g, w)
        path_w = SupportWitness(
            "path", (0, 1, 2), frozenset({(0, 1), (1, 2)})
        )
        g2 = BipartiteGraph(3, 0, ())
        with pytest.raises(ValueError):
            decompose_circular(g2, path_w)


class TestDecomposeCircular:
    def test_empty_b(self):
        g = BipartiteGraph(4, 0, ())
        w = SupportWitness(
            "cycle", (0, 1, 2, 3), frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})
        )
        d = decompose_circular(g, w)
        assert d.linear and width_of(g, d)[0] == 0

    def test_crown6(self):
        g, w = gen_crown(6)
        d = decompose_circular(g, w)
        assert width_of(g, d)[0] <= 2

    def test_random_instances_width_le_2(self):
        for seed in range(15):
            g, w = gen_random_hconvex("cycle", 9, 11, seed)
            d = decompose_circular(g, w)
            assert width_of(g, d)[0] <= 2


class TestGlueMultijoin:
    def test_two_singletons(self):
        g = Graph.make(2, [(0, 1)])
        d0 = caterpillar_from_ordering([0])
        d1 = caterpillar_from_ordering([1])
        d = glue_multijoin(g, [[0], [1]], [d0, d1])
        validate_decomposition(g, d)
        assert width_of(g, d)[0] == 1

    def test_no_cross_edges(self):
        # with no edges between parts, gluing preserves the part widths
        g = Graph.make(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        d0 = caterpillar_from_ordering([0, 1, 2])
        d1 = caterpillar_from_ordering([3, 4, 5])
        d = glue_multijoin(g, [[0, 1, 2], [3, 4, 5]], [d0, d1])
        part_width = width_of(path_graph(3), caterpillar_from_ordering(range(3)))[0]
        assert width_of(g, d)[0] == part_width

    def test_p1_returns_part(self):
        g = path_graph(3)
        d0 = caterpillar_from_ordering([0, 1, 2])
        assert glue_multijoin(g, [[0, 1, 2]], [d0]) is d0

    def test_bad_partition(self):
        g = path_graph(3)
        d0 = caterpillar_from_ordering([0, 1])
        with pytest.raises(ValueError):
            glue_multijoin(g, [[0, 1], [1, 2]], [d0, d0])


def spider_instance(delta, legs=2):
    # one branching vertex 0 with `delta` legs of `legs` path vertices
    edges = set()
    vid = 1
    leg_ends = []
    for _ in range(delta):
        prev = 0
        for _ in range(legs):
            edges.add((min(prev, vid), max(prev, vid)))
            prev = vid
            vid += 1
        leg_ends.append(prev)
    a = vid
    host = SupportWitness("tree", tuple(range(a)), frozenset(edges))
    rng = random.Random(delta * 100 + legs)
    adj = host.host_adjacency()
    nbrs = []
    for _ in range(2 * a):
        cur = {rng.randrange(a)}
        for _ in range(rng.randint(0, 3)):
            frontier = sorted(set().union(*(adj[v] for v in cur)) - cur)
            if not frontier:
                break
            cur.add(rng.choice(frontier))
        nbrs.append(frozenset(cur))
    g = BipartiteGraph(a, len(nbrs), tuple(nbrs))
    return g, host


class TestDecomposeSpider:
    def test_star_neighbourhoods(self):
        # N(b_i) = {hub, leaf_i} on a 3-leg spider
        g = BipartiteGraph(4, 3, tuple(frozenset({0, i}) for i in range(1, 4)))
        host = SupportWitness(
            "tree", (0, 1, 2, 3), frozenset({(0, 1), (0, 2), (0, 3)})
        )
        d = decompose_spider(g, host)
        assert width_of(g, d)[0] <= spider_bound(3)

    def test_delta4(self):
        g, host = spider_instance(4)
        d = decompose_spider(g, host)
        assert width_of(g, d)[0] <= spider_bound(4)

    def test_path_support_delegates(self):
        g = BipartiteGraph(3, 2, (frozenset({0, 1}), frozenset({1, 2})))
        w = SupportWitness("tree", (0, 1, 2), frozenset({(0, 1), (1, 2)}))
        d = decompose_spider(g, w)
        assert width_of(g, d)[0] <= 1

    def test_two_branchings_rejected(self):
        g, host = gen_random_hconvex("tree", 10, 5, 3, t=2, delta=3)
        if len(host.branching) == 2:
            with pytest.raises(ValueError):
                decompose_spider(g, host)


class TestDecomposeTdelta:
    def test_t1_delegates_within_bound(self):
        g, host = spider_instance(3)
        d = decompose_tdelta(g, host)
        assert width_of(g, d)[0] <= tdelta_bound(1, 3)

    def test_t2_instances(self):
        for seed in range(6):
            g, w = gen_random_hconvex("tree", 10, 10, seed, t=2, delta=3)
            trace = []
            d = decompose_tdelta(g, w, trace)
            assert width_of(g, d)[0] <= tdelta_bound(2, 3)
            for level in trace:
                assert level["cut"] <= level["bound"]

    def test_split_cut_bound_respected(self):
        g, w = gen_random_hconvex("tree", 12, 12, 7, t=2, delta=4)
        trace = []
        decompose_tdelta(g, w, trace)
        assert trace, "expected at least one split"
        for level in trace:
            assert level["cut"] <= level["delta"] * (level["t"] - 1)


class TestConstructionsNeverBeatOracle:
    def test_oracle_lower_bounds_constructions(self):
        for seed in range(6):
            g, w = gen_random_hconvex("path", 4, 4, seed)
            d = decompose_convex(g, w)
            assert width_of(g, d)[0] >= mimw_oracle(g)[0]
            g, w = gen_random_hconvex("cycle", 4, 4, seed)
            d = decompose_circular(g, w)
            assert width_of(g, d)[0] >= mimw_oracle(g)[0]


class TestDecompositionJson:
    def test_roundtrip_caterpillar(self):
        g, w = gen_random_hconvex("path", 5, 4, 0)
        d = decompose_convex(g, w)
        data = decomposition_to_json(d, g)
        back = decomposition_from_json(data, g)
        assert decomposition_to_json(back, g) == data
        assert width_of(g, back)[0] == width_of(g, d)[0]

    def test_roundtrip_glued(self):
        g, host = spider_instance(3)
        d = decompose_spider(g, host)
        data = decomposition_to_json(d, g)
        back = decomposition_from_json(data, g)
        assert width_of(g, back)[0] == width_of(g, d)[0]
        assert data["linear"] is False
