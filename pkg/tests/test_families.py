import math
from itertools import combinations

import networkx as nx
import pytest

from corpus import NAMED_GRAPHS
from kneserlab import families as fam
from kneserlab.errors import DimensionMismatch, EmptySetMember, InvalidParameter
from kneserlab.solve import is_proper
from kneserlab.types import Graph, SetSystem, SpherePointSet
from oracles import brute_chromatic_number, brute_k_colorable, edge_list


def to_nx(graph):
    g = nx.Graph()
    g.add_nodes_from(range(graph.vertex_count))
    g.add_edges_from(edge_list(graph))
    return g


def iso(a, b):
    return nx.is_isomorphic(to_nx(a), to_nx(b))


def test_kneser_5_2_is_petersen():
    g = fam.build_kneser(5, 2)
    assert (g.vertex_count, g.edge_count) == (10, 15)
    assert g.labels[:3] == ((1, 2), (1, 3), (1, 4))
    assert iso(g, Graph.from_edges(10, nx.petersen_graph().edges()))


def test_kneser_small_cases():
    assert fam.build_kneser(2, 1).edges() == [(0, 1)]
    g = fam.build_kneser(4, 2)
    assert g.vertex_count == 6
    assert all(g.degree(v) == 1 for v in range(6))
    for u, v in g.edges():
        assert set(g.labels[u]) | set(g.labels[v]) == {1, 2, 3, 4}


@pytest.mark.parametrize("n,k", [(3, 0), (3, 4), (0, 1)])
def test_kneser_invalid(n, k):
    with pytest.raises(InvalidParameter):
        fam.build_kneser(n, k)


def test_general_kneser_examples():
    assert fam.build_general_kneser(SetSystem.from_lists(2, [[1], [2]])).edges() == [(0, 1)]
    tri = fam.build_general_kneser(SetSystem.from_lists(3, [[1, 2], [2, 3], [1, 3]]))
    assert tri.vertex_count == 3 and tri.edge_count == 0


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (7, 2), (4, 1)])
def test_general_kneser_of_k_subsets_equals_kneser(n, k):
    a = fam.build_general_kneser(fam.k_subsets(n, k))
    b = fam.build_kneser(n, k)
    assert a == b
    assert a.labels == b.labels and a.adjacency == b.adjacency


def test_empty_member_rejected():
    with pytest.raises(EmptySetMember):
        SetSystem.from_lists(3, [[1], []])
    with pytest.raises(EmptySetMember):
        SetSystem(3, (1, 0))


def test_general_kneser_duplicates_keep_labels_distinct():
    g = fam.build_general_kneser(SetSystem.from_lists(3, [[1], [1], [2]]))
    assert len(set(g.labels)) == 3
    assert g.edges() == [(0, 2), (1, 2)]


def test_schrijver_examples():
    g = fam.build_schrijver(6, 2)
    assert g.vertex_count == math.comb(6, 2) - 6 == 9
    c5 = fam.build_schrijver(5, 2)
    assert c5.labels == ((1, 3), (1, 4), (2, 4), (2, 5), (3, 5))
    assert iso(c5, fam.build_cycle(5))
    k2 = fam.build_schrijver(4, 2)
    assert k2.labels == ((1, 3), (2, 4)) and k2.edges() == [(0, 1)]
    with pytest.raises(InvalidParameter):
        fam.build_schrijver(5, 3)


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 2), (7, 3), (8, 3)])
def test_schrijver_is_induced_subgraph_of_kneser(n, k):
    sg, kg = fam.build_schrijver(n, k), fam.build_kneser(n, k)
    index = {lab: i for i, lab in enumerate(kg.labels)}
    assert set(sg.labels) <= set(index)
    for a in range(sg.vertex_count):
        for b in range(sg.vertex_count):
            assert sg.has_edge(a, b) == kg.has_edge(index[sg.labels[a]], index[sg.labels[b]])


def test_mycielski_examples():
    k2 = fam.build_complete(2)
    m2 = fam.build_mycielski(k2, 2)
    assert m2.vertex_count == 5 and iso(m2, fam.build_cycle(5))
    m3 = fam.build_mycielski(k2, 3)
    assert m3.vertex_count == 7 and iso(m3, fam.build_cycle(7))
    g = fam.build_mycielski(fam.build_cycle(5), 2)
    assert g.vertex_count == 11 and g.edge_count == 20
    assert g.labels[-1] == "z" and g.labels[0] == (0, 0)
    with pytest.raises(InvalidParameter):
        fam.build_mycielski(k2, 0)


def test_mycielski_apex_on_top_level():
    g = fam.build_mycielski(fam.build_cycle(5), 3)
    z = g.vertex_count - 1
    assert g.neighbors(z) == list(range(10, 15))


def test_u_examples():
    k3 = fam.build_u(3, 3)
    assert k3.labels == ((1, (2, 3)), (2, (1, 3)), (3, (1, 2)))
    assert k3.edge_count == 3
    u32 = fam.build_u(3, 2)
    assert u32.vertex_count == 6
    for a, b in u32.edges():
        (i, (x,)), (j, (y,)) = u32.labels[a], u32.labels[b]
        assert (x, y) == (j, i)
    assert u32.edge_count == 3
    assert fam.build_u(5, 3).vertex_count == 30
    for m, r in [(3, 4), (3, 0)]:
        with pytest.raises(InvalidParameter):
            fam.build_u(m, r)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_u_m_m_is_complete(m):
    assert fam.build_u(m, m).adjacency == fam.build_complete(m).adjacency


def test_w_examples():
    assert fam.build_w(1, 3).edge_count == 3
    w22 = fam.build_w(2, 2)
    assert w22.labels == ((0, 1), (1, 0)) and w22.edges() == [(0, 1)]
    w23 = fam.build_w(2, 3)
    assert w23.vertex_count == 9
    with pytest.raises(InvalidParameter):
        fam.build_w(2, 1)


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_w_1_t_is_complete_by_zero_position(t):
    g = fam.build_w(1, t)
    zero = [lab.index(0) for lab in g.labels]
    assert sorted(zero) == list(range(t))
    kt = fam.build_complete(t)
    for a in range(t):
        for b in range(t):
            assert g.has_edge(a, b) == kt.has_edge(zero[a], zero[b])


def test_w_coordinate_coloring_is_proper():
    from kneserlab.types import Coloring

    for s, t in [(1, 3), (2, 3), (3, 3), (2, 4)]:
        g = fam.build_w(s, t)
        assert is_proper(g, Coloring(t, tuple(lab.index(0) + 1 for lab in g.labels)))


def test_rational_examples():
    k52 = fam.build_rational_complete(5, 2)
    assert iso(k52, fam.build_cycle(5))
    assert fam.build_rational_complete(6, 1) == Graph(tuple(range(6)), fam.build_complete(6).adjacency)
    k72 = fam.build_rational_complete(7, 2)
    assert (k72.vertex_count, k72.edge_count) == (7, 14)
    with pytest.raises(InvalidParameter):
        fam.build_rational_complete(5, 3)


def test_rational_canonical_coloring_examples():
    assert fam.rational_canonical_coloring(7, 2).colors == (1, 1, 2, 2, 3, 3, 4)
    assert fam.rational_canonical_coloring(7, 2).palette == 4
    assert fam.rational_canonical_coloring(5, 2).colors == (1, 1, 2, 2, 3)
    assert fam.rational_canonical_coloring(4, 2).colors == (1, 1, 2, 2)
    for p in range(2, 13):
        for q in range(1, p // 2 + 1):
            c = fam.rational_canonical_coloring(p, q)
            assert c.palette == math.ceil(p / q)
            assert is_proper(fam.build_rational_complete(p, q), c)


def test_rational_chromatic_numbers_brute_force():
    # upper bound from the block coloring, lower bound by exhausting all (ceil - 1)-colorings
    for p in range(4, 10):
        for q in range(2, 4):
            if p >= 2 * q:
                g = fam.build_rational_complete(p, q)
                ceil = math.ceil(p / q)
                block = [i // q for i in range(p)]
                assert all(block[u] != block[v] for u, v in edge_list(g)) and max(block) + 1 == ceil
                assert not brute_k_colorable(g, ceil - 1)


def test_borsuk_examples():
    five = fam.circle_points(5)
    c5 = fam.build_borsuk_sample(2, 1.9, five)
    assert c5.edges() == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
    assert brute_chromatic_number(c5) == 3
    anti = fam.build_borsuk_sample(2, 2.0, fam.circle_points(2))
    assert anti.edges() == [(0, 1)]
    assert fam.build_borsuk_sample(2, 1.95, five).edge_count == 0


def test_borsuk_errors_and_sampling():
    pts = fam.sphere_points(3, 20, seed=7)
    assert pts == fam.sphere_points(3, 20, seed=7)
    g = fam.build_borsuk_sample(3, 1.5, pts)
    assert g.provenance["seed"] == 7
    with pytest.raises(DimensionMismatch):
        fam.build_borsuk_sample(2, 1.5, pts)
    for alpha in (0.0, 2.5):
        with pytest.raises(InvalidParameter):
            fam.build_borsuk_sample(3, alpha, pts)
    with pytest.raises(InvalidParameter):
        SpherePointSet(2, ((1.0, 1.0),))


@pytest.mark.parametrize("name", sorted(NAMED_GRAPHS))
def test_symmetric_and_loop_free(name):
    g = NAMED_GRAPHS[name]
    for u in range(g.vertex_count):
        assert not g.has_edge(u, u)
        for v in range(g.vertex_count):
            assert g.has_edge(u, v) == g.has_edge(v, u)


def test_constructors_are_deterministic():
    builders = [
        lambda: fam.build_kneser(6, 2),
        lambda: fam.build_schrijver(7, 2),
        lambda: fam.build_mycielski(fam.build_cycle(5), 3),
        lambda: fam.build_u(4, 3),
        lambda: fam.build_w(2, 3),
        lambda: fam.build_rational_complete(9, 4),
        lambda: fam.build_borsuk_sample(3, 1.7, fam.sphere_points(3, 15, 3)),
    ]
    for build in builders:
        a, b = build(), build()
        assert a.labels == b.labels and a.adjacency == b.adjacency and a.provenance == b.provenance


def test_random_set_system_has_no_duplicates():
    for seed in range(50):
        s = fam.random_set_system(seed)
        assert len(set(s.sets)) == len(s.sets)
        assert 1 <= s.ground <= 8 and 1 <= len(s) <= 10


def test_schrijver_system_excludes_cyclic_neighbours():
    for s in fam.schrijver_system(7, 3).members():
        for a, b in combinations(s, 2):
            assert abs(a - b) not in (1, 6)
