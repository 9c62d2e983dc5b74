import json
import random

import pytest
from corpus import NAMED_GRAPHS, graphs, random_systems
from oracles import brute_colorful_exists, brute_zigzag_exists

from kneserlab import families as fam
from kneserlab.budget import Budget
from kneserlab.defect import colorability_defect
from kneserlab.errors import (
    ImproperColoring,
    InvalidParameter,
    NoWitness,
    OverlappingColorSets,
)
from kneserlab.solve import (
    chromatic_number,
    enumerate_colorings,
    random_proper_coloring,
)
from kneserlab.types import Coloring, SetSystem
from kneserlab.witness import (
    BipartiteWitness,
    ZigzagWitness,
    classify_instance,
    contained_colors,
    find_colorful_bipartite,
    find_zigzag,
    parse_bipartition,
    spencer_su_partition,
    sweep_verify,
    unordered_bipartitions,
)

KG52 = fam.build_kneser(5, 2)
K72 = fam.build_rational_complete(7, 2)
K72_CANON = fam.rational_canonical_coloring(7, 2)


def test_colorful_examples():
    for c in enumerate_colorings(KG52, 3):
        w = find_colorful_bipartite(KG52, c, {1}, {2, 3})
        assert w is not None and w.check(KG52, c)
        t = find_colorful_bipartite(KG52, c, {1, 2, 3}, set())
        assert t is not None and t.side_m == () and sorted(c.colors[v] for v in t.side_l) == [1, 2, 3]
    assert find_colorful_bipartite(K72, K72_CANON, {2, 4}, {1, 3}) is None
    assert not brute_colorful_exists(K72, K72_CANON.colors, (2, 4), (1, 3))


def test_colorful_rejects_bad_input():
    c = next(iter(enumerate_colorings(KG52, 3)))
    with pytest.raises(OverlappingColorSets):
        find_colorful_bipartite(KG52, c, {1, 2}, {2, 3})
    with pytest.raises(InvalidParameter):
        find_colorful_bipartite(KG52, c, {1}, {4})
    with pytest.raises(ImproperColoring):
        find_colorful_bipartite(KG52, Coloring(3, (1,) * 10), {1}, {2})


def evens_odds(t):
    return [x for x in range(1, t + 1) if x % 2 == 0], [x for x in range(1, t + 1) if x % 2]


@pytest.mark.parametrize("p,q", [(7, 2), (11, 3), (15, 4), (9, 2)])
def test_even_odd_split_follows_ceiling_parity(p, q):
    g, c = fam.build_rational_complete(p, q), fam.rational_canonical_coloring(p, q)
    evens, odds = evens_odds(c.palette)
    found = find_colorful_bipartite(g, c, evens, odds)
    expected_missing = c.palette % 2 == 0
    assert (found is None) == expected_missing
    assert brute_colorful_exists(g, c.colors, evens, odds) != expected_missing


def test_odd_ceiling_rational_graph_has_even_odd_witness():
    # ceil(9/4) = 3 is odd, so this graph is not a counterexample
    g, c = fam.build_rational_complete(9, 4), fam.rational_canonical_coloring(9, 4)
    evens, odds = evens_odds(c.palette)
    w = find_colorful_bipartite(g, c, evens, odds)
    assert w is not None and w.check(g, c)


def test_negative_control_k_7_2_zigzag():
    assert find_zigzag(K72, K72_CANON, 4) is None
    assert not brute_zigzag_exists(K72, K72_CANON.colors, 4, 4)
    w = find_zigzag(K72, K72_CANON, 3)
    assert w is not None and w.check(K72, K72_CANON)


@pytest.mark.parametrize("name", sorted(graphs(8)))
def test_colorful_matches_brute_force(name):
    g = NAMED_GRAPHS[name]
    t = chromatic_number(g)
    for c in list(enumerate_colorings(g, t))[:15]:
        for a, b in unordered_bipartitions(t):
            w = find_colorful_bipartite(g, c, a, b)
            assert (w is not None) == brute_colorful_exists(g, c.colors, a, b)
            if w is not None:
                assert w.check(g, c)


@pytest.mark.parametrize("name", sorted(graphs(8)))
def test_zigzag_matches_brute_force(name):
    g = NAMED_GRAPHS[name]
    t = chromatic_number(g)
    for c in list(enumerate_colorings(g, t + 1))[:10]:
        for r in range(1, t + 2):
            w = find_zigzag(g, c, r)
            assert (w is not None) == brute_zigzag_exists(g, c.colors, r, c.palette)
            if w is not None:
                assert w.check(g, c)
                assert len(w.side_l) == (r + 1) // 2 and len(w.side_m) == r // 2


def test_zigzag_examples():
    c = next(iter(enumerate_colorings(KG52, 3)))
    single = find_zigzag(KG52, c, 1)
    assert single == ZigzagWitness((1,), (0,))
    for c in enumerate_colorings(KG52, 3):
        w = find_zigzag(KG52, c, 3)
        assert w is not None and w.colors == (1, 2, 3) and w.check(KG52, c)
    kg62 = fam.build_kneser(6, 2)
    for c in enumerate_colorings(kg62, 4):
        w = find_zigzag(kg62, c, 4)
        assert w is not None and w.check(kg62, c)
    with pytest.raises(InvalidParameter):
        find_zigzag(KG52, c, 0)


def test_witness_check_catches_tampering():
    c = next(iter(enumerate_colorings(KG52, 3)))
    w = find_colorful_bipartite(KG52, c, {1}, {2, 3})
    bad = BipartiteWitness(w.side_l, (w.side_m[0], w.side_m[0]), w.colors_l, w.colors_m)
    assert not bad.check(KG52, c)
    z = find_zigzag(KG52, c, 3)
    assert not ZigzagWitness(z.colors[::-1], z.vertices[::-1]).check(KG52, c)


def test_bipartitions():
    assert unordered_bipartitions(2) == [((1,), (2,)), ((1, 2), ())]
    assert len(unordered_bipartitions(4)) == 8
    assert all(1 in a for a, _ in unordered_bipartitions(5))
    assert parse_bipartition("2,4/1,3") == ((2, 4), (1, 3))
    assert parse_bipartition("1,2,3/") == ((1, 2, 3), ())
    for text in ("1,2", "1/2/3", "a/b"):
        with pytest.raises(InvalidParameter):
            parse_bipartition(text)


def test_spencer_su_examples():
    system = fam.k_subsets(5, 2)
    for c in enumerate_colorings(KG52, 3):
        for b1, b2 in [((1,), (2, 3)), ((1, 2), (3,)), ((1, 3), (2,))]:
            part = spencer_su_partition(system, c, b1, b2)
            assert set(part.e1) | set(part.e2) == {1, 2, 3, 4, 5}
            assert not set(part.e1) & set(part.e2)
            assert part.colors1 == b1 and part.colors2 == b2
        trivial = spencer_su_partition(system, c, (1, 2, 3), ())
        assert trivial.e2 == () and trivial.e1 == (1, 2, 3, 4, 5)


def test_spencer_su_schrijver():
    system = fam.schrijver_system(6, 2)
    g = fam.build_schrijver(6, 2)
    for c in enumerate_colorings(g, 4):
        part = spencer_su_partition(system, c, (1, 2), (3, 4), graph=g)
        assert set(part.e1) | set(part.e2) == set(range(1, 7))
        e1 = sum(1 << (x - 1) for x in part.e1)
        assert contained_colors(system, c, e1) == (1, 2)


def test_spencer_su_reports_missing_witness():
    system = fam.k_subsets(4, 1)
    c = Coloring(4, (1, 2, 3, 4))
    part = spencer_su_partition(system, c, (1, 3), (2, 4))
    assert part.e1 == (1, 3) and part.e2 == (2, 4)
    with pytest.raises(InvalidParameter):
        spencer_su_partition(system, c, (1,), (2,))
    # {1,3} meets both other members, so colors 1 and 3 never share a neighbour
    lonely = SetSystem.from_lists(4, [[1, 2], [3, 4], [1, 3]])
    with pytest.raises(NoWitness):
        spencer_su_partition(lonely, Coloring(3, (1, 2, 3)), (1, 3), (2,))


def test_sweep_petersen_passes():
    report = sweep_verify(KG52, 3, "colorful")
    assert report.outcome == "pass" and report.colorings_checked == 20
    assert report.counterexample is None
    assert report.instance["classification"] == "known-tight"
    assert len(report.instance["bipartitions"]) == 4


def test_sweep_negative_control_fails_on_canonical_coloring():
    report = sweep_verify(K72, 4, "colorful", bipartitions=[((2, 4), (1, 3))])
    assert report.outcome == "fail"
    ce = report.counterexample
    assert tuple(ce["colors"]) == K72_CANON.colors
    assert ce["coloring_id"] == 0
    assert report.instance["classification"] == "exploratory"


def test_sweep_trivial_bipartition_passes():
    for name in ("C5", "K7/2", "W(2,3)", "random5"):
        g = NAMED_GRAPHS[name]
        t = chromatic_number(g)
        assert sweep_verify(g, t, "colorful", bipartitions=[(tuple(range(1, t + 1)), ())]).outcome == "pass"


def test_sweep_zigzag_and_spencer_su():
    assert sweep_verify(KG52, 3, "zigzag", r=3).outcome == "pass"
    report = sweep_verify(KG52, 3, "spencer-su", system=fam.k_subsets(5, 2))
    assert report.outcome == "pass" and report.colorings_checked == 20
    with pytest.raises(InvalidParameter):
        sweep_verify(KG52, 3, "zigzag")
    with pytest.raises(InvalidParameter):
        sweep_verify(KG52, 3, "nope")


def test_sweep_over_supplied_colorings():
    rng = random.Random(1)
    colorings = [random_proper_coloring(KG52, 4, rng) for _ in range(10)]
    report = sweep_verify(KG52, 4, "zigzag", r=3, colorings=colorings)
    assert report.outcome == "pass" and report.colorings_checked == 10


def test_sweep_budget_outcome():
    report = sweep_verify(fam.build_kneser(6, 2), 4, "colorful", budget=Budget(max_nodes=200), chi=4)
    assert report.outcome == "budget"


def test_report_schema_is_json_ready():
    d = sweep_verify(KG52, 3, "colorful").to_dict()
    keys = {"instance", "property", "t", "colorings_checked", "outcome", "witnesses_sampled",
            "counterexample", "elapsed_ms"}
    assert set(d) == keys
    assert json.loads(json.dumps(d)) == d
    for w in d["witnesses_sampled"]:
        assert "coloring_id" in w


def test_parallel_sweep_matches_serial():
    g = fam.build_kneser(6, 2)
    serial = sweep_verify(g, 4, "colorful").to_dict()
    parallel = sweep_verify(g, 4, "colorful", jobs=2).to_dict()
    serial.pop("elapsed_ms"), parallel.pop("elapsed_ms")
    assert serial == parallel
    a = sweep_verify(K72, 4, "colorful", bipartitions=[((2, 4), (1, 3))]).to_dict()
    b = sweep_verify(K72, 4, "colorful", bipartitions=[((2, 4), (1, 3))], jobs=2).to_dict()
    assert a["counterexample"] == b["counterexample"]


def test_classification():
    assert classify_instance(fam.build_kneser(6, 2).provenance, 4) == "known-tight"
    assert classify_instance(fam.build_kneser(6, 2).provenance, 5) == "exploratory"
    assert classify_instance(fam.build_rational_complete(5, 2).provenance, 3) == "known-tight"
    assert classify_instance(fam.build_u(3, 2).provenance, 2) == "known-tight"
    grotzsch = fam.build_mycielski(fam.build_cycle(5), 2)
    assert classify_instance(grotzsch.provenance, 4) == "known-tight"


def test_sweep_grotzsch():
    g = fam.build_mycielski(fam.build_cycle(5), 2)
    report = sweep_verify(g, 4, "colorful")
    assert report.outcome == "pass" and report.colorings_checked == 520


def test_zigzag_with_defect_order_on_general_kneser_graphs():
    checked = 0
    for system in random_systems(80, 4000):
        r = colorability_defect(system, 2).size
        if r == 0:
            continue
        g = fam.build_general_kneser(system)
        chi = chromatic_number(g)
        rng = random.Random(len(system.sets))
        colorings = list(enumerate_colorings(g, chi))[:20]
        colorings += [random_proper_coloring(g, chi + 1, rng) for _ in range(5)]
        for c in colorings:
            w = find_zigzag(g, c, r)
            assert w is not None and w.check(g, c)
            checked += 1
    assert checked > 100
