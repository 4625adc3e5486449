"""Graph construction, strong regularity, spectrum, and the B/C split."""

from fractions import Fraction
from itertools import combinations

import pytest

from g24verify import graph
from g24verify.errors import ConstructionError, VerificationError


def petersen() -> graph.Graph:
    """Kneser graph on 2-subsets of a 5-set, disjointness adjacency."""
    verts = list(combinations(range(5), 2))
    rows = [0] * 10
    for i in range(10):
        for j in range(i + 1, 10):
            if not set(verts[i]) & set(verts[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return graph.Graph(10, rows)


def test_graph_shape(g):
    assert g.n == 416
    assert g.edge_count() == 20800
    degrees = {g.degree(i) for i in range(g.n)}
    assert degrees == {100}


def test_no_loops_and_symmetric(g):
    for i in range(g.n):
        assert not g.adjacent(i, i)
    for i in range(0, g.n, 13):
        for j in range(g.n):
            assert g.adjacent(i, j) == g.adjacent(j, i)


def test_adjacency_is_intersection_3(g, isosets):
    for i in range(0, g.n, 29):
        for j in range(i + 1, g.n):
            size = (isosets[i] & isosets[j]).bit_count()
            assert g.adjacent(i, j) == (size == 3)


def test_intersection_distribution(isosets):
    dist = graph.intersection_size_distribution(isosets)
    assert 3 in dist
    assert dist[3] == 20800
    assert sum(dist.values()) == 416 * 415 // 2
    assert set(dist) == {2, 3, 5}


def test_build_graph_validates_input(isosets):
    with pytest.raises(ConstructionError):
        graph.build_graph(isosets[:-1])
    broken = list(isosets)
    broken[0] = 0b111
    with pytest.raises(ConstructionError):
        graph.build_graph(broken)


def test_srg_parameters(srg_params):
    assert (srg_params.v, srg_params.k, srg_params.lam, srg_params.mu) == (
        416,
        100,
        36,
        20,
    )
    assert srg_params.feasible()
    assert 100 * 63 == 315 * 20 == 6300


def test_srg_identity_holds(g, srg_params):
    graph.verify_srg_identity(g, srg_params)


def test_flipped_edge_breaks_verification(isosets):
    h = graph.build_graph(isosets)
    h.flip_edge(0, 1)
    with pytest.raises(VerificationError) as err:
        graph.verify_srg(h)
    assert err.value.witness is not None


def test_flip_edge_rejects_loop(g):
    with pytest.raises(ValueError):
        g.flip_edge(3, 3)


def test_spectrum_of_main_graph(spectrum):
    assert spectrum.s == -4
    assert spectrum.f == 65
    assert spectrum.r == 20
    assert spectrum.g_mult == 350
    assert 1 + spectrum.f + spectrum.g_mult == 416


def test_spectrum_cross_instance_petersen():
    cross = graph.srg_spectrum(graph.SrgParams(10, 3, 0, 1))
    assert cross.s == -2
    assert cross.f == 5
    assert cross.r == 1
    assert cross.g_mult == 4


def test_petersen_graph_parameters_via_scan():
    p = petersen()
    params = graph.verify_srg(p)
    assert (params.v, params.k, params.lam, params.mu) == (10, 3, 0, 1)
    graph.verify_srg_identity(p, params)


def test_spectrum_rejects_infeasible_and_conference():
    with pytest.raises(ValueError):
        graph.srg_spectrum(graph.SrgParams(10, 3, 1, 1))
    # Paley-style parameters have an irrational spectrum; rejected.
    with pytest.raises(ValueError):
        graph.srg_spectrum(graph.SrgParams(13, 6, 2, 3))


def test_spectrum_is_exact():
    got = graph.srg_spectrum(graph.SrgParams(416, 100, 36, 20))
    assert isinstance(got.r, Fraction) and isinstance(got.s, Fraction)
    assert got.r.denominator == 1 and got.s.denominator == 1


def test_partition_sizes(part):
    assert len(part.b1) == len(part.b2) == len(part.b3) == 32
    assert len(part.c) == 320
    assert 96 + 320 == 416


def test_partition_blocks_are_disjoint_and_labelled(part):
    blocks = [set(part.b1), set(part.b2), set(part.b3), set(part.c)]
    union = set()
    for b in blocks:
        assert not union & b
        union |= b
    assert union == set(range(416))
    # Components labelled by smallest contained vertex.
    assert part.b1[0] < part.b2[0] < part.b3[0]


def test_partition_membership_is_anchor_predicate(part, isosets):
    b_all = set(part.b1) | set(part.b2) | set(part.b3)
    for i in range(416):
        has_anchor = bool(isosets[i] >> 1 & 1)
        assert (i in b_all) == has_anchor


def test_claim1_counts(g, part):
    graph.verify_claim1(g, part)
    # Spot the three cases explicitly.
    i = part.b2[0]
    assert (g.rows[i] & part.b1_mask).bit_count() == 0
    assert (g.rows[i] & part.b2_mask).bit_count() == 20
    assert (g.rows[i] & part.b3_mask).bit_count() == 0
    j = part.c[0]
    assert (g.rows[j] & part.b1_mask).bit_count() == 8
    assert (g.rows[j] & part.b2_mask).bit_count() == 8
    assert (g.rows[j] & part.b3_mask).bit_count() == 8


def test_split_invariant_under_anchor_relabelling(g, isosets):
    for anchor in (7, 21, 58):
        alt = graph.split_B_C(g, isosets, anchor=anchor)
        assert [len(alt.b1), len(alt.b2), len(alt.b3)] == [32, 32, 32]
        graph.verify_claim1(g, alt)
    with pytest.raises(ValueError):
        graph.split_B_C(g, isosets, anchor=0)
    with pytest.raises(ValueError):
        graph.split_B_C(g, isosets, anchor=66)


def test_component_structure_regularity(g, part):
    res = graph.check_component_structure(g, part, with_isomorphism=False)
    assert res["regular_20"] is True


def test_components_isomorphic_to_coclique_extension(g, part):
    res = graph.check_component_structure(g, part, with_isomorphism=True)
    assert res["isomorphisms_found"] == 3


def test_halved_5cube_model():
    h = graph.halved_5cube()
    params = graph.verify_srg(h)
    assert (params.v, params.k, params.lam, params.mu) == (16, 10, 6, 6)
    model = graph.coclique_extension(h, 2)
    assert model.n == 32
    assert {model.degree(i) for i in range(32)} == {20}
    # Paired copies share neighbourhoods and are non-adjacent.
    for v in range(16):
        assert not model.adjacent(2 * v, 2 * v + 1)
        assert model.rows[2 * v] == model.rows[2 * v + 1]


def test_find_isomorphism_positive_and_negative():
    h = graph.halved_5cube()
    mapping = graph.find_isomorphism(h, h)
    assert mapping is not None
    p = petersen()
    assert graph.find_isomorphism(h, graph.coclique_extension(h, 2)) is None
    assert graph.find_isomorphism(p, p) is not None
