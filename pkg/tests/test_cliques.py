"""Clique number, special cliques, exact covers, and the final bounds."""

import random

import pytest

from g24verify import cliques, graph
from g24verify.errors import InconclusiveError, VerificationError


def complete_graph(n: int) -> graph.Graph:
    rows = [((1 << n) - 1) ^ (1 << i) for i in range(n)]
    return graph.Graph(n, rows)


def cycle_graph(n: int) -> graph.Graph:
    rows = [0] * n
    for i in range(n):
        rows[i] |= 1 << ((i + 1) % n)
        rows[(i + 1) % n] |= 1 << i
    return graph.Graph(n, rows)


def test_max_clique_on_small_graphs():
    size, wit, _ = cliques.max_clique(complete_graph(6))
    assert size == 6 and sorted(wit) == list(range(6))
    size, wit, _ = cliques.max_clique(cycle_graph(5))
    assert size == 2
    size, _, _ = cliques.max_clique(graph.Graph(4, [0, 0, 0, 0]))
    assert size == 1


def test_clique_number_is_5(g):
    size, witness, stats = cliques.max_clique(g)
    assert size == 5
    assert len(witness) == 5
    assert stats.edges_scanned == 20800
    cliques.verify_clique(g, witness)


def test_witness_survives_pair_recheck(g):
    _, witness, _ = cliques.max_clique(g)
    for a in range(5):
        for b in range(a + 1, 5):
            assert g.adjacent(witness[a], witness[b])
    non_neighbour = next(t for t in range(g.n) if t != 0 and not g.adjacent(0, t))
    with pytest.raises(VerificationError):
        cliques.verify_clique(g, [0, non_neighbour])


def test_branch_and_bound_matches_brute_force_on_sample_edges(g):
    rng = random.Random(404)
    edges = list(g.edges())
    sample = rng.sample(edges, 20)
    for i, j in sample:
        common = [t for t in range(g.n) if g.adjacent(i, t) and g.adjacent(j, t)]
        assert len(common) == 36
        fast = cliques.max_clique_through_edge(g, i, j)
        slow = cliques.brute_force_omega_through_edge(g, i, j)
        assert fast == slow
        assert 2 <= fast <= 5


def test_special_clique_enumeration(g, part, isosets, special_cliques):
    assert len(special_cliques) >= 64
    in_c = set(part.c)
    for sc in special_cliques:
        assert set(sc.vertices) <= in_c
        assert len(sc.core) == 3
        for a in range(5):
            for b in range(a + 1, 5):
                assert g.adjacent(sc.vertices[a], sc.vertices[b])
        core_mask = 0
        for idx in sc.core:
            core_mask |= 1 << idx
        inter = isosets[sc.vertices[0]]
        for v in sc.vertices[1:]:
            inter &= isosets[v]
        assert inter == core_mask


def test_special_cliques_sorted_canonically(special_cliques):
    keys = [(sc.core, sc.vertices) for sc in special_cliques]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_exact_cover_is_a_partition(part, cover):
    assert len(cover.cliques) == 64
    assert 64 * 5 == 320 == len(part.c)
    seen: set[int] = set()
    for sc in cover.cliques:
        assert not seen & set(sc.vertices)
        seen.update(sc.vertices)
    assert seen == set(part.c)


def test_cover_cores_distinct(cover):
    cores = {sc.core for sc in cover.cliques}
    assert len(cores) == 64


def test_exact_cover_deterministic(special_cliques, part):
    a = cliques.exact_cover_partition(special_cliques, part.c)
    b = cliques.exact_cover_partition(special_cliques, part.c)
    assert a.cliques == b.cliques


def test_cover_count_is_one(special_cliques, part, cover):
    count, nodes, first = cliques.count_exact_covers(special_cliques, part.c)
    assert count == 1
    assert first == cover.cliques


def test_removing_a_cover_clique_kills_all_covers(special_cliques, part, cover):
    reduced = [sc for sc in special_cliques if sc != cover.cliques[0]]
    count, _, _ = cliques.count_exact_covers(reduced, part.c)
    assert count == 0
    with pytest.raises(VerificationError):
        cliques.exact_cover_partition(reduced, part.c)


def test_cover_budget_exhaustion_is_loud(special_cliques, part):
    with pytest.raises(InconclusiveError):
        cliques.count_exact_covers(special_cliques, part.c, budget=3)


def test_cover_rejects_foreign_candidates(special_cliques, part):
    with pytest.raises(ValueError):
        cliques.exact_cover_partition(special_cliques, part.c[:100])
    with pytest.raises(ValueError):
        cliques.exact_cover_partition([], part.c)


def test_borsuk_lower_bound():
    assert cliques.borsuk_lower_bound(352, 5) == 71
    assert cliques.borsuk_lower_bound(416, 5) == 84
    assert cliques.borsuk_lower_bound(320, 5) == 64
    assert cliques.borsuk_lower_bound(321, 5) == 65
    with pytest.raises(ValueError):
        cliques.borsuk_lower_bound(100, 0)


def test_final_verdict(certificates, cover, part):
    verdict = cliques.final_verdict(
        certificates, 5, cover, c_size=len(part.c), b1_size=len(part.b1)
    )
    assert verdict["counterexample_dimension"] == 64
    assert verdict["point_count"] == 352
    assert verdict["min_parts"] == 71
    assert verdict["exceeds_dimension_plus_one"] is True
    assert verdict["full_set"]["min_parts"] == 84
    assert verdict["near_miss"]["min_parts"] == 64
    assert verdict["near_miss"]["cover_found"] is True
    assert verdict["near_miss"]["is_counterexample"] is False
    assert 352 == 320 + 32


def test_final_verdict_withheld_on_bad_inputs(certificates, cover, part):
    with pytest.raises(VerificationError):
        cliques.final_verdict(certificates, 6, cover, len(part.c), len(part.b1))
    with pytest.raises(VerificationError):
        cliques.final_verdict(certificates, 5, cover, 300, 32)


def test_diameter_smaller_iff_clique(g, y):
    # Sampled equivalence: a subset has squared diameter below 192 exactly
    # when it is a clique.
    from g24verify import euclid

    rng = random.Random(2024)
    for _ in range(100):
        size = rng.randint(2, 5)
        sub = rng.sample(range(g.n), size)
        diam = max(
            euclid.pair_distance_sq(y, a, b)
            for t, a in enumerate(sub)
            for b in sub[t + 1 :]
        )
        is_clique = all(
            g.adjacent(a, b) for t, a in enumerate(sub) for b in sub[t + 1 :]
        )
        assert (diam < 192) == is_clique
