"""Generative census: plane trees, edge additions, rotation systems,
budgeted runs with worker invariance, and the sequence-count bound."""

from math import comb, factorial

import pytest

from mapbounds.census import (
    CensusResult,
    ConstructionBudget,
    census_upper_bound_check,
    enumerate_edge_additions,
    enumerate_plane_trees,
    enumerate_rotation_systems,
    generate_candidates,
    run_census,
)
from mapbounds.oracle import catalan_recurrence, exhaustive_maps
from mapbounds.ribbon import (
    canonical_form,
    format_map,
    parse_map,
    surface_stats,
    validate,
    vertices,
)


def test_plane_tree_counts_are_catalan():
    for n in range(1, 9):
        trees = list(enumerate_plane_trees(n))
        assert len(trees) == catalan_recurrence(n - 1)
        assert len({t.children for t in trees}) == len(trees)
    with pytest.raises(ValueError):
        next(enumerate_plane_trees(0))


def test_plane_tree_structure():
    trees = list(enumerate_plane_trees(3))
    for t in trees:
        assert t.n == 3
        assert len(t.edges) == 2
        assert sum(t.degrees()) == 4
        # edges are (parent, child) sorted by child, children preorder
        for parent, child in t.edges:
            assert parent < child


def test_edge_addition_counts():
    tree = next(iter(enumerate_plane_trees(2)))
    # pairs over 2 vertices: (0,0), (0,1), (1,1); multisets of size h
    pair_count = 3
    for h in range(4):
        adds = list(enumerate_edge_additions(tree, h))
        assert len(adds) == comb(pair_count + h - 1, h)
    with pytest.raises(ValueError):
        next(enumerate_edge_additions(tree, -1))


def test_rotation_system_counts():
    # (deg - 1)! distinct cyclic orders per vertex: the first dart of
    # each vertex is pinned and the rest permuted
    count = sum(1 for _ in enumerate_rotation_systems([[0, 1, 2, 3]]))
    assert count == 6
    count = sum(1 for _ in enumerate_rotation_systems([[0, 1], [2, 3]]))
    assert count == 1
    count = sum(1 for _ in enumerate_rotation_systems([[0, 1, 2], [3, 4, 5]]))
    assert count == 4
    with pytest.raises(ValueError):
        list(enumerate_rotation_systems([[0, 1], [3, 4]]))


def test_two_loop_rotations_split_by_genus():
    genus = {0: 0, 1: 0}
    for m in enumerate_rotation_systems([[0, 1, 2, 3]]):
        genus[surface_stats(m).genus] += 1
    assert genus == {0: 4, 1: 2}


def test_budget_validation():
    with pytest.raises(ValueError):
        ConstructionBudget(genus_target=-1, max_vertices=1, max_edges=1, max_degree=2)
    with pytest.raises(ValueError):
        ConstructionBudget(genus_target=0, max_vertices=0, max_edges=1, max_degree=2)
    with pytest.raises(ValueError):
        ConstructionBudget(genus_target=0, max_vertices=1, max_edges=-1, max_degree=2)
    with pytest.raises(ValueError):
        ConstructionBudget(genus_target=0, max_vertices=1, max_edges=1, max_degree=0)
    with pytest.raises(ValueError):
        ConstructionBudget(genus_target=0, max_vertices=1, max_edges=1, max_degree=2,
                           work_cap=0)


def test_torus_one_vertex_census():
    budget = ConstructionBudget(genus_target=1, max_vertices=1, max_edges=2,
                                max_degree=4)
    r = run_census(budget)
    assert r.sequences_counted == 8
    assert r.iso_classes == 3
    assert r.filling_classes == 1
    assert r.iso_classes_mirror_merged == 3
    assert r.filling_classes_mirror_merged == 1
    assert not r.truncated


def test_genus_two_needs_four_edges():
    # chi = V - E + F <= V - E + 1 and chi = -2 forces E >= V + 3,
    # so genus 2 is unreachable with three edges
    budget = ConstructionBudget(genus_target=2, max_vertices=4, max_edges=3,
                                max_degree=6)
    r = run_census(budget)
    assert r.sequences_counted == 241
    assert r.iso_classes == 27
    assert r.filling_classes == 0


def test_genus_two_one_vertex_matches_oracle():
    budget = ConstructionBudget(genus_target=2, max_vertices=1, max_edges=4,
                                max_degree=8)
    r = run_census(budget, keep_maps=True)
    assert r.sequences_counted == 5168
    assert r.iso_classes == 26
    assert r.filling_classes == 4
    assert r.filling_classes_mirror_merged == 4

    # independent oracle: brute-force classes at exactly four edges
    oracle_codes = {
        canonical_form(m)
        for m in exhaustive_maps(4)
        if m.edge_count == 4 and len(vertices(m)) == 1
        and surface_stats(m).genus == 2
    }
    census_codes = {canonical_form(m) for m in r.filling_maps}
    assert census_codes == oracle_codes
    assert len(oracle_codes) == 4


def test_census_matches_exhaustive_total():
    # every connected map with at most 2 edges fits V <= 3, deg <= 4,
    # so the census over all genera must see all 7 classes
    budget = ConstructionBudget(genus_target=1, max_vertices=3, max_edges=2,
                                max_degree=4)
    r = run_census(budget)
    assert r.iso_classes == 7
    assert r.filling_classes == 1


FULL_BUDGET = ConstructionBudget(genus_target=1, max_vertices=3, max_edges=4,
                                 max_degree=6)
FULL_COUNTS = (1410, 82, 32, 77, 30, False)


def _counts(r: CensusResult):
    return (r.sequences_counted, r.iso_classes, r.filling_classes,
            r.iso_classes_mirror_merged, r.filling_classes_mirror_merged,
            r.truncated)


def test_worker_count_does_not_change_results():
    for workers in (1, 2, 3):
        assert _counts(run_census(FULL_BUDGET, workers=workers)) == FULL_COUNTS


def test_work_cap_truncates_deterministically():
    capped = ConstructionBudget(genus_target=1, max_vertices=3, max_edges=4,
                                max_degree=6, work_cap=500)
    expect = (128, 8, 4, 8, 4, True)
    for workers in (1, 2):
        assert _counts(run_census(capped, workers=workers)) == expect

    tiny = ConstructionBudget(genus_target=1, max_vertices=1, max_edges=2,
                              max_degree=4, work_cap=5)
    assert _counts(run_census(tiny)) == (0, 0, 0, 0, 0, True)


def test_generate_candidates_streams_the_filling_classes():
    budget = ConstructionBudget(genus_target=1, max_vertices=3, max_edges=3,
                                max_degree=6)
    cands = list(generate_candidates(budget))
    r = run_census(budget, keep_maps=True)
    assert len(cands) == r.filling_classes
    assert [format_map(m) for m in cands] == [format_map(m) for m in r.filling_maps]
    codes = set()
    for m in cands:
        assert validate(m) == []
        assert surface_stats(m).genus == budget.genus_target
        codes.add(canonical_form(m))
    assert len(codes) == len(cands)


def test_emitted_maps_replay_through_the_exchange_format():
    budget = ConstructionBudget(genus_target=0, max_vertices=4, max_edges=3,
                                max_degree=4)
    for m in generate_candidates(budget):
        again = parse_map(format_map(m))
        assert canonical_form(again) == canonical_form(m)


def test_census_upper_bound_check():
    chk = census_upper_bound_check(
        ConstructionBudget(genus_target=1, max_vertices=2, max_edges=2,
                           max_degree=3))
    assert (chk.n, chk.h) == (2, 1)
    assert chk.sequences == 5
    # Cat(1) * 2^2 * (3!)^2 over floor(genus lower bound)! = 0! = 1
    assert chk.bound_numerator == catalan_recurrence(1) * 4 * factorial(3) ** 2
    assert chk.bound_denominator == 1
    assert chk.holds

    chk = census_upper_bound_check(
        ConstructionBudget(genus_target=2, max_vertices=2, max_edges=3,
                           max_degree=4))
    assert chk.bound_denominator == 2
    assert chk.holds

    with pytest.raises(ValueError):
        census_upper_bound_check(
            ConstructionBudget(genus_target=0, max_vertices=3, max_edges=1,
                               max_degree=2))
    with pytest.raises(ValueError):
        census_upper_bound_check(
            ConstructionBudget(genus_target=2, max_vertices=1, max_edges=4,
                               max_degree=8, work_cap=10))
