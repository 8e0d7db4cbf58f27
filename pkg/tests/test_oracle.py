"""Slow reference implementations: the polygon-gluing face count, the
convolution recurrence, and brute-force class enumeration.  These are
the independent oracles the fast paths are checked against."""

from collections import Counter

import pytest

from mapbounds.oracle import (
    EXHAUSTIVE_EDGE_CAP,
    catalan_recurrence,
    catalan_table,
    exhaustive_maps,
    gluing_face_count,
    random_maps,
    _isomorphic,
)
from mapbounds.ribbon import (
    CombinatorialMap,
    canonical_form,
    surface_stats,
    trace_faces,
    validate,
)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786]


def test_catalan_recurrence_known_values():
    assert [catalan_recurrence(n) for n in range(12)] == CATALAN
    assert catalan_table(11) == CATALAN
    with pytest.raises(ValueError):
        catalan_recurrence(-1)
    with pytest.raises(ValueError):
        catalan_table(-1)


def test_gluing_face_count_matches_orbit_trace():
    examples = [
        CombinatorialMap.from_cycles(2, [(0, 1, 2, 3)]),
        CombinatorialMap.from_cycles(2, [(0, 2, 1, 3)]),
        CombinatorialMap.from_cycles(1, []),
        CombinatorialMap.from_cycles(3, [(0, 5), (1, 2), (3, 4)]),
    ]
    for m in examples:
        assert gluing_face_count(m) == len(trace_faces(m))
    for m in random_maps(200, 4, seed=11):
        assert gluing_face_count(m) == len(trace_faces(m))


def test_exhaustive_class_counts():
    maps = exhaustive_maps(2)
    assert len(maps) == 7
    by_edges = Counter(m.edge_count for m in maps)
    assert by_edges == {1: 2, 2: 5}
    # every representative is valid and connected, no two isomorphic
    codes = set()
    for m in maps:
        assert validate(m) == []
        codes.add(canonical_form(m))
    # canonical codes may merge at most mirror pairs, never more;
    # at two edges every class is amphichiral so codes are distinct
    assert len(codes) == 7

    assert Counter(m.edge_count for m in exhaustive_maps(3)) == {1: 2, 2: 5, 3: 20}


def test_alpha_fixing_loses_no_classes():
    # scanning all involutions alongside all rotations finds the same
    # classes as fixing alpha = (0 1)(2 3)...
    fixed = exhaustive_maps(2)
    full = exhaustive_maps(2, include_all_involutions=True)
    assert len(full) == len(fixed) == 7
    assert {canonical_form(m) for m in fixed} == {canonical_form(m) for m in full}


def test_pairwise_isomorphism_search():
    nested = CombinatorialMap.from_cycles(2, [(0, 1, 2, 3)])
    inter = CombinatorialMap.from_cycles(2, [(0, 2, 1, 3)])
    # conjugate nested by a dart relabeling and check the search finds it
    relab = (3, 1, 0, 2)
    sigma = [0] * 4
    alpha = [0] * 4
    for d in range(4):
        sigma[relab[d]] = relab[nested.sigma[d]]
        alpha[relab[d]] = relab[nested.alpha[d]]
    assert _isomorphic(nested.sigma, nested.alpha, tuple(sigma), tuple(alpha))
    assert not _isomorphic(nested.sigma, nested.alpha, inter.sigma, inter.alpha)


def test_exhaustive_cap_enforced():
    with pytest.raises(ValueError):
        exhaustive_maps(EXHAUSTIVE_EDGE_CAP + 1)
    with pytest.raises(ValueError):
        exhaustive_maps(0)


def test_random_maps_deterministic_and_valid():
    a = [(m.sigma, m.alpha) for m in random_maps(50, 5, seed=9)]
    b = [(m.sigma, m.alpha) for m in random_maps(50, 5, seed=9)]
    assert a == b
    c = [(m.sigma, m.alpha) for m in random_maps(50, 5, seed=10)]
    assert a != c
    for sigma, alpha in a:
        assert validate(CombinatorialMap(sigma, alpha)) == []


def test_exhaustive_representatives_have_consistent_genus():
    for m in exhaustive_maps(3):
        s = surface_stats(m)
        assert s.euler_characteristic % 2 == 0
        assert 0 <= s.genus <= s.edge_count // 2
