"""Brute-force baselines, kept deliberately independent of the main path.

Nothing here calls the kernels or the census machinery.  Face counts come
from an explicit cut-and-glue surface model, map equality from pairwise
isomorphism search, and Catalan numbers from the additive recurrence.
The only shared vocabulary is the CombinatorialMap container itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations

from .ribbon import CombinatorialMap

__all__ = [
    "GluedSurface",
    "gluing_face_count",
    "catalan_table",
    "catalan_recurrence",
    "exhaustive_maps",
    "random_maps",
    "EXHAUSTIVE_EDGE_CAP",
]

EXHAUSTIVE_EDGE_CAP = 5


# ---------------------------------------------------------------------------
# face counting by rectangle gluing

@dataclass(frozen=True)
class GluedSurface:
    """Thickening of a map into vertex disks and edge rectangles.

    Each edge becomes a rectangle with four labeled sides: two ends glued
    onto vertex disks and two long sides running along the boundary.  A
    long side has two names, (d, LEFT) and (alpha(d), RIGHT), one per
    dart frame.  ``gluings`` lists the identifications of boundary
    segments: the two names of each long side, plus one corner per dart
    where the boundary hops from the right side of d to the left side of
    the next dart around the vertex.  Every rectangle side is glued
    exactly once (the ends, onto disks) or lies on the boundary (the long
    sides); the boundary circles are the equivalence classes.
    """

    segments: tuple[tuple[int, int], ...]
    gluings: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def boundary_circles(self) -> int:
        parent = {s: s for s in self.segments}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.gluings:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(s) for s in self.segments})


_LEFT, _RIGHT = 0, 1


def _glue(m: CombinatorialMap) -> GluedSurface:
    n = len(m.sigma)
    segments = tuple((d, s) for d in range(n) for s in (_LEFT, _RIGHT))
    gluings = []
    for d in range(n):
        # the long side of the rectangle of edge {d, alpha(d)}, named twice
        gluings.append(((d, _LEFT), (m.alpha[d], _RIGHT)))
        # corner at the vertex between d and the next dart
        gluings.append(((d, _RIGHT), (m.sigma[d], _LEFT)))
    return GluedSurface(segments, tuple(gluings))


def gluing_face_count(m: CombinatorialMap) -> int:
    """Face count obtained by building the thickened surface and counting
    its boundary circles with union-find.  No orbit tracing involved."""
    if len(m.sigma) != len(m.alpha):
        raise ValueError("dart count mismatch")
    return _glue(m).boundary_circles()


# ---------------------------------------------------------------------------
# Catalan numbers by the additive recurrence

def catalan_table(n: int) -> list[int]:
    """Cat(0)..Cat(n) via Cat(k+1) = sum Cat(i) Cat(k-i), exact integers
    all the way.  Quadratic and proud of it; this is the cross-check,
    not the fast path."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    table = [1]
    for k in range(n):
        table.append(sum(table[i] * table[k - i] for i in range(k + 1)))
    return table


def catalan_recurrence(n: int) -> int:
    return catalan_table(n)[n]


# ---------------------------------------------------------------------------
# exhaustive enumeration of small connected maps

def _connected(sigma, alpha) -> bool:
    n = len(sigma)
    if n == 0:
        return False
    seen = bytearray(n)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            if not seen[e]:
                seen[e] = 1
                stack.append(e)
                count += 1
    return count == n


def _isomorphic(s1, a1, s2, a2) -> bool:
    """Try every image of dart 0 and propagate through both permutation
    actions.  For connected maps any dart bijection commuting with sigma
    and alpha is determined by one image, so this search is complete."""
    n = len(s1)
    for target in range(n):
        f = [-1] * n
        f[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for g, h in ((s1, s2), (a1, a2)):
                u, v = g[d], h[f[d]]
                if f[u] < 0:
                    f[u] = v
                    stack.append(u)
                elif f[u] != v:
                    ok = False
                    break
        if ok and len(set(f)) == n:
            return True
    return False


def _all_involutions(n):
    """All fixed point free involutions on 0..n-1."""
    if n == 0:
        yield ()
        return
    out = [0] * n

    def rec(free):
        if not free:
            yield tuple(out)
            return
        a = free[0]
        for k in range(1, len(free)):
            b = free[k]
            out[a], out[b] = b, a
            yield from rec(free[1:k] + free[k + 1:])

    yield from rec(list(range(n)))


def _signature(sigma, alpha):
    ndart = len(sigma)
    seen = bytearray(ndart)
    degs = []
    for d in range(ndart):
        if not seen[d]:
            ln = 0
            e = d
            while not seen[e]:
                seen[e] = 1
                ln += 1
                e = sigma[e]
            degs.append(ln)
    faces = gluing_face_count(CombinatorialMap(sigma, alpha))
    return (len(degs), faces, tuple(sorted(degs)))


def exhaustive_maps(max_edges: int, include_all_involutions: bool = False):
    """Every isomorphism class of connected maps with 1 <= E <= max_edges.

    All rotation systems are scanned: sigma runs over every permutation
    of the darts.  The edge pairing is fixed to the standard involution
    (0 1)(2 3)... since conjugating alpha is a dart relabeling, so every
    class is already reached; pass include_all_involutions=True to scan
    the full sigma x alpha product anyway (small E only; the tests use it
    to justify the fixing).  Dedup is pairwise isomorphism search seeded from
    every anchor dart, bucketed by (V, F, degrees) to cut the pair count.
    Hard cap at E = 5.
    """
    if not 1 <= max_edges <= EXHAUSTIVE_EDGE_CAP:
        raise ValueError(
            f"max_edges must be between 1 and {EXHAUSTIVE_EDGE_CAP}, got {max_edges}"
        )
    classes = []
    for n_edges in range(1, max_edges + 1):
        n = 2 * n_edges
        if include_all_involutions:
            alphas = list(_all_involutions(n))
        else:
            alphas = [tuple(d ^ 1 for d in range(n))]
        buckets = {}
        for alpha in alphas:
            for sigma in permutations(range(n)):
                if not _connected(sigma, alpha):
                    continue
                sig = _signature(sigma, alpha)
                bucket = buckets.setdefault(sig, [])
                if any(_isomorphic(sigma, alpha, s2, a2) for s2, a2 in bucket):
                    continue
                bucket.append((sigma, alpha))
                classes.append(CombinatorialMap(sigma, alpha))
    return classes


def random_maps(count: int, max_edges: int, seed: int):
    """Fixed-seed stream of valid random maps (connected or not).  The
    seed is part of the contract so failures replay exactly."""
    rng = random.Random(seed)
    for _ in range(count):
        n_edges = rng.randint(1, max_edges)
        n = 2 * n_edges
        sigma = list(range(n))
        rng.shuffle(sigma)
        darts = list(range(n))
        rng.shuffle(darts)
        alpha = [0] * n
        for i in range(0, n, 2):
            a, b = darts[i], darts[i + 1]
            alpha[a], alpha[b] = b, a
        yield CombinatorialMap(tuple(sigma), tuple(alpha))
