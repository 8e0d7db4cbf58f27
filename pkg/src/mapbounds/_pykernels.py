"""Pure Python implementations of the hot dart-permutation kernels.

`mapbounds.kernels` prefers the compiled twin (`mapbounds._kernels`) and
falls back to this module.  Both implement exactly the same contracts and
must stay in lockstep; the parity tests compare them call for call.

Permutations are sequences of ints: ``sigma[d]`` is the next dart
counterclockwise around the vertex of ``d``, ``alpha[d]`` the other half
of the edge of ``d``.
"""

from itertools import permutations

__all__ = [
    "face_count",
    "component_count",
    "canonical_code",
    "connected_class_reps",
]


def face_count(sigma, alpha):
    """Number of orbits of sigma∘alpha (alpha applied first)."""
    n = len(sigma)
    seen = bytearray(n)
    faces = 0
    for d in range(n):
        if not seen[d]:
            faces += 1
            e = d
            while not seen[e]:
                seen[e] = 1
                e = sigma[alpha[e]]
    return faces


def component_count(sigma, alpha):
    """Orbit count of the group generated by sigma and alpha on the darts."""
    n = len(sigma)
    seen = bytearray(n)
    comps = 0
    for d in range(n):
        if seen[d]:
            continue
        comps += 1
        seen[d] = 1
        stack = [d]
        while stack:
            e = stack.pop()
            f = sigma[e]
            if not seen[f]:
                seen[f] = 1
                stack.append(f)
            f = alpha[e]
            if not seen[f]:
                seen[f] = 1
                stack.append(f)
    return comps


def canonical_code(sigma, alpha):
    """Lexicographically least traversal encoding over all start darts.

    From each root the darts are relabeled in first-visit order of a
    breadth-first walk that applies sigma before alpha; the relabeled
    (sigma, alpha) tables are flattened and the minimum over roots is the
    code.  Two connected maps get equal codes iff they are related by an
    orientation-preserving relabeling of darts.
    """
    n = len(sigma)
    if n == 0:
        return (0,)
    best = None
    for root in range(n):
        labels = [-1] * n
        order = [0] * n
        labels[root] = 0
        order[0] = root
        nxt = 1
        i = 0
        while i < nxt:
            d = order[i]
            e = sigma[d]
            if labels[e] < 0:
                labels[e] = nxt
                order[nxt] = e
                nxt += 1
            e = alpha[d]
            if labels[e] < 0:
                labels[e] = nxt
                order[nxt] = e
                nxt += 1
            i += 1
        if nxt != n:
            raise ValueError("canonical code requires a connected map")
        code = [0] * (2 * n)
        for j in range(n):
            d = order[j]
            code[2 * j] = labels[sigma[d]]
            code[2 * j + 1] = labels[alpha[d]]
        code = tuple(code)
        if best is None or code < best:
            best = code
    return (n,) + best


def connected_class_reps(n_edges):
    """Scan every rotation system on 2*n_edges darts over the standard
    pairing alpha = (0 1)(2 3)..., keeping one representative sigma per
    isomorphism class of connected maps.

    Returns (reps, connected_count) where reps is the list of sigma tuples
    in first-encounter order (lexicographic over sigma) and
    connected_count is the number of labeled connected rotation systems.
    """
    n = 2 * n_edges
    alpha = tuple(d ^ 1 for d in range(n))
    seen_codes = set()
    reps = []
    connected = 0
    for sigma in permutations(range(n)):
        if component_count(sigma, alpha) != 1:
            continue
        connected += 1
        code = canonical_code(sigma, alpha)
        if code not in seen_codes:
            seen_codes.add(code)
            reps.append(sigma)
    return reps, connected
