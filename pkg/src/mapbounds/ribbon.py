r"""Combinatorial maps (ribbon graphs) with exact integer surface invariants.

A map on 2E darts is a pair of permutations: ``sigma`` rotates the darts
counterclockwise around their vertex, ``alpha`` is a fixed point free
involution pairing the two darts of each edge.  Vertices are the cycles
of sigma, edges the cycles of alpha, and faces the cycles of sigma∘alpha
(alpha applied first).  For a connected map V - E + F = 2 - 2g defines
the genus of the thickened surface.

The text exchange format is ``E;sigma-cycles;alpha-pairs``, for example
``2;(0 2 1 3);(0 1)(2 3)`` for the one vertex map whose two loops
interleave (a torus).

>>> m = parse_map("2;(0 2 1 3);(0 1)(2 3)")
>>> trace_faces(m)
((0, 3, 1, 2),)
>>> surface_stats(m).genus
1
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels

__all__ = [
    "CombinatorialMap",
    "SurfaceStats",
    "GraphStats",
    "InvalidMapError",
    "DisconnectedMapError",
    "MapFormatError",
    "validate",
    "require_valid",
    "vertices",
    "edges",
    "degree_sequence",
    "trace_faces",
    "surface_stats",
    "graph_stats",
    "graph_cycle_rank",
    "spanning_tree",
    "induced_submap",
    "is_filling_subgraph",
    "canonical_form",
    "mirror",
    "parse_map",
    "format_map",
]


class InvalidMapError(ValueError):
    """Raised when an operation needs a valid map and got violations."""

    def __init__(self, violations):
        super().__init__("invalid map: " + "; ".join(violations))
        self.violations = list(violations)


class DisconnectedMapError(ValueError):
    """Raised by operations defined only for connected maps."""


class MapFormatError(ValueError):
    """Parse error in the text exchange format, with position info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CombinatorialMap:
    """Immutable rotation system.  ``sigma[d]`` is the next dart around
    the vertex of d, ``alpha[d]`` the opposite dart of the same edge.
    Construction does not validate; see :func:`validate`."""

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "alpha", tuple(self.alpha))

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    @property
    def is_empty(self) -> bool:
        return len(self.sigma) == 0

    @classmethod
    def from_cycles(cls, n_edges, sigma_cycles, alpha_pairs=None):
        """Build a map from cycle notation.  Darts absent from
        sigma_cycles are fixed points (degree one vertices).  Without
        alpha_pairs edge i owns darts 2i and 2i+1."""
        n = 2 * n_edges
        sigma = _permutation_from_cycles(n, sigma_cycles)
        if alpha_pairs is None:
            alpha = tuple(d ^ 1 for d in range(n))
        else:
            alpha = _permutation_from_cycles(n, alpha_pairs)
        return cls(sigma, alpha)


def _permutation_from_cycles(n, cycles):
    perm = list(range(n))
    for cyc in cycles:
        for k, d in enumerate(cyc):
            perm[d] = cyc[(k + 1) % len(cyc)]
    return tuple(perm)


@dataclass(frozen=True)
class SurfaceStats:
    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    genus: int


@dataclass(frozen=True)
class GraphStats:
    components: int
    cycle_rank: int
    degree_sequence: tuple[int, ...]


def validate(m: CombinatorialMap) -> list[str]:
    """Return the list of structural violations, empty when the map is
    valid.  Non-permutation entries, an alpha that is not an involution,
    alpha fixed points, and an odd dart count are reported distinctly."""
    violations = []
    n = len(m.sigma)
    if len(m.alpha) != n:
        violations.append(
            f"dart count mismatch: sigma has {n} entries, alpha has {len(m.alpha)}"
        )
        return violations
    if n % 2 != 0:
        violations.append(f"odd dart count: {n}")
    alpha_ok = True
    for name, perm in (("sigma", m.sigma), ("alpha", m.alpha)):
        ok = all(isinstance(x, int) and 0 <= x < n for x in perm)
        if not ok or len(set(perm)) != n:
            violations.append(f"{name} is not a permutation of 0..{n - 1}")
            if name == "alpha":
                alpha_ok = False
    if not alpha_ok:
        return violations
    if any(m.alpha[m.alpha[d]] != d for d in range(n)):
        violations.append("alpha is not an involution")
    fixed = sum(1 for d in range(n) if m.alpha[d] == d)
    if fixed:
        violations.append(f"alpha has {fixed} fixed point(s)")
    return violations


def require_valid(m: CombinatorialMap) -> None:
    violations = validate(m)
    if violations:
        raise InvalidMapError(violations)


def vertices(m: CombinatorialMap) -> tuple[tuple[int, ...], ...]:
    """Cycles of sigma, each rotated to start at its least dart, sorted
    by that dart.  The empty map has no vertices."""
    n = len(m.sigma)
    seen = bytearray(n)
    out = []
    for d in range(n):
        if seen[d]:
            continue
        cyc = []
        e = d
        while not seen[e]:
            seen[e] = 1
            cyc.append(e)
            e = m.sigma[e]
        out.append(tuple(cyc))
    return tuple(out)


def edges(m: CombinatorialMap) -> tuple[tuple[int, int], ...]:
    """Dart pairs (d, alpha[d]) with d < alpha[d], sorted.  Positions in
    this tuple are the edge indices used by the subset operations."""
    return tuple(
        sorted((d, m.alpha[d]) for d in range(len(m.sigma)) if d < m.alpha[d])
    )


def degree_sequence(m: CombinatorialMap) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in vertices(m)))


def trace_faces(m: CombinatorialMap) -> tuple[tuple[int, ...], ...]:
    """Orbits of sigma∘alpha as dart cycles.  Every dart lies on exactly
    one face, so the cycles partition the darts.

    >>> trace_faces(parse_map("2;(0 1 2 3);(0 1)(2 3)"))
    ((0, 2), (1,), (3,))
    """
    require_valid(m)
    n = len(m.sigma)
    seen = bytearray(n)
    out = []
    for d in range(n):
        if seen[d]:
            continue
        cyc = []
        e = d
        while not seen[e]:
            seen[e] = 1
            cyc.append(e)
            e = m.sigma[m.alpha[e]]
        out.append(tuple(cyc))
    return tuple(out)


def surface_stats(m: CombinatorialMap) -> SurfaceStats:
    """Exact V, E, F, Euler characteristic and genus of the thickened
    surface of a valid connected map."""
    require_valid(m)
    comps = kernels.component_count(m.sigma, m.alpha) if m.sigma else 0
    if comps != 1:
        raise DisconnectedMapError(
            f"surface statistics need a connected map, got {comps} components"
        )
    v = len(vertices(m))
    e = len(m.sigma) // 2
    f = kernels.face_count(m.sigma, m.alpha)
    chi = v - e + f
    # chi is even for any map glued from one rotation system
    if chi % 2 != 0:
        raise AssertionError(f"odd Euler characteristic {chi}")
    return SurfaceStats(v, e, f, chi, (2 - chi) // 2)


def graph_stats(m: CombinatorialMap) -> GraphStats:
    require_valid(m)
    comps = kernels.component_count(m.sigma, m.alpha) if m.sigma else 0
    v = len(vertices(m))
    e = len(m.sigma) // 2
    return GraphStats(comps, e - v + comps, degree_sequence(m))


def graph_cycle_rank(m: CombinatorialMap) -> int:
    """E - V + components of the underlying graph (first Betti number)."""
    return graph_stats(m).cycle_rank


def spanning_tree(m: CombinatorialMap) -> tuple[int, ...]:
    """Edge indices of the lowest-dart-first spanning tree.

    Growth starts at the vertex containing dart 0 and repeatedly adds the
    smallest dart leaving the grown part, so the result is deterministic.
    Loops never enter the tree.
    """
    require_valid(m)
    if m.is_empty or kernels.component_count(m.sigma, m.alpha) != 1:
        raise DisconnectedMapError("spanning tree needs a connected map")
    verts = vertices(m)
    vertex_of = {}
    for vi, cyc in enumerate(verts):
        for d in cyc:
            vertex_of[d] = vi
    edge_index = {pair: i for i, pair in enumerate(edges(m))}
    in_tree = {vertex_of[0]}
    chosen = []
    n = len(m.sigma)
    while len(in_tree) < len(verts):
        best = None
        for d in range(n):
            if vertex_of[d] in in_tree and vertex_of[m.alpha[d]] not in in_tree:
                best = d
                break
        in_tree.add(vertex_of[m.alpha[best]])
        pair = (best, m.alpha[best]) if best < m.alpha[best] else (m.alpha[best], best)
        chosen.append(edge_index[pair])
    return tuple(sorted(chosen))


def induced_submap(m: CombinatorialMap, edge_subset) -> CombinatorialMap:
    """Map induced by keeping the given edge indices.

    Darts of removed edges are deleted, sigma cycles contract by skipping
    them, vertices left with no darts disappear, and the surviving darts
    are relabeled in increasing order.  Keeping every edge returns an
    equal map; keeping none returns the empty map.
    """
    require_valid(m)
    pairs = edges(m)
    idxs = set()
    for i in edge_subset:
        if not isinstance(i, int) or not 0 <= i < len(pairs):
            raise ValueError(f"unknown edge index {i!r} (map has {len(pairs)} edges)")
        idxs.add(i)
    keep = sorted(d for i in idxs for d in pairs[i])
    newid = {d: k for k, d in enumerate(keep)}
    sig = []
    for d in keep:
        e = m.sigma[d]
        while e not in newid:
            e = m.sigma[e]
        sig.append(newid[e])
    alp = [newid[m.alpha[d]] for d in keep]
    return CombinatorialMap(tuple(sig), tuple(alp))


def is_filling_subgraph(m: CombinatorialMap, edge_subset) -> bool:
    """True iff the kept edges cut the ambient surface into disks.

    Equivalent test on the induced submap: non-empty, still touching
    every ambient vertex, connected, and of the same genus as the
    ambient map.  A vertex stripped of all its edges lies inside a
    complementary region, which therefore cannot be a disk."""
    ambient = surface_stats(m)
    sub = induced_submap(m, edge_subset)
    if sub.is_empty:
        return False
    if kernels.component_count(sub.sigma, sub.alpha) != 1:
        return False
    if len(vertices(sub)) != ambient.vertex_count:
        return False
    return surface_stats(sub).genus == ambient.genus


def canonical_form(m: CombinatorialMap) -> tuple[int, ...]:
    """Canonical code of a valid connected map.  Codes are equal exactly
    for orientation-preserving isomorphic maps; the mirror image may get
    a different code (compare ``canonical_form(mirror(m))`` as well to
    identify reflected pairs)."""
    require_valid(m)
    if m.is_empty or kernels.component_count(m.sigma, m.alpha) != 1:
        raise DisconnectedMapError("canonical form needs a connected map")
    return kernels.canonical_code(m.sigma, m.alpha)


def mirror(m: CombinatorialMap) -> CombinatorialMap:
    """The reflected map: all rotations reversed, edge pairing kept."""
    n = len(m.sigma)
    inv = [0] * n
    for d in range(n):
        inv[m.sigma[d]] = d
    return CombinatorialMap(tuple(inv), m.alpha)


# ---------------------------------------------------------------------------
# text exchange format

def format_map(m: CombinatorialMap) -> str:
    """Serialize as ``E;sigma-cycles;alpha-pairs`` (canonical cycle
    order, so equal maps format identically)."""
    require_valid(m)
    sig = "".join("(" + " ".join(map(str, c)) + ")" for c in vertices(m))
    alp = "".join(f"({a} {b})" for a, b in edges(m))
    return f"{m.edge_count};{sig};{alp}"


def parse_map(text: str, line: int = 1) -> CombinatorialMap:
    """Parse one map in the exchange format.

    Malformed input raises :class:`MapFormatError` carrying 1-based line
    and column of the offending character.  Darts missing from the sigma
    section are fixed points; the alpha section must cover every dart in
    cycles of length two.
    """
    body = text.rstrip("\n")
    parts = body.split(";")
    if len(parts) != 3:
        raise MapFormatError(
            f"expected 2 ';' separators, found {len(parts) - 1}", line, len(body) + 1
        )
    head, sig_src, alp_src = parts
    col = 1
    stripped = head.strip()
    if not stripped.isdigit():
        raise MapFormatError(f"edge count must be a nonnegative integer, got {head!r}",
                             line, col + max(0, len(head) - len(head.lstrip())))
    n_edges = int(stripped)
    n = 2 * n_edges
    sig_off = len(head) + 2  # 1-based column of sigma section start
    alp_off = sig_off + len(sig_src) + 1
    sigma = _parse_cycle_section(sig_src, n, "sigma", line, sig_off, pair_only=False)
    alpha = _parse_cycle_section(alp_src, n, "alpha", line, alp_off, pair_only=True)
    return CombinatorialMap(sigma, alpha)


def _parse_cycle_section(src, n, name, line, offset, pair_only):
    cycles = []
    cur = None
    cur_col = None
    seen = {}
    i = 0
    while i < len(src):
        c = src[i]
        col = offset + i
        if c.isspace():
            i += 1
            continue
        if c == "(":
            if cur is not None:
                raise MapFormatError(f"nested '(' in {name} section", line, col)
            cur = []
            cur_col = col
            i += 1
        elif c == ")":
            if cur is None:
                raise MapFormatError(f"unmatched ')' in {name} section", line, col)
            if not cur:
                raise MapFormatError(f"empty cycle in {name} section", line, col)
            if pair_only and len(cur) != 2:
                raise MapFormatError(
                    f"{name} cycle has length {len(cur)}, expected a pair",
                    line, cur_col,
                )
            cycles.append(cur)
            cur = None
            i += 1
        elif c.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            if cur is None:
                raise MapFormatError(
                    f"dart label outside parentheses in {name} section", line, col
                )
            d = int(src[i:j])
            if d >= n:
                raise MapFormatError(
                    f"dart {d} out of range 0..{n - 1} in {name} section", line, col
                )
            if d in seen:
                raise MapFormatError(
                    f"dart {d} repeated in {name} section", line, col
                )
            seen[d] = col
            cur.append(d)
            i = j
        else:
            raise MapFormatError(
                f"unexpected character {c!r} in {name} section", line, col
            )
    if cur is not None:
        raise MapFormatError(f"unclosed '(' in {name} section", line, offset + len(src))
    if pair_only and len(seen) != n:
        missing = next(d for d in range(n) if d not in seen)
        raise MapFormatError(
            f"dart {missing} missing from {name} pairs", line, offset + len(src)
        )
    return _permutation_from_cycles(n, cycles)
