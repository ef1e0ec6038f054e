"""Simple undirected graphs with canonical edge indexing.

Vertices are labeled 1..n.  Edges are unordered pairs stored as (u, v) with
u < v, sorted lexicographically; the 1-based position of an edge in that
order is its edge id.  Every other module speaks in these ids, so parsing a
shuffled edge list yields the same graph and the same ids.

The module also hosts the exhaustive perfect-matching oracle that the rest
of the package (and its tests) use as ground truth.  The oracle is guarded
by an instance-size limit because it enumerates matchings explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

DEFAULT_SIZE_GUARD = 16


class ParseError(ValueError):
    """Invalid edge-list input.  ``kind`` names the defect:
    "malformed", "self-loop", "duplicate-edge" or "vertex-range"."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class SizeGuardExceeded(RuntimeError):
    """An exhaustive oracle was invoked above its instance-size guard."""


@dataclass(frozen=True)
class Graph:
    """Immutable graph with lexicographic edge ids.

    ``edges[j - 1]`` is the edge with id ``j``.  Construct via
    :func:`graph_from_edges` or :func:`parse_graph`; the raw constructor
    insists on already-canonical input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParseError("malformed", f"vertex count must be positive, got {self.n}")
        prev = None
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ParseError("vertex-range", f"edge ({u}, {v}) out of range 1..{self.n}")
            if u == v:
                raise ParseError("self-loop", f"self-loop at vertex {u}")
            if u > v:
                raise ParseError("malformed", f"edge ({u}, {v}) not normalized")
            if prev is not None and (u, v) <= prev:
                kind = "duplicate-edge" if (u, v) == prev else "malformed"
                raise ParseError(kind, f"edge list not strictly increasing at ({u}, {v})")
            prev = (u, v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_ids(self) -> dict[tuple[int, int], int]:
        return {uv: j for j, uv in enumerate(self.edges, start=1)}

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_ids[(min(u, v), max(u, v))]

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        return self.edges[edge_id - 1]

    @cached_property
    def incidence_masks(self) -> tuple[int, ...]:
        """Per-vertex bitmask over edges, bit ``j - 1`` set iff edge j touches v."""
        masks = [0] * self.n
        for j, (u, v) in enumerate(self.edges):
            masks[u - 1] |= 1 << j
            masks[v - 1] |= 1 << j
        return tuple(masks)

    @cached_property
    def endpoint_masks(self) -> tuple[int, ...]:
        """Per-edge bitmask over vertices (bit ``v - 1``)."""
        return tuple((1 << (u - 1)) | (1 << (v - 1)) for u, v in self.edges)

    def delta_mask(self, vertex_mask: int) -> int:
        """Edge bitmask of the cut delta(S) for S given as a vertex bitmask.

        XOR of incidence masks counts endpoint parity, which is 1 exactly
        for the crossing edges.
        """
        acc = 0
        vm = vertex_mask
        while vm:
            low = vm & -vm
            acc ^= self.incidence_masks[low.bit_length() - 1]
            vm ^= low
        return acc

    def interior_mask(self, vertex_mask: int) -> int:
        """Edge bitmask of E(S): edges with both endpoints inside S."""
        acc = 0
        for j, em in enumerate(self.endpoint_masks):
            if em & vertex_mask == em:
                acc |= 1 << j
        return acc


def vertex_mask(vertices: Iterable[int]) -> int:
    acc = 0
    for v in vertices:
        acc |= 1 << (v - 1)
    return acc


def mask_vertices(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return frozenset(out)


def edge_ids_of_mask(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return frozenset(out)


def edge_mask(edge_ids: Iterable[int]) -> int:
    acc = 0
    for j in edge_ids:
        acc |= 1 << (j - 1)
    return acc


def graph_from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from unordered pairs in any order, canonicalizing ids."""
    normalized = []
    seen = set()
    for a, b in pairs:
        if a == b:
            raise ParseError("self-loop", f"self-loop at vertex {a}")
        if not (1 <= a <= n and 1 <= b <= n):
            raise ParseError("vertex-range", f"edge ({a}, {b}) out of range 1..{n}")
        uv = (min(a, b), max(a, b))
        if uv in seen:
            raise ParseError("duplicate-edge", f"duplicate edge {uv}")
        seen.add(uv)
        normalized.append(uv)
    return Graph(n, tuple(sorted(normalized)))


def parse_graph(text: str) -> Graph:
    """Parse the edge-list document format.

    First non-comment line: ``n m``.  Then exactly m lines ``u v``.
    Lines starting with ``#`` and blank lines are ignored.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line)
    if not rows:
        raise ParseError("malformed", "empty document")
    head = rows[0].split()
    if len(head) != 2:
        raise ParseError("malformed", f"header must be 'n m', got {rows[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("malformed", f"header must be 'n m', got {rows[0]!r}") from None
    if n < 1 or m < 0:
        raise ParseError("malformed", f"invalid header counts n={n} m={m}")
    body = rows[1:]
    if len(body) != m:
        raise ParseError("malformed", f"expected {m} edge lines, found {len(body)}")
    pairs = []
    for line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("malformed", f"edge line must be 'u v', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("malformed", f"edge line must be 'u v', got {line!r}") from None
        pairs.append((a, b))
    return graph_from_edges(n, pairs)


def cut_and_interior(g: Graph, s: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return (sorted ids of delta(S), sorted ids of E(S))."""
    sm = 0
    for v in s:
        if not (1 <= v <= g.n):
            raise ValueError(f"vertex {v} out of range 1..{g.n}")
        sm |= 1 << (v - 1)
    dm = g.delta_mask(sm)
    im = g.interior_mask(sm)
    return tuple(sorted(edge_ids_of_mask(dm))), tuple(sorted(edge_ids_of_mask(im)))


def is_perfect_matching(g: Graph, edge_ids: Iterable[int]) -> bool:
    covered = 0
    for j in edge_ids:
        if not (1 <= j <= g.m):
            raise ValueError(f"edge id {j} out of range 1..{g.m}")
        em = g.endpoint_masks[j - 1]
        if covered & em:
            return False
        covered |= em
    return covered == (1 << g.n) - 1


def enumerate_perfect_matchings(
    g: Graph, max_vertices: int = DEFAULT_SIZE_GUARD
) -> tuple[frozenset[int], ...]:
    """All perfect matchings as frozensets of edge ids, deterministically
    ordered (lexicographic on sorted edge-id tuples).  Empty iff none exist.
    """
    if g.n > max_vertices:
        raise SizeGuardExceeded(f"n={g.n} exceeds oracle guard {max_vertices}")
    if g.n % 2 == 1:
        return ()
    full = (1 << g.n) - 1
    by_vertex: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for j, em in enumerate(g.endpoint_masks):
        u, v = g.edges[j]
        by_vertex[u - 1].append((j + 1, em))
    out: list[tuple[int, ...]] = []

    def walk(covered: int, chosen: list[int]):
        if covered == full:
            out.append(tuple(chosen))
            return
        low = (~covered & full) & -(~covered & full)
        v_idx = low.bit_length() - 1
        for j, em in by_vertex[v_idx]:
            if covered & em:
                continue
            chosen.append(j)
            walk(covered | em, chosen)
            chosen.pop()

    walk(0, [])
    return tuple(frozenset(t) for t in sorted(out))


def crossing(s: frozenset[int], t: frozenset[int]) -> bool:
    """S and T cross when S&T, S-T and T-S are all nonempty."""
    return bool(s & t) and bool(s - t) and bool(t - s)


def laminar_check(
    sets: Iterable[frozenset[int]],
) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """True iff pairwise non-crossing; otherwise also the first crossing pair
    in scan order."""
    seq = list(sets)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if crossing(seq[i], seq[j]):
                return False, (seq[i], seq[j])
    return True, None
