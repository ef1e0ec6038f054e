"""Exhaustive enumeration of small graphs up to isomorphism.

Graphs are built level by level: every graph on k vertices arises from a
graph on k-1 vertices by attaching a new vertex with some neighborhood, and
duplicates are removed via a canonical form.  The canonical form refines
vertex colors by degree and neighbor-color multisets until stable, then
minimizes the adjacency bitstring over the orderings consistent with the
stable coloring.  That is exhaustive within color classes, hence exact.

Used by the acceptance suite as the exhaustive corpus; counts are checked
against the known sequences (all graphs: 1, 2, 4, 11, 34, 156, 1044, 12346;
connected: 1, 1, 2, 6, 21, 112, 853, 11117).
"""

from __future__ import annotations

from itertools import permutations

from .graphs import Graph


def _refine_colors(adj: tuple[int, ...], k: int) -> tuple[int, ...]:
    colors = [adj[v].bit_count() for v in range(k)]
    while True:
        signatures = []
        for v in range(k):
            neigh = adj[v]
            local = []
            while neigh:
                low = neigh & -neigh
                local.append(colors[low.bit_length() - 1])
                neigh ^= low
            signatures.append((colors[v], tuple(sorted(local))))
        order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        new = [order[sig] for sig in signatures]
        if new == colors:
            return tuple(colors)
        colors = new


def canonical_key(adj: tuple[int, ...], k: int) -> tuple[int, int]:
    """Minimal upper-triangle adjacency bitstring over colored orderings."""
    colors = _refine_colors(adj, k)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    best = None
    for perm_parts in _group_orderings(groups):
        order = [v for part in perm_parts for v in part]
        code = 0
        bit = 0
        for i in range(k):
            ai = adj[order[i]]
            for j in range(i + 1, k):
                if ai >> order[j] & 1:
                    code |= 1 << bit
                bit += 1
        if best is None or code < best:
            best = code
    return (k, best if best is not None else 0)


def _group_orderings(groups: list[list[int]]):
    if not groups:
        yield []
        return
    head, *rest = groups
    for perm in permutations(head):
        for tail in _group_orderings(rest):
            yield [list(perm)] + tail


def _is_connected(adj: tuple[int, ...], k: int) -> bool:
    if k == 0:
        return False
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << k) - 1


def graphs_up_to_iso(max_n: int) -> dict[int, list[tuple[int, ...]]]:
    """All graphs on 1..max_n vertices up to isomorphism, as adjacency
    bitmask tuples."""
    levels: dict[int, list[tuple[int, ...]]] = {1: [(0,)]}
    for k in range(2, max_n + 1):
        seen: dict[tuple[int, int], tuple[int, ...]] = {}
        for base in levels[k - 1]:
            for nb in range(1 << (k - 1)):
                adj = list(base) + [nb]
                rest = nb
                while rest:
                    low = rest & -rest
                    adj[low.bit_length() - 1] |= 1 << (k - 1)
                    rest ^= low
                tup = tuple(adj)
                key = canonical_key(tup, k)
                if key not in seen:
                    seen[key] = tup
        levels[k] = sorted(seen.values())
    return levels


def connected_graphs(max_n: int) -> list[Graph]:
    """Connected graphs on 1..max_n vertices up to isomorphism."""
    out = []
    for k, graphs in graphs_up_to_iso(max_n).items():
        for adj in graphs:
            if not _is_connected(adj, k):
                continue
            edges = []
            for u in range(k):
                rest = adj[u] >> (u + 1)
                v = u + 1
                while rest:
                    if rest & 1:
                        edges.append((u + 1, v + 1))
                    rest >>= 1
                    v += 1
            out.append(Graph(k, tuple(sorted(edges))))
    return out
