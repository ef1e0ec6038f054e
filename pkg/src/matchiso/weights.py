"""Edge weight functions: the oblivious modular family, concatenation,
random draws for the isolation test, and the brute-force isolation check.

The family member with index k assigns edge j the value (4n^2+1)^j mod k.
Scanning k = 2, 3, ... is guaranteed to produce a member giving every
vector in a bounded obligation set a nonzero inner product, well before
k reaches n^3 times the number of vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import DEFAULT_SIZE_GUARD, Graph, enumerate_perfect_matchings


@dataclass(frozen=True)
class WeightFunction:
    """Nonnegative integer weight per edge id (values[j-1] is edge j).

    ``n`` is the vertex count of the ambient graph; it fixes the family base
    4n^2+1 and the padding bounds used by concatenation.
    """

    n: int
    values: tuple[int, ...]
    provenance: str = "custom"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be positive")
        if any(x < 0 for x in self.values):
            raise ValueError("weights must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.values)

    def on(self, edge_id: int) -> int:
        return self.values[edge_id - 1]

    def matching_weight(self, edge_ids: Iterable[int]) -> int:
        return sum(self.values[j - 1] for j in edge_ids)


def family_base(n: int) -> int:
    return 4 * n * n + 1


def family_member(k: int, n: int, m: int) -> WeightFunction:
    """Member k of the oblivious family on m edges: (4n^2+1)^j mod k."""
    if k < 2:
        raise ValueError(f"family index must be >= 2, got {k}")
    base = family_base(n) % k
    values = []
    acc = 1
    for _ in range(m):
        acc = acc * base % k
        values.append(acc)
    return WeightFunction(n, tuple(values), provenance=f"family:{k}")


def graph_family_member(g: Graph, k: int, n: int | None = None) -> WeightFunction:
    return family_member(k, g.n if n is None else n, g.m)


@dataclass(frozen=True)
class FamilySpec:
    """Index range of the oblivious family: members k = 2..t, t >= 7.

    The t >= 7 floor is what makes the separating-member scan guaranteed to
    succeed within the stated bound; smaller scans are still allowed as
    experiments via the t_max argument of :func:`separating_weights`.
    """

    n: int
    t: int

    def __post_init__(self):
        if self.t < 7:
            raise ValueError(f"family bound must be >= 7, got {self.t}")

    def members(self, m: int):
        for k in range(2, self.t + 1):
            yield family_member(k, self.n, m)


def concatenate(w: WeightFunction, w2: WeightFunction, padding: int) -> WeightFunction:
    """padding * w + w2, exact.

    Minimizing the result is the same as minimizing w and then w2, provided
    the padding strictly dominates every possible matching weight under w2;
    the check below uses the bound (n // 2) * max(w2) since a matching has
    at most n // 2 edges.
    """
    if w.m != w2.m:
        raise ValueError(f"edge counts differ: {w.m} vs {w2.m}")
    if w.n != w2.n:
        raise ValueError(f"vertex counts differ: {w.n} vs {w2.n}")
    ceiling = (w.n // 2) * max(w2.values, default=0)
    if padding <= ceiling:
        raise ValueError(
            f"padding {padding} does not dominate possible matching weights (need > {ceiling})"
        )
    values = tuple(padding * a + b for a, b in zip(w.values, w2.values))
    return WeightFunction(w.n, values, provenance="concat")


def default_padding(n: int) -> int:
    """The padding used when the right-hand side is a plain family member."""
    return n**21


def separating_weights(
    vectors: Sequence[Sequence[int]],
    n: int,
    t_max: int,
    m: int | None = None,
) -> tuple[int, WeightFunction] | None:
    """Smallest family index k <= t_max whose member has nonzero inner
    product with every vector, or None when the scan is exhausted.

    Each vector must be nonzero with 1-norm at most 4n^2.  Exhaustion is
    only possible when t_max is below the guaranteed bound n^3 * len(vectors);
    it is returned as data so callers can probe how small t can be.
    """
    vecs = [tuple(v) for v in vectors]
    if vecs:
        m = len(vecs[0])
    elif m is None:
        raise ValueError("edge count required when the vector list is empty")
    sparse = []
    for v in vecs:
        if len(v) != m:
            raise ValueError("vectors must all have the same length")
        nz = [(i, c) for i, c in enumerate(v) if c]
        if not nz:
            raise ValueError("zero vector in obligation set")
        if sum(abs(c) for _, c in nz) > 4 * n * n:
            raise ValueError("vector 1-norm exceeds 4n^2")
        sparse.append(nz)
    base_full = family_base(n)
    for k in range(2, t_max + 1):
        base = base_full % k
        values = [0] * m
        acc = 1
        for j in range(m):
            acc = acc * base % k
            values[j] = acc
        if all(sum(c * values[i] for i, c in nz) != 0 for nz in sparse):
            member = WeightFunction(n, tuple(values), provenance=f"family:{k}")
            return k, member
    return None


def random_weights(g: Graph, seed: int) -> WeightFunction:
    """Independent uniform weights in {1, ..., 2m}, reproducible from seed."""
    rng = random.Random(seed)
    hi = 2 * g.m
    values = tuple(rng.randint(1, hi) for _ in range(g.m)) if g.m else ()
    return WeightFunction(g.n, values, provenance="random")


def is_isolating(g: Graph, w: WeightFunction, max_vertices: int = DEFAULT_SIZE_GUARD) -> bool:
    """True iff exactly one perfect matching attains the minimum total
    weight (False when the graph has no perfect matching)."""
    matchings = enumerate_perfect_matchings(g, max_vertices)
    if not matchings:
        return False
    totals = [w.matching_weight(mm) for mm in matchings]
    best = min(totals)
    return totals.count(best) == 1
