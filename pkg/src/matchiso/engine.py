"""End-to-end isolation pipelines.

Randomized route: draw uniform edge weights until a unique minimum-weight
perfect matching exists, then certify it through the determinant search.

Constructive route: walk a face-laminar pair through doubling size
thresholds.  Each round makes the chain layers of mid-sized tight sets
contractible (one weight function per doubling phase), removes the short
alternating circuits of the contraction with one more weight function,
extends the laminar family maximally over the new tight sets, and verifies
the progress predicate before continuing.  Obligations are discharged by
scanning the oblivious weight family for the smallest member with nonzero
inner product against every obligation vector.  At threshold >= n the face
is a single matching; the logged members compose into one isolating weight
function which is cross-checked three ways (brute force, face content,
determinant search).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graphs import (
    DEFAULT_SIZE_GUARD,
    Graph,
    edge_ids_of_mask,
    enumerate_perfect_matchings,
    vertex_mask,
)
from .weights import (
    WeightFunction,
    concatenate,
    is_isolating,
    random_weights,
    separating_weights,
)
from .faces import (
    Face,
    LaminarFamily,
    bounded_circuit_vectors,
    canonical_sign,
    contract_face,
    extend_to_maximal_laminar,
    goodness_check,
    is_contractible,
    lift_contracted_vector,
    min_weight_subface,
    perfect_matching_face,
    respects_face,
    singletons,
    tight_odd_sets,
)
from .tutte import STATUS_MATCHED, STATUS_NO_PM, SearchOutcome, determinant_search


class EngineError(RuntimeError):
    """A verified pipeline invariant failed; indicates a bug, never a bad input."""


class NoPerfectMatchingError(ValueError):
    """The input graph has no perfect matching."""


class TrialsExhausted(RuntimeError):
    """The randomized route ran out of trials without isolating."""


@dataclass(frozen=True)
class PhaseRecord:
    """One applied weight function: which phase produced it, the family
    index it came from, how many obligation vectors it separated, and
    whether minimizing it actually shrank the face."""

    label: str
    k: int
    weights: WeightFunction
    obligations: int
    changed_face: bool


@dataclass(frozen=True)
class FaceLaminarState:
    face: Face
    laminar: LaminarFamily
    threshold: int
    weight_log: tuple[PhaseRecord, ...] = ()


@dataclass(frozen=True)
class IsolationCertificate:
    weight: WeightFunction
    matching: frozenset[int]
    audit: tuple[PhaseRecord, ...]
    trials: int | None = None


def ceil_log2(n: int) -> int:
    return max(1, (n - 1).bit_length())


def _find_member(vectors, n: int, m: int) -> tuple[int, WeightFunction]:
    """Smallest separating family member, with the escalation schedule:
    start at n^3 * s, double on exhaustion, hard cap n^20 (never reached)."""
    vecs = sorted(set(canonical_sign(v) for v in vectors))
    if not vecs:
        found = separating_weights([], n, 7, m=m)
        assert found is not None
        return found
    cap = n**20
    t_max = min(cap, max(7, n**3 * len(vecs)))
    while True:
        found = separating_weights(vecs, n, t_max, m=m)
        if found is not None:
            return found
        if t_max >= cap:
            raise EngineError("no separating family member below the n^20 cap")
        t_max = min(cap, 2 * t_max)


def remove_circuits(
    face: Face,
    fam: LaminarFamily,
    bound: int,
    beta: int,
    g: Graph,
) -> tuple[PhaseRecord, Face]:
    """Apply one weight function after which no alternating circuit of
    node-weight <= bound in the beta-contraction respects the new face.

    Every member of the family with size <= beta must be contractible for
    the face (the lifting step needs the forced interiors).  The circuit
    vectors are lifted to ambient edge vectors, a separating family member
    is found for them, and the face is minimized; the postcondition is then
    verified circuit by circuit.
    """
    h = contract_face(face, fam, beta, g)
    circuit_vecs = bounded_circuit_vectors(h, bound)
    lifted = [lift_contracted_vector(z, face, h, g) for z in circuit_vecs]
    k, w = _find_member(lifted, g.n, g.m)
    new_face = min_weight_subface(face, w)
    for z in circuit_vecs:
        if respects_face(z, new_face, g, contraction=h):
            raise EngineError(
                f"circuit vector {z} still respects the face after removal"
            )
    record = PhaseRecord(
        label=f"circuits:bound={bound},beta={beta}",
        k=k,
        weights=w,
        obligations=len(circuit_vecs),
        changed_face=new_face.matchings != face.matchings,
    )
    return record, new_face


def chain_phase_spans(longest: int, n: int) -> tuple[tuple[int, int], ...]:
    """Schedule of the chain phases after the first: phase t covers every
    layer spanning up to 2^(t-1) - 1 chain steps.  Phases stop once the
    previous one already covered the longest chain, and never exceed
    ceil(log2 n); a chain has fewer than n/2 sets, so that always suffices.
    """
    spans = []
    t = 2
    while 2 ** (t - 2) - 1 < longest - 1 and t <= ceil_log2(n):
        spans.append((t, 2 ** (t - 1) - 1))
        t += 1
    return tuple(spans)


def _disjoint_chains(group: list[frozenset[int]]) -> list[tuple[frozenset[int], ...]]:
    """Group nested sets (each with at most one child) into ascending chains."""
    gs = sorted(group, key=lambda s: (len(s), sorted(s)))
    parent: dict[frozenset[int], frozenset[int] | None] = {}
    for s in gs:
        sup = None
        for t in gs:
            if s < t and (sup is None or len(t) < len(sup)):
                sup = t
        parent[s] = sup
    chains = []
    for s in gs:
        if any(t < s for t in gs):
            continue
        chain = [s]
        while parent[chain[-1]] is not None:
            chain.append(parent[chain[-1]])
        chains.append(tuple(chain))
    return chains


def _layer_difference_vectors(
    face: Face,
    chain: tuple[frozenset[int], ...],
    p: int,
    r: int,
    g: Graph,
) -> set[tuple[int, ...]]:
    """Obligations that make the layer U_{p..r} contractible: for each
    admissible boundary pair, the differences of the distinct interior
    matchings that the current face still allows."""
    hi = chain[r - 1]
    hi_mask = vertex_mask(hi)
    if p >= 2:
        lo_mask = vertex_mask(chain[p - 2])
        u_mask = hi_mask & ~lo_mask
        lo_ids = sorted(edge_ids_of_mask(g.delta_mask(lo_mask)))
    else:
        u_mask = hi_mask
        lo_ids = [None]
    interior = g.interior_mask(u_mask)
    hi_ids = sorted(edge_ids_of_mask(g.delta_mask(hi_mask)))
    out: set[tuple[int, ...]] = set()
    for e_lo in lo_ids:
        bit_lo = 0 if e_lo is None else 1 << (e_lo - 1)
        for e_hi in hi_ids:
            bit_hi = 1 << (e_hi - 1)
            need = bit_lo | bit_hi
            interiors = {mm & interior for mm in face.matching_masks if mm & need == need}
            if len(interiors) < 2:
                continue
            for a, b in combinations(sorted(interiors), 2):
                vec = [0] * g.m
                rest = a & ~b
                while rest:
                    low = rest & -rest
                    vec[low.bit_length() - 1] = 1
                    rest ^= low
                rest = b & ~a
                while rest:
                    low = rest & -rest
                    vec[low.bit_length() - 1] = -1
                    rest ^= low
                out.add(canonical_sign(vec))
    return out


def make_chains_contractible(
    face: Face,
    fam: LaminarFamily,
    threshold: int,
    g: Graph,
) -> tuple[tuple[PhaseRecord, ...], Face]:
    """Make every laminar member of size <= 2*threshold contractible.

    Members of size in (threshold, 2*threshold] form disjoint chains.  Phase
    one removes short circuits from the threshold-contraction, which forces
    the single layers.  Phase t then handles layers spanning up to 2^(t-1)
    chain steps; with both halves of a layer already forced, the layer
    admits few interior matchings and their pairwise differences become the
    obligation vectors.  The final contractibility of every small member is
    verified before returning.
    """
    chain_sets = [s for s in fam.sets if threshold < len(s) <= 2 * threshold]
    records: list[PhaseRecord] = []
    cur = face
    if chain_sets:
        rec, cur = remove_circuits(cur, fam, bound=2 * threshold, beta=threshold, g=g)
        records.append(rec)
        chains = _disjoint_chains(chain_sets)
        longest = max(len(c) for c in chains)
        for t, span in chain_phase_spans(longest, g.n):
            obligations: set[tuple[int, ...]] = set()
            for chain in chains:
                for p in range(1, len(chain) + 1):
                    for r in range(p, min(len(chain), p + span) + 1):
                        obligations |= _layer_difference_vectors(cur, chain, p, r, g)
            if obligations:
                k, w = _find_member(obligations, g.n, g.m)
                new_face = min_weight_subface(cur, w)
                records.append(
                    PhaseRecord(
                        label=f"chain:phase={t},threshold={threshold}",
                        k=k,
                        weights=w,
                        obligations=len(obligations),
                        changed_face=new_face.matchings != cur.matchings,
                    )
                )
                cur = new_face
    for s in fam.sets:
        if len(s) <= 2 * threshold and not is_contractible(cur, s, g):
            raise EngineError(f"set {sorted(s)} still not contractible after chain phases")
    return tuple(records), cur


def initial_state(g: Graph, max_vertices: int = DEFAULT_SIZE_GUARD) -> FaceLaminarState:
    """The whole polytope with a maximal laminar family; always 1-good."""
    face = perfect_matching_face(g, max_vertices)
    fam = extend_to_maximal_laminar(singletons(g.n), tight_odd_sets(face, g))
    report = goodness_check(face, fam, 1, g)
    if not report.ok:
        raise EngineError(f"initial pair not 1-good: {report}")
    return FaceLaminarState(face, fam, 1)


def advance(state: FaceLaminarState, g: Graph) -> FaceLaminarState:
    """From a threshold-good state to a verified (2*threshold)-good state."""
    th = state.threshold
    chain_records, f_mid = make_chains_contractible(state.face, state.laminar, th, g)
    final_record, f_out = remove_circuits(f_mid, state.laminar, bound=2 * th, beta=2 * th, g=g)
    records = chain_records + (final_record,)
    if len(records) > ceil_log2(g.n) + 1:
        raise EngineError("round used more weight functions than its budget")
    fam_out = extend_to_maximal_laminar(state.laminar, tight_odd_sets(f_out, g))
    report = goodness_check(f_out, fam_out, 2 * th, g)
    if not report.ok:
        raise EngineError(
            f"advance failed verification at threshold {2 * th}: "
            f"{report.failed} witness {report.witness}"
        )
    return FaceLaminarState(f_out, fam_out, 2 * th, state.weight_log + records)


def compose_log(records: tuple[PhaseRecord, ...], n: int, m: int) -> WeightFunction:
    """Fold the face-changing members into one weight function.

    Each concatenation uses the smallest dominating padding, which realizes
    exactly the same lexicographic order on matchings as the generic padding
    while keeping values small enough for exact determinant work.  Members
    whose minimization left the face unchanged are no-ops and are skipped.
    A final pointwise +1 shift (applied only if some edge got weight zero)
    adds the same constant to every perfect matching, preserving the order.
    """
    effective = [r.weights for r in records if r.changed_face]
    if not effective:
        w = WeightFunction(n, (1,) * m, provenance="constant")
        return w
    w = effective[0]
    for nxt in effective[1:]:
        padding = (n // 2) * max(nxt.values, default=0) + 1
        w = concatenate(w, nxt, padding)
    if any(v == 0 for v in w.values):
        w = WeightFunction(w.n, tuple(v + 1 for v in w.values), w.provenance)
    return w


def isolate_derandomized(g: Graph, max_vertices: int = DEFAULT_SIZE_GUARD) -> IsolationCertificate:
    """Run the constructive pipeline to a certificate.

    Doubles the threshold ceil(log2 n) times, then cross-validates the
    composed weight function three independent ways: the brute-force
    minimum is unique, it equals the singleton face content, and the
    determinant search returns the same matching.
    """
    matchings = enumerate_perfect_matchings(g, max_vertices)
    if not matchings:
        raise NoPerfectMatchingError(f"graph with {g.n} vertices has no perfect matching")
    state = initial_state(g, max_vertices)
    while state.threshold < g.n:
        state = advance(state, g)
    if len(state.face) != 1:
        raise EngineError("face is not a singleton at threshold >= n")
    matching = state.face.matchings[0]
    rounds = ceil_log2(g.n)
    if len(state.weight_log) > (rounds + 1) * rounds:
        raise EngineError("weight log exceeds the concatenation budget")
    w = compose_log(state.weight_log, g.n, g.m)
    if not is_isolating(g, w, max_vertices):
        raise EngineError("composed weight function is not isolating")
    totals = [(w.matching_weight(mm), mm) for mm in matchings]
    brute = min(totals)[1]
    if brute != matching:
        raise EngineError("brute-force minimizer disagrees with the singleton face")
    outcome = determinant_search(g, w)
    if outcome.status != STATUS_MATCHED or outcome.matching != matching:
        raise EngineError(f"determinant search disagrees: {outcome.status}")
    return IsolationCertificate(weight=w, matching=matching, audit=state.weight_log)


def isolate_randomized(
    g: Graph,
    seed: int,
    max_trials: int = 64,
    max_vertices: int = DEFAULT_SIZE_GUARD,
) -> IsolationCertificate | SearchOutcome:
    """Draw random weights until one isolates; certify via the search.

    Returns the no-perfect-matching search outcome when none exists.  Each
    failed trial happens with probability at most 1/2, so exhausting
    max_trials has probability at most 2^-max_trials.
    """
    if g.n <= max_vertices and not enumerate_perfect_matchings(g, max_vertices):
        return determinant_search(g, WeightFunction(g.n, (1,) * g.m, "constant"))
    rng = random.Random(seed)
    for trial in range(1, max_trials + 1):
        w = random_weights(g, rng.randrange(1 << 63))
        if g.n <= max_vertices:
            if not is_isolating(g, w, max_vertices):
                continue
            outcome = determinant_search(g, w)
            if outcome.status != STATUS_MATCHED:
                raise EngineError("search failed on a brute-force-isolating weight")
        else:
            outcome = determinant_search(g, w)
            if outcome.status == STATUS_NO_PM:
                return outcome
            if outcome.status != STATUS_MATCHED:
                continue
        record = PhaseRecord(
            label=f"random:trial={trial}", k=0, weights=w, obligations=0, changed_face=True
        )
        return IsolationCertificate(
            weight=w, matching=outcome.matching, audit=(record,), trials=trial
        )
    raise TrialsExhausted(f"no isolating weights in {max_trials} trials")
