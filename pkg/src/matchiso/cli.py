"""Command-line surface with stable machine-readable JSON reports.

Verbs: decide, search, isolate, weights, face, goodness, bench.
Reports go to stdout as one JSON object with fixed field order
(verb, result, ms, seed); errors go to stderr.  Exit codes: 2 parse error,
3 size guard, 4 domain error, 1 internal invariant failure.  Big integers
are serialized as decimal strings.  Output is byte-identical across runs
for identical input, flags and seed, except for the wall-clock "ms" field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .graphs import (
    Graph,
    ParseError,
    SizeGuardExceeded,
    parse_graph,
)
from .weights import (
    WeightFunction,
    concatenate,
    family_member,
    random_weights,
)
from .faces import (
    extend_to_maximal_laminar,
    face_support,
    goodness_check,
    min_weight_subface,
    perfect_matching_face,
    singletons,
    tight_odd_sets,
)
from .tutte import (
    STATUS_NO_PM,
    build_tutte_matrix,
    decide_random,
    determinant,
    determinant_search,
)
from .engine import (
    EngineError,
    IsolationCertificate,
    NoPerfectMatchingError,
    TrialsExhausted,
    isolate_derandomized,
    isolate_randomized,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_SIZE_GUARD = 3
EXIT_DOMAIN = 4


class _Domain(Exception):
    """Domain-level refusal (no perfect matching, bad parameter)."""


def _load_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _weights_payload(w: WeightFunction) -> dict:
    return {
        "n": w.n,
        "values": [str(v) for v in w.values],
        "provenance": w.provenance,
    }


def _matching_payload(m) -> list[int]:
    return sorted(m)


def _certificate_payload(cert: IsolationCertificate) -> dict:
    return {
        "matching": _matching_payload(cert.matching),
        "weight": _weights_payload(cert.weight),
        "trials": cert.trials,
        "audit": [
            {
                "label": rec.label,
                "k": rec.k,
                "obligations": rec.obligations,
                "changedFace": rec.changed_face,
                "values": [str(v) for v in rec.weights.values],
            }
            for rec in cert.audit
        ],
    }


def _parse_weight_list(raw: str, g: Graph) -> WeightFunction:
    values = tuple(int(x) for x in raw.split(","))
    if len(values) != g.m:
        raise _Domain(f"expected {g.m} weights, got {len(values)}")
    return WeightFunction(g.n, values, provenance="custom")


def _cmd_decide(args) -> dict:
    g = _load_graph(args.graph)
    has = decide_random(g, args.prime, args.trials, args.seed)
    return {"hasPerfectMatching": has, "prime": args.prime, "trials": args.trials}


def _cmd_search(args) -> dict:
    g = _load_graph(args.graph)
    if args.random_weights:
        w = random_weights(g, args.seed)
    else:
        w = _parse_weight_list(args.weights, g)
    outcome = determinant_search(g, w)
    if outcome.status == STATUS_NO_PM:
        raise _Domain("no perfect matching")
    return {
        "status": outcome.status,
        "matching": _matching_payload(outcome.matching) if outcome.matching else None,
        "matchingWeight": str(outcome.weight) if outcome.weight is not None else None,
        "detBits": outcome.det_bits,
        "targetOrd2": outcome.target_ord2,
        "weights": _weights_payload(w),
        "verdicts": [
            {
                "edge": v.edge,
                "detZero": v.det_is_zero,
                "ord2": v.ord2,
                "selected": v.selected,
            }
            for v in outcome.verdicts
        ],
    }


def _cmd_isolate(args) -> dict:
    g = _load_graph(args.graph)
    if args.derandomized:
        cert = isolate_derandomized(g)
        return _certificate_payload(cert)
    result = isolate_randomized(g, args.seed, args.max_trials)
    if not isinstance(result, IsolationCertificate):
        raise _Domain("no perfect matching")
    return _certificate_payload(result)


def _cmd_weights(args) -> dict:
    m = args.edges if args.edges is not None else args.n * (args.n - 1) // 2
    if args.concat:
        ks = [int(x) for x in args.concat.split(",")]
        padding = args.n**args.padding_exponent
        w = family_member(ks[0], args.n, m)
        for k in ks[1:]:
            w = concatenate(w, family_member(k, args.n, m), padding)
        return {"n": args.n, "ks": ks, "paddingExponent": args.padding_exponent, **_weights_payload(w)}
    w = family_member(args.k, args.n, m)
    return {"n": args.n, "k": args.k, **_weights_payload(w)}


def _face_from_args(args, g: Graph):
    face = perfect_matching_face(g)
    if args.weights:
        for k in (int(x) for x in args.weights.split(",")):
            face = min_weight_subface(face, family_member(k, g.n, g.m))
    return face


def _cmd_face(args) -> dict:
    g = _load_graph(args.graph)
    face = _face_from_args(args, g)
    tight = tight_odd_sets(face, g)
    fam = extend_to_maximal_laminar(singletons(g.n), tight)
    return {
        "matchings": [_matching_payload(mm) for mm in face.matchings],
        "support": sorted(face_support(face)),
        "tightSets": [sorted(s) for s in tight],
        "laminar": [sorted(s) for s in fam.sets],
    }


def _cmd_goodness(args) -> dict:
    g = _load_graph(args.graph)
    face = _face_from_args(args, g)
    fam = extend_to_maximal_laminar(singletons(g.n), tight_odd_sets(face, g))
    report = goodness_check(face, fam, getattr(args, "lambda"), g)
    witness = report.witness
    if isinstance(witness, frozenset):
        witness_payload = sorted(witness)
    elif isinstance(witness, tuple):
        witness_payload = list(witness)
    else:
        witness_payload = witness
    return {"good": report.ok, "failed": report.failed, "witness": witness_payload}


def _cmd_bench(args) -> dict:
    import random as _random

    rng = _random.Random(args.seed)
    n = args.n
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5]
    from .graphs import graph_from_edges

    g = graph_from_edges(n, pairs)
    w = random_weights(g, args.seed)
    det = determinant(build_tutte_matrix(g, w), "exact")
    return {"n": n, "edges": g.m, "detBits": det.value.bit_length()}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchiso")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("decide", help="randomized perfect-matching existence test")
    p.add_argument("--graph", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("search", help="determinant-digit search for the isolated matching")
    p.add_argument("--graph", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--random-weights", action="store_true")
    group.add_argument("--weights", help="comma-separated weight per edge id")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("isolate", help="produce an isolation certificate")
    p.add_argument("--graph", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--randomized", action="store_true")
    group.add_argument("--derandomized", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-trials", type=int, default=64)

    p = sub.add_parser("weights", help="dump oblivious family members")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--concat", help="comma-separated family indices to concatenate")
    p.add_argument("--edges", type=int)
    p.add_argument("--padding-exponent", type=int, default=21)

    p = sub.add_parser("face", help="matchings, support, tight sets, laminar family")
    p.add_argument("--graph", required=True)
    p.add_argument("--weights", help="comma-separated family indices minimized in order")

    p = sub.add_parser("goodness", help="progress predicate for the face-laminar pair")
    p.add_argument("--graph", required=True)
    p.add_argument("--lambda", type=int, required=True)
    p.add_argument("--weights", help="comma-separated family indices minimized in order")

    p = sub.add_parser("bench", help="time a seeded determinant workload")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    return parser


_DISPATCH = {
    "decide": _cmd_decide,
    "search": _cmd_search,
    "isolate": _cmd_isolate,
    "weights": _cmd_weights,
    "face": _cmd_face,
    "goodness": _cmd_goodness,
    "bench": _cmd_bench,
}

_SEEDED = {"decide", "search", "isolate", "bench"}


def emit_report(verb: str, result: dict, ms: int, seed: int | None, pretty: bool) -> str:
    report: dict = {"verb": verb, "result": result, "ms": ms}
    if seed is not None:
        report["seed"] = seed
    if pretty:
        return json.dumps(report, indent=2)
    return json.dumps(report, separators=(",", ":"))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    seed = getattr(args, "seed", None)
    if args.verb in ("decide", "bench") and seed is None:
        print("error: --seed is required", file=sys.stderr)
        return EXIT_PARSE
    if args.verb == "search" and args.random_weights and seed is None:
        print("error: --seed is required with --random-weights", file=sys.stderr)
        return EXIT_PARSE
    if args.verb == "isolate" and args.randomized and seed is None:
        print("error: --seed is required with --randomized", file=sys.stderr)
        return EXIT_PARSE
    started = time.monotonic()
    try:
        result = _DISPATCH[args.verb](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    except (_Domain, NoPerfectMatchingError, TrialsExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (EngineError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    ms = int((time.monotonic() - started) * 1000)
    echo_seed = seed if args.verb in _SEEDED else None
    print(emit_report(args.verb, result, ms, echo_seed, args.pretty))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
