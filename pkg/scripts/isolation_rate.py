"""Empirical isolation rates: how often do uniform random weights in
{1..2m} isolate a unique minimum-weight perfect matching?

Usage:
    python scripts/isolation_rate.py --draws 2000 [--graph FILE ...]

Without --graph it runs the built-in panel of small graphs.
"""

import argparse
import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from matchiso import (  # noqa: E402
    enumerate_perfect_matchings,
    graph_from_edges,
    is_isolating,
    parse_graph,
    random_weights,
)


def builtin_panel():
    def cycle(n):
        return graph_from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])

    def complete(n):
        return graph_from_edges(n, itertools.combinations(range(1, n + 1), 2))

    return [
        ("C4", cycle(4)),
        ("C6", cycle(6)),
        ("C8", cycle(8)),
        ("K4", complete(4)),
        ("K6", complete(6)),
        ("K8", complete(8)),
        ("K33", graph_from_edges(6, [(u, v) for u in (1, 2, 3) for v in (4, 5, 6)])),
        ("prism", graph_from_edges(
            6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (1, 4), (2, 5), (3, 6)])),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--draws", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--graph", action="append", default=[])
    args = parser.parse_args()

    panel = []
    for path in args.graph:
        panel.append((path, parse_graph(Path(path).read_text())))
    if not panel:
        panel = builtin_panel()

    print(f"{'graph':>10} {'n':>3} {'m':>3} {'#PM':>5} {'isolating':>10}")
    for name, g in panel:
        pms = enumerate_perfect_matchings(g)
        if not pms:
            print(f"{name:>10} {g.n:>3} {g.m:>3} {'0':>5} {'(no PM)':>10}")
            continue
        hits = sum(
            1
            for s in range(args.seed, args.seed + args.draws)
            if is_isolating(g, random_weights(g, s))
        )
        print(f"{name:>10} {g.n:>3} {g.m:>3} {len(pms):>5} {hits / args.draws:>10.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
