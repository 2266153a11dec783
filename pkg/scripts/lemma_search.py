"""Randomised checks of the path-surgery and triangle-tail lemmas.

Samples valid configurations, runs the surgeries / validators, and reports
how many samples exercised each interesting branch.
"""

import argparse

from spgallai.corpus import GenSpec, SplitMix64, generate
from spgallai.graph import is_path
from spgallai.harness import sample_triangle_tails, sample_two_tails
from spgallai.oracle import enumerate_longest_paths
from spgallai.prooftrace import both_longest_search, surgery_two_tails, validate_triangle_tails


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--graphs", type=int, default=300, help="graphs for the both-longest search")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    rng = SplitMix64(args.seed)

    gains = []
    for _ in range(args.samples):
        c = sample_two_tails(rng)
        q1, q2 = surgery_two_tails(c["p1"], c["r1"], c["p2"], c["r2"], c["conn"], c["g"])
        assert is_path(c["g"], q1) and is_path(c["g"], q2)
        gains.append(len(q1) + len(q2) - len(c["p1"]) - len(c["p2"]))
    print(f"two tails: {len(gains)} samples, min gain {min(gains)}, mean gain {sum(gains) / len(gains):.2f}")

    found = 0
    for i in range(args.graphs):
        g = generate(GenSpec("series_parallel", 2 + i % 11, rng.next_u64(), 0.3))
        found += len(both_longest_search(g, enumerate_longest_paths(g)))
    print(f"both-longest search: {args.graphs} graphs, {found} surgery configurations found")

    pairs = sides = 0
    for _ in range(args.samples):
        c = sample_triangle_tails(rng)
        rep = validate_triangle_tails(c["emb"], c["g"], c["triangle"], *c["tails"], side_paths=c["side"])
        pairs += len(rep.intersecting)
        sides += rep.side_check is True
    print(f"triangle tails: {args.samples} samples, {pairs} with one intersecting pair, {sides} side-path checks, 0 violations")


if __name__ == "__main__":
    main()
