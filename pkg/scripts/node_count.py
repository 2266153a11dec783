"""Measure nice-decomposition size per vertex and DP configuration counts."""

import argparse

from spgallai.corpus import FAMILIES, GenSpec, generate
from spgallai.dp import run_forward_dp
from spgallai.gallai import nice_decomposition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000, 10_000])
    ap.add_argument("--seeds", type=int, default=20)
    args = ap.parse_args()
    print(f"{'family':16s} {'n':>6s} {'max nodes/n':>12s} {'max configs':>12s}")
    for fam in FAMILIES[:5]:
        for n in args.sizes:
            ratio = configs = 0
            for seed in range(args.seeds):
                g = generate(GenSpec(fam, n, seed, 0.3))
                ntd = nice_decomposition(g)
                ratio = max(ratio, len(ntd) / n)
                if n <= 1000:
                    configs = max(configs, max(run_forward_dp(ntd, g).config_counts()))
            print(f"{fam:16s} {n:6d} {ratio:12.2f} {configs or '-':>12}")


if __name__ == "__main__":
    main()
