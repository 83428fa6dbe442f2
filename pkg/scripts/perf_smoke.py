"""Time the class pipelines on large seeded instances.

    python3 scripts/perf_smoke.py --n 200 --seeds 1 2 3
"""

import argparse
import time

from mwistruct.graph import WeightedGraph
from mwistruct.lab.generators import glue_blocks, modular_blowup, random_weights
from mwistruct.patterns import in_class
from mwistruct.pipeline import solve

BUILDERS = {
    "hole-dart-free": glue_blocks,
    "odd-hole-dart-free": glue_blocks,
    "hole-bull-free": modular_blowup,
    "odd-hole-bull-free": modular_blowup,
    "p5-bull-free": modular_blowup,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seeds", type=int, nargs="+", default=[2026])
    ap.add_argument("--classes", nargs="+", default=list(BUILDERS))
    args = ap.parse_args()
    print(f"{'class':20} {'seed':>6} {'m':>6} {'secs':>7} {'max base':>8} {'max atom':>8} {'max prime':>9} value")
    for spec in args.classes:
        for seed in args.seeds:
            g = BUILDERS[spec](spec, args.n, seed)
            if not in_class(g, spec):
                print(f"{spec:20} {seed:>6} generated graph left the class; skipped")
                continue
            wg = WeightedGraph(g, random_weights(g.n, seed))
            start = time.perf_counter()
            rep = solve(wg, spec)
            secs = time.perf_counter() - start
            print(
                f"{spec:20} {seed:>6} {g.m:>6} {secs:>7.2f} {rep.reduction_stats['max_base_size']:>8} "
                f"{rep.atom_stats['max_atom_size']:>8} {rep.md_stats['max_prime_quotient']:>9} {rep.solution.value}"
            )


if __name__ == "__main__":
    main()
