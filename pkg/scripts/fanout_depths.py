"""Fanout depth versus qubit count for several connectivities.

Compares the GHZ-derived fanout against the line ladder, and checks every
circuit with the tableau oracle (plus the dense oracle when small enough).

    python scripts/fanout_depths.py --max-n 64
"""

import argparse
import math

from fanout_forge.fanout import build_fanout_from_ghz, build_ladder_fanout, verify_fanout
from fanout_forge.ghz import best_root, build_doubling_ghz, schedule_ghz
from fanout_forge.topology import grid, line

DENSE_LIMIT = 12


def verdict(circ, root):
    mode = "dense" if circ.n <= DENSE_LIMIT else "tableau"
    return mode, verify_fanout(circ, root, mode).passed


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=64)
    args = parser.parse_args()

    print("all-to-all, doubling construction")
    print(f"{'n':>5} {'L':>3} {'depth':>5} {'2L-1':>5} {'gates':>6} check")
    n = 2
    while n <= args.max_n:
        plan = build_doubling_ghz(n)
        fo = build_fanout_from_ghz(plan)
        mode, ok = verdict(fo, 0)
        print(f"{n:>5} {plan.depth:>3} {fo.depth():>5} {max(1, 2 * plan.depth - 1):>5} {len(fo):>6} {mode}:{ok}")
        n *= 2

    print("\nline, ladder vs GHZ-derived from the centre")
    print(f"{'n':>5} {'ladder':>6} {'ghz':>5}")
    for n in range(2, min(args.max_n, 24) + 1, 2):
        ladder = build_ladder_fanout(n)
        root, _ = best_root(line(n))
        fo = build_fanout_from_ghz(schedule_ghz(line(n), root))
        assert verdict(ladder, 0)[1] and verdict(fo, root)[1]
        print(f"{n:>5} {ladder.depth():>6} {fo.depth():>5}")

    print("\nsquare grids")
    print(f"{'side':>5} {'n':>5} {'root':>5} {'L':>3} {'depth':>5}")
    for side in range(2, int(math.isqrt(args.max_n)) + 1):
        g = grid([side, side])
        root, _ = best_root(g)
        plan = schedule_ghz(g, root)
        fo = build_fanout_from_ghz(plan)
        assert verdict(fo, root)[1]
        print(f"{side:>5} {g.n:>5} {root:>5} {plan.depth:>3} {fo.depth():>5}")


if __name__ == "__main__":
    main()
