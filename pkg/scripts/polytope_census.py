#!/usr/bin/env python3
"""Census of small ordered parity polytopes.

For every shape up to a size cap, count vertices, flow-network arcs, and
outer-description rows, and cross-check that three independent membership
routes (separation oracle, flow LP, convex-hull LP) agree on a batch of
random points.

    python scripts/polytope_census.py --max-n 6 --points 50
"""
import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from orderedparity.core import GroupShape, GroupedPoint, ParityClass  # noqa: E402
from orderedparity.exactlp import enumerate_points, hull_membership  # noqa: E402
from orderedparity.extflow import build_network, membership_lp  # noqa: E402
from orderedparity.separation import outer_description, separate  # noqa: E402


def shapes_up_to(max_n, max_k):
    out = []

    def rec(prefix, remaining):
        if prefix:
            out.append(GroupShape(tuple(prefix)))
        if len(prefix) == max_k:
            return
        for r in range(1, remaining + 1):
            rec(prefix + [r], remaining - r)

    rec([], max_n)
    return out


def random_box_point(rng, shape):
    entries = tuple(
        tuple(sorted((Fraction(rng.randint(0, 16), 16) for _ in range(r)),
                     reverse=True))
        for r in shape.groups)
    return GroupedPoint(shape, entries)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--max-k", type=int, default=3)
    parser.add_argument("--points", type=int, default=50,
                        help="random cross-check points per shape and parity")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    header = f"{'shape':>12} {'parity':>6} {'verts':>6} {'arcs':>5} {'rows':>5} {'member':>7} {'outside':>8}"
    print(header)
    print("-" * len(header))
    disagreements = 0
    for shape in shapes_up_to(args.max_n, args.max_k):
        for parity in (ParityClass.EVEN, ParityClass.ODD):
            verts = enumerate_points(shape, parity)
            net = build_network(shape, parity)
            rows = outer_description(shape, parity)
            flats = [v.flat() for v in verts]
            inside = outside = 0
            for _ in range(args.points):
                point = random_box_point(rng, shape)
                s = not separate(shape, parity, point).violated
                f = membership_lp(shape, parity, point)
                h = hull_membership(flats, point)
                if not (s == f == h):
                    disagreements += 1
                elif s:
                    inside += 1
                else:
                    outside += 1
            print(f"{str(shape):>12} {parity.value:>6} {len(verts):>6} "
                  f"{len(net.arcs):>5} {len(rows):>5} {inside:>7} {outside:>8}")
    print()
    if disagreements:
        print(f"!! {disagreements} oracle disagreements")
        sys.exit(1)
    print("all membership oracles agree on every sampled point")


if __name__ == "__main__":
    main()
