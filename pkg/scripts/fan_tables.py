"""Print the Newton fan of each built-in family as a text table."""

import argparse

from toricres import SurfaceSpec
from toricres.io import fan_table
from toricres.newton import newton_fan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--n", type=int, default=6)
    a = ap.parse_args()
    for s in (SurfaceSpec.bpq(a.p, a.q), SurfaceSpec.e6(), SurfaceSpec.e7(), SurfaceSpec.dn(a.n)):
        print(f"== {s.name}")
        print(fan_table(newton_fan(s.equation)))


if __name__ == "__main__":
    main()
