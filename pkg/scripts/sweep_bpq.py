"""Tabulate B_p,q resolutions: curve count, central weight, essential count."""

import argparse

from toricres import SurfaceSpec, essential_divisors
from toricres.verify import bpq_pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=20)
    ap.add_argument("--qmax", type=int, default=7)
    a = ap.parse_args()
    print("p   q   curves  centre  essential")
    for p, q in bpq_pairs(a.pmax, a.qmax):
        g = essential_divisors(SurfaceSpec.bpq(p, q))
        verts, _ = g.expanded()
        centre = "?" if g.nodes[0].weight is None else g.nodes[0].weight
        print(f"{p:<3} {q:<3} {len(verts):<7} {centre!s:<7} {sum(e for _, _, e in verts)}")


if __name__ == "__main__":
    main()
