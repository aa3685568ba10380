"""List the hull vertices, face slopes and minimum for every mu-candidate of B_p,q."""

import argparse

from toricres import SurfaceSpec, mu_candidates
from toricres.wedge import gamma_hull, gamma_min


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("p", type=int)
    ap.add_argument("q", type=int)
    a = ap.parse_args()
    for m in sorted(mu_candidates(SurfaceSpec.bpq(a.p, a.q))):
        h = gamma_hull((m[0], m[2]), (a.p, a.q))
        g = gamma_min(h)
        slopes = " ".join(str(s) for s in h.slopes())
        where = "whole ray" if g.on_ray else str(g.point)
        print(f"mu={m}  vertices={list(h.vertices)}  slopes=[{slopes}]  min={g.value} at {where}")


if __name__ == "__main__":
    main()
