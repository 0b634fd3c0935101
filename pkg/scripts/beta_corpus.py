"""Build and validate a point decomposition for every beta-acyclic class."""

import argparse
import time

from pointwidth.beta import build_beta_pd
from pointwidth.decomposition import validate_pd, width_of_pd
from pointwidth.generators import enumerate_beta_acyclic


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-vertices", type=int, default=5)
    args = p.parse_args()

    start = time.perf_counter()
    hs = enumerate_beta_acyclic(args.max_vertices)
    print(f"{len(hs)} classes enumerated in {time.perf_counter() - start:.1f}s")
    bad = 0
    by_n = {}
    for h in hs:
        pd = build_beta_pd(h)
        rep = validate_pd(h, pd, "exhaustive")
        ok = rep.ok and rep.complete and width_of_pd(h, pd) == 1 and len(pd.tree.nodes) == len(h.vertices) + 1
        bad += not ok
        by_n[len(h.vertices)] = by_n.get(len(h.vertices), 0) + 1
    for n in sorted(by_n):
        print(f"  n={n}: {by_n[n]} classes")
    print(f"failures: {bad}; total time {time.perf_counter() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
