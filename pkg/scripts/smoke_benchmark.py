"""Time the beta pipeline and the solver on growing random instances."""

import argparse
import random
import time

from pointwidth.beta import build_beta_pd
from pointwidth.generators import random_beta_acyclic, random_instance
from pointwidth.solver import solve


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", default="6,12,24,48")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--domain", type=int, default=3)
    args = p.parse_args()

    rng = random.Random(args.seed)
    print("vertices  edges  build_s  solve_s")
    for n in (int(x) for x in args.sizes.split(",")):
        for _ in range(args.repeats):
            h = random_beta_acyclic(rng, n, n)
            while len(h.vertices) < 0.8 * n:
                h = random_beta_acyclic(rng, n, n)
            inst = random_instance(rng, h, args.domain)
            t0 = time.perf_counter()
            pd = build_beta_pd(h)
            t1 = time.perf_counter()
            solve(inst, pd, check=False)
            t2 = time.perf_counter()
            print(f"{len(h.vertices):8d}  {len(h):5d}  {t1 - t0:7.3f}  {t2 - t1:7.3f}")


if __name__ == "__main__":
    main()
