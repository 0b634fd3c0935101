"""MIM-width of the path-like branch decomposition of H_n against its least coverwidth."""

import argparse
import time
from itertools import permutations

from pointwidth.mim import coverwidth_of_order, gen_hn, mim_width_of_branch


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=3, help="n = 4 means 8! orderings and takes minutes")
    args = p.parse_args()

    print("n  mimw(branch)  min coverwidth  seconds")
    for n in range(2, args.max_n + 1):
        start = time.perf_counter()
        fam = gen_hn(n)
        h = fam.hypergraph
        m = mim_width_of_branch(h, fam.branch)
        cache = {}
        cw = min(coverwidth_of_order(h, o, cache) for o in permutations(sorted(h.vertices)))
        print(f"{n}  {m:12d}  {cw:14d}  {time.perf_counter() - start:7.2f}")


if __name__ == "__main__":
    main()
