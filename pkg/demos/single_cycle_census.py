"""Census of a single special cycle with a valuation-1 vector.

Loads the problem file problems/p3_n3_r1.json, computes the support complex
on a radius-2 window, cross-checks it against the brute-force membership
filter, and then counts how the type-1 faces of each top-dimensional support
vertex sit relative to the cycle: 4 of the 28 faces have every component
above them inside the cycle, the other 24 have exactly one.
"""

import os

from btcycles import building as bd
from btcycles.algorithm import run_multi
from btcycles.cli import load_problem
from btcycles.cycles import in_cycle
from btcycles.oracle import oracle_support

PROBLEM = os.path.join(os.path.dirname(__file__), os.pardir, "problems",
                       "p3_n3_r1.json")


def main():
    prob = load_problem(PROBLEM)
    st = prob["st"]
    print("p = %d, n = %d, r = %s" % (st.ctx.p, st.space.n, st.r))

    window = bd.ball(prob["seed"], prob["radius"], cap=prob["cap"])
    support, info = run_multi(st, window_radius=prob["radius"],
                              top_radius=prob["top_radius"],
                              cap=prob["cap"], window=window,
                              force_top=prob["force_top"])
    oracle = oracle_support(st, window)
    keys = {v.key for v in support.vertices()}
    print("window size %d, support in window %d, oracle agrees: %s"
          % (len(window), len(keys), keys == set(oracle.sorted_keys())))

    tmax = st.space.max_type
    for v in support.vertices():
        if v.type != tmax:
            continue
        subs = bd.neighbors_below(v, 1)
        n_all = n_one = 0
        for g in subs:
            above = bd.neighbors_above(g, tmax)
            inside = sum(1 for w in above if in_cycle(w, st))
            if inside == len(above):
                n_all += 1
            elif inside == 1:
                n_one += 1
        print("top vertex: %d faces, %d with all components above in the "
              "cycle, %d with exactly one" % (len(subs), n_all, n_one))


if __name__ == "__main__":
    main()
