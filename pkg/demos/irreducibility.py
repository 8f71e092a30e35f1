"""When is a full intersection of special cycles irreducible?

For m = n vectors the support complex is finite and can be computed in one
shot, with no window. The intersection has a unique maximal vertex exactly
when the valuation profile satisfies max(n+_even, n+_odd) <= 1, where n+_even
counts even valuations r_i >= 2 and n+_odd counts odd valuations r_i >= 3.
This script computes both sides for each m = n fixture and compares.
"""

import glob
import os

from btcycles.algorithm import run_multi
from btcycles.cli import load_problem
from btcycles.cycles import irreducibility_criterion

PROBLEM_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "problems")


def unique_maximal(support):
    verts = support.vertices()
    maximal = [v for v in verts
               if not any(w.key != v.key and w.lattice.contains(v.lattice)
                          for w in verts)]
    return len(maximal) == 1


def main():
    for path in sorted(glob.glob(os.path.join(PROBLEM_DIR, "*_mn_*.json"))):
        prob = load_problem(path)
        st = prob["st"]
        support, info = run_multi(st, cap=prob["cap"])
        computed = unique_maximal(support)
        predicted = irreducibility_criterion(st)
        print("%-22s r=%s support=%3d unique-maximal=%-5s criterion=%-5s %s"
              % (os.path.basename(path), st.r, len(support), computed,
                 predicted, "ok" if computed == predicted else "MISMATCH"))


if __name__ == "__main__":
    main()
