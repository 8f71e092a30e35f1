"""Walk around the vertex complex of a small hermitian space.

Builds the rank-3 space diag(1, 1, 3) over Q_9, finds its canonical type-1
vertex, and explores neighbors, balls, and the isotropic-line counts that
drive the neighbor enumeration.
"""

from btcycles import matrices as mx
from btcycles.building import (FiniteHermSpace, ball, isotropic_subspaces,
                               neighbors_above, neighbors_below)
from btcycles.lattices import HermSpace, Vertex, canonicalize
from btcycles.scalars import PadicContext


def diag_space(ctx, *vals):
    g = [[ctx.scalar(vals[i]) if i == j else ctx.zero
          for j in range(len(vals))] for i in range(len(vals))]
    return HermSpace(ctx, g)


def main():
    ctx = PadicContext(3)
    sp = diag_space(ctx, 1, 1, 3)
    print("space: diag(1, 1, 3) over Q_%d^2" % ctx.p)
    print("determinant valuation %d, max vertex type %d"
          % (sp.det_val, sp.max_type))

    # span(e1, e2, p^-1 e3) is the canonical type-1 vertex
    cols = mx.columns(mx.eye(ctx, 3))
    cols[2] = [c.shifted(-1) for c in cols[2]]
    seed = Vertex.from_lattice(canonicalize(sp, mx.from_columns(cols, 3)))
    print("seed vertex type:", seed.type)

    above = neighbors_above(seed, 3)
    print("type-3 vertices above the seed:", len(above))
    below = neighbors_below(above[0], 1)
    print("type-1 vertices below one of them:", len(below))

    for radius in (0, 1, 2):
        print("ball of radius %d around the seed: %d vertices"
              % (radius, len(ball(seed, radius))))

    # the counts above come from isotropic lines in residue quotients
    one, zero = ctx.fq_one, ctx.fq_zero
    for d in (2, 3):
        g = [[one if i == j else zero for j in range(d)] for i in range(d)]
        V = FiniteHermSpace(ctx, g)
        print("isotropic lines in the %d-dim residue space: %d"
              % (d, len(isotropic_subspaces(V, 1))))


if __name__ == "__main__":
    main()
