import pytest

from btcycles import building as bd
from btcycles import matrices as mx
from btcycles.building import (FiniteHermSpace, ball, downward_closure,
                               faces_below_generators, isotropic_subspaces,
                               neighbors_above, neighbors_below, rref_fq)
from btcycles.errors import IngestError
from btcycles.lattices import (HermSpace, Vertex, canonicalize, span_lattice,
                               vertex_type)
from btcycles.scalars import PadicContext

CTX = PadicContext(3)


def diag_space(ctx, *vals):
    g = [[ctx.scalar(vals[i]) if i == j else ctx.zero
          for j in range(len(vals))] for i in range(len(vals))]
    return HermSpace(ctx, g)


def fq_eye(ctx, d):
    return [[ctx.fq_one if i == j else ctx.fq_zero for j in range(d)]
            for i in range(d)]


def seed_of(sp, exps):
    cols = mx.columns(mx.eye(sp.ctx, sp.n))
    for i, e in enumerate(exps):
        cols[i] = [c.shifted(-e) for c in cols[i]]
    return Vertex.from_lattice(canonicalize(sp, mx.from_columns(cols, sp.n)))


@pytest.fixture(autouse=True)
def certify_everything(monkeypatch):
    """Unit tests re-certify every enumerated neighbor from scratch."""
    monkeypatch.setattr(bd, "CERTIFY_NEIGHBORS", True)


SP3 = diag_space(CTX, 1, 1, 3)
SEED3 = seed_of(SP3, (0, 0, 1))


def test_isotropic_line_counts():
    for p in (3, 5):
        ctx = PadicContext(p)
        V2 = FiniteHermSpace(ctx, fq_eye(ctx, 2))
        V3 = FiniteHermSpace(ctx, fq_eye(ctx, 3))
        assert len(isotropic_subspaces(V2, 1)) == p + 1
        assert len(isotropic_subspaces(V3, 1)) == p ** 3 + 1


def test_isotropic_subspaces_are_isotropic_and_distinct():
    V = FiniteHermSpace(CTX, fq_eye(CTX, 4))
    planes = isotropic_subspaces(V, 2)
    assert len(planes) == 112
    seen = set()
    for basis in planes:
        assert len(basis) == 2
        for u in basis:
            for w in basis:
                assert not V.h(u, w)
        seen.add(tuple(tuple((x.a, x.b) for x in row) for row in basis))
    assert len(seen) == 112


def test_isotropic_nonstandard_gram_matches_standard_count():
    # gram diag(1, 2, 2) is isometric to the identity, counts must agree
    two = CTX.fq(2)
    g = [[two if i == j else CTX.fq_zero for j in range(3)] for i in range(3)]
    g[0][0] = CTX.fq_one
    V = FiniteHermSpace(CTX, g)
    assert len(isotropic_subspaces(V, 1)) == 28


def test_neighbor_counts_dim3():
    # type-1 vertex in the odd dim-3 building: the above-quotient has
    # dimension 2 (4 isotropic lines), the below list is empty
    above = neighbors_above(SEED3, 3)
    assert len(above) == 4
    assert bd.below_types(SEED3) == []
    lam = above[0]
    below = neighbors_below(lam, 1)
    assert len(below) == 28
    assert SEED3.key in {v.key for v in below}


def test_neighbors_are_reciprocal():
    lam = neighbors_above(SEED3, 3)[1]
    for g in neighbors_below(lam, 1)[:6]:
        ups = neighbors_above(g, 3)
        assert lam.key in {w.key for w in ups}
        assert lam.lattice.contains(g.lattice)


def test_bad_target_types_rejected():
    with pytest.raises(IngestError):
        neighbors_above(SEED3, 2)
    with pytest.raises(IngestError):
        neighbors_below(SEED3, 3)


def test_ball_sizes_dim3():
    assert len(ball(SEED3, 0)) == 1
    assert len(ball(SEED3, 1)) == 5
    assert len(ball(SEED3, 2)) == 113
    b = ball(SEED3, 2)
    assert b.depth[SEED3.key] == 0
    assert max(b.depth.values()) == 2


def test_downward_closure_matches_faces():
    lam = neighbors_above(SEED3, 3)[0]
    closure = downward_closure([lam])
    faces = set()
    sp = lam.lattice.space
    dual_cols = lam.lattice.dual().basis_columns()
    for tt, us in faces_below_generators(lam):
        lat = span_lattice(sp, dual_cols + us)
        assert vertex_type(lat) == tt
        faces.add(lat.key)
    assert faces == set(closure) - {lam.key}


def test_edges_and_components():
    b = ball(SEED3, 1)
    edges = b.edges()
    # the seed is contained in each of its 4 above-neighbors
    assert len(edges) == 4
    assert len(b.components()) == 1


def test_json_dot_deterministic():
    b = ball(SEED3, 1)
    assert b.to_json_dict() == b.to_json_dict()
    dot = b.to_dot()
    assert dot.startswith("graph support {")
    assert dot.count("--") == 4
