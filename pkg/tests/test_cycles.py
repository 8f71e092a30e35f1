import pytest

from btcycles import matrices as mx
from btcycles.cycles import (SpecialTuple, KrStratum, cycle_dimension_type,
                             diagonalize_hermitian, fundamental_matrix,
                             in_cycle, irreducibility_criterion, kr_stratum,
                             kr_invariants_ok, splits_off, tuple_report)
from btcycles.errors import IngestError, NonIntegralT, SingularT
from btcycles.lattices import HermSpace, Vertex, canonicalize
from btcycles.scalars import PadicContext

CTX = PadicContext(3)


def diag_space(*vals):
    g = [[CTX.scalar(vals[i]) if i == j else CTX.zero
          for j in range(len(vals))] for i in range(len(vals))]
    return HermSpace(CTX, g)


SP = diag_space(1, 1, 3)


def unit_vec(sp, i, shift=0):
    v = [sp.ctx.zero] * sp.n
    v[i] = sp.ctx.one.shifted(shift)
    return v


def seed_of(sp, exps):
    cols = mx.columns(mx.eye(sp.ctx, sp.n))
    for i, e in enumerate(exps):
        cols[i] = [c.shifted(-e) for c in cols[i]]
    return Vertex.from_lattice(canonicalize(sp, mx.from_columns(cols, sp.n)))


def test_fundamental_matrix_hermitian():
    vs = [unit_vec(SP, 0), [CTX.one, CTX.scalar(1, 1), CTX.zero]]
    T = fundamental_matrix(SP, vs)
    for i in range(2):
        for j in range(2):
            assert T[i][j] == T[j][i].conj()


def test_diagonalize_off_diagonal_pivot():
    # T with zero diagonal and unit off-diagonal entries
    a = CTX.scalar(0, 1)
    T = [[CTX.zero, a], [a.conj(), CTX.zero]]
    g, diag = diagonalize_hermitian(T, CTX)
    assert diag[0].valuation() == 0
    # the congruence transform reproduces the diagonal
    gt = mx.transpose(g)
    gc = [[x.conj() for x in row] for row in g]
    D = mx.mat_mul(mx.mat_mul(gt, T), gc)
    for i in range(2):
        for j in range(2):
            want = diag[i] if i == j else CTX.zero
            assert D[i][j] == want


def test_special_tuple_validation():
    with pytest.raises(IngestError):
        SpecialTuple(SP, [])
    with pytest.raises(IngestError):
        SpecialTuple(SP, [[CTX.zero] * 3])
    with pytest.raises(NonIntegralT):
        SpecialTuple(SP, [unit_vec(SP, 0, -1)])
    with pytest.raises(SingularT):
        SpecialTuple(SP, [unit_vec(SP, 0), unit_vec(SP, 0)])


def test_r_values_sorted_and_complement():
    st = SpecialTuple(SP, [unit_vec(SP, 2), unit_vec(SP, 0)])
    assert st.r == [0, 1]
    cols, norms = st.complement_basis()
    assert len(cols) == 1
    # the complement is orthogonal to both diagonalized vectors
    for x in st.xd:
        assert not SP.h(x, cols[0])


def test_in_cycle_matches_dual_route():
    st = SpecialTuple(SP, [unit_vec(SP, 2)])
    from btcycles.building import neighbors_above
    seed = seed_of(SP, (0, 0, 1))
    for v in [seed] + neighbors_above(seed, 3):
        via_pairing = in_cycle(v, st)
        dual = v.lattice.dual()
        via_dual = all(dual.member(x) for x in st.xd)
        assert via_pairing == via_dual


def test_kr_stratum_on_seed():
    st = SpecialTuple(SP, [unit_vec(SP, 2)])  # r = 1
    seed = seed_of(SP, (0, 0, 1))
    s = kr_stratum(seed, st.xd[0])
    assert (s.a, s.b) == (1, 0)
    assert kr_invariants_ok(seed, st.xd[0], st.r[0])
    assert KrStratum(1, 0) == s


def test_splits_off_seed():
    st = SpecialTuple(SP, [unit_vec(SP, 2)])
    seed = seed_of(SP, (0, 0, 1))
    assert splits_off(seed, st.xd[0])


def test_cycle_dimension_type():
    st0 = SpecialTuple(SP, [unit_vec(SP, 0)])
    assert cycle_dimension_type(st0) == 1
    st1 = SpecialTuple(SP, [unit_vec(SP, 2)])
    assert cycle_dimension_type(st1) == 3


def test_irreducibility_criterion_table():
    sp2 = diag_space(1, 3)
    x1 = unit_vec(sp2, 0)
    x2 = unit_vec(sp2, 1)
    st = SpecialTuple(sp2, [x1, x2])  # r = (0, 1)
    assert irreducibility_criterion(st)
    rep = tuple_report(st)
    assert rep["irreducible"] is True
    assert rep["r"] == [0, 1]
    # m != n is rejected
    with pytest.raises(IngestError):
        irreducibility_criterion(SpecialTuple(SP, [unit_vec(SP, 0)]))
