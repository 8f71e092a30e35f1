from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from btcycles import matrices as mx
from btcycles.errors import NotInSpan, RankDeficient
from btcycles.scalars import PadicContext

CTX = PadicContext(3)

small_ints = st.integers(min_value=-27, max_value=27)
entries = st.builds(lambda a, b: CTX.scalar(a, b), small_ints, small_ints)

UNITS = [CTX.scalar(1), CTX.scalar(2), CTX.scalar(1, 1), CTX.scalar(2, 1),
         CTX.scalar(1, 2)]


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n),
                    min_size=n, max_size=n)


def unimodular(n):
    """Random unimodular matrix over O: unit diagonal, triangular factors."""
    def build(diag_idx, lower, upper):
        L = mx.eye(CTX, n)
        R = mx.eye(CTX, n)
        D = mx.eye(CTX, n)
        for i in range(n):
            D[i][i] = UNITS[diag_idx[i]]
            for j in range(n):
                if i > j:
                    L[i][j] = lower[i][j]
                elif i < j:
                    R[i][j] = upper[i][j]
        return mx.mat_mul(mx.mat_mul(L, D), R)
    idx = st.lists(st.integers(min_value=0, max_value=len(UNITS) - 1),
                   min_size=n, max_size=n)
    return st.builds(build, idx, square(n), square(n))


def full_rank(n):
    """U1 * diag(p^e) * U2 is always invertible."""
    def build(u1, exps, u2):
        D = mx.eye(CTX, n)
        for i in range(n):
            D[i][i] = CTX.one.shifted(exps[i])
        return mx.mat_mul(mx.mat_mul(u1, D), u2)
    exps = st.lists(st.integers(min_value=0, max_value=2),
                    min_size=n, max_size=n)
    return st.builds(build, unimodular(n), exps, unimodular(n))


def is_integral(M):
    return all(x.is_integral() for row in M for x in row)


@settings(max_examples=40, deadline=None)
@given(M=full_rank(3))
def test_inverse(M):
    Minv = mx.inverse(M)
    assert mx.mat_eq(mx.mat_mul(M, Minv), mx.eye(CTX, 3))


@settings(max_examples=40, deadline=None)
@given(M=full_rank(3), U=unimodular(3))
def test_hnf_unique_up_to_unimodular(M, U):
    H1 = mx.hnf_columns(M)
    H2 = mx.hnf_columns(mx.mat_mul(M, U))
    assert mx.mat_eq(H1, H2)


@settings(max_examples=40, deadline=None)
@given(M=square(3))
def test_smith_factorization(M):
    try:
        exps, P, Q = mx.smith(M)
    except RankDeficient:
        return
    n = len(M)
    assert is_integral(P) and is_integral(Q)
    assert is_integral(mx.inverse(P)) and is_integral(mx.inverse(Q))
    D = mx.mat_mul(mx.mat_mul(P, M), Q)
    want = mx.eye(CTX, n)
    for i in range(n):
        want[i][i] = CTX.one.shifted(exps[i]) if i < len(exps) else CTX.zero
    assert mx.mat_eq(D, want)
    assert exps == sorted(exps)


@settings(max_examples=40, deadline=None)
@given(M=square(3))
def test_right_kernel(M):
    ker = mx.right_kernel(M)
    for v in ker:
        prod = mx.mat_vec(M, v)
        assert all(not x for x in prod)
    # rank-nullity on the 3x3 input
    H = mx.hnf_columns(M, drop_dependent=True)
    rank = len(H[0]) if H and H[0] else 0
    assert len(ker) == 3 - rank


@settings(max_examples=40, deadline=None)
@given(M=square(3))
def test_kernel_over_ring(M):
    ker = mx.kernel_over_ring(M)
    for v in ker:
        assert all(x.is_integral() for x in v)
        prod = mx.mat_vec(M, v)
        assert all(not x for x in prod)


def test_solve_in_span_rejects_outside():
    B = mx.from_columns([[CTX.one, CTX.zero, CTX.zero],
                         [CTX.zero, CTX.one, CTX.zero]], 3)
    with pytest.raises(NotInSpan):
        mx.solve_in_span(B, [[CTX.zero], [CTX.zero], [CTX.one]])


def test_hnf_worked_example():
    # columns (2,0) and (3,9): the first scales to (1,0), the second
    # reduces to (0,9); pivots are powers of p
    M = mx.from_columns([[CTX.scalar(2), CTX.scalar(0)],
                         [CTX.scalar(3), CTX.scalar(9)]], 2)
    H = mx.hnf_columns(M)
    assert mx.mat_eq(H, [[CTX.one, CTX.zero], [CTX.zero, CTX.scalar(9)]])
