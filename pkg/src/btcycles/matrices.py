"""Exact linear algebra over Q(sqrt(eps)) and over its valuation ring O.

Matrices are lists of rows of ExtScalar.  Basis matrices keep basis vectors
as columns.  The ring-level routines (column echelon form, Smith normal form,
integral kernels) all pivot on minimal-valuation entries so that every
transformation stays unimodular over O.
"""

from fractions import Fraction

from .errors import RankDeficient, NotInSpan
from .scalars import ExtScalar, INF


def zeros(ctx, n, m):
    z = ctx.zero
    return [[z] * m for _ in range(n)]

def eye(ctx, n):
    m = zeros(ctx, n, n)
    for i in range(n):
        m[i][i] = ctx.one
    return m

def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    ctx = A[0][0].ctx if A and A[0] else (B[0][0].ctx if B and B[0] else None)
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                a = Ai[t]
                if not a:
                    continue
                b = B[t][j]
                if not b:
                    continue
                acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else ctx.zero)
        out.append(row)
    return out

def mat_vec(A, v):
    return [r[0] for r in mat_mul(A, [[x] for x in v])]

def transpose(A):
    return [list(r) for r in zip(*A)]

def conj_transpose(A):
    return [[x.conj() for x in r] for r in zip(*A)]

def mat_scale_p(A, k):
    """Multiply every entry by p^k."""
    return [[x.shifted(k) for x in row] for row in A]

def mat_eq(A, B):
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb))
        for ra, rb in zip(A, B))

def columns(A):
    return [list(c) for c in zip(*A)] if A else []

def from_columns(cols, nrows=None):
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return [list(r) for r in zip(*cols)]


def solve(A, B):
    """Solve A X = B for square nonsingular A; raises RankDeficient."""
    n = len(A)
    if n == 0:
        return []
    m = len(B[0])
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for i in range(n):
        piv = None
        for k in range(i, n):
            if M[k][i]:
                piv = k
                break
        if piv is None:
            raise RankDeficient("singular matrix in solve")
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
        inv = M[i][i]
        M[i] = [x / inv for x in M[i]]
        for k in range(n):
            if k == i or not M[k][i]:
                continue
            f = M[k][i]
            Mi = M[i]
            M[k] = [x - f * y for x, y in zip(M[k], Mi)]
    return [row[n:n + m] for row in M]

def inverse(A):
    n = len(A)
    ctx = A[0][0].ctx if n else None
    return solve(A, eye(ctx, n)) if n else []

def solve_in_span(B, V):
    """Coordinates X with B X = V for an n x k matrix B of full column rank.

    V is n x m.  Raises NotInSpan when some column of V leaves the span.
    """
    n = len(B)
    k = len(B[0]) if n else 0
    m = len(V[0]) if V and V[0] is not None else 0
    if k == 0:
        for row in V:
            if any(row):
                raise NotInSpan("nonzero vector, zero-rank lattice")
        return []
    M = [list(B[i]) + list(V[i]) for i in range(n)]
    pivots = []
    r = 0
    for j in range(k):
        piv = None
        for i in range(r, n):
            if M[i][j]:
                piv = i
                break
        if piv is None:
            raise RankDeficient("dependent columns in solve_in_span")
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        inv = M[r][j]
        M[r] = [x / inv for x in M[r]]
        for i in range(n):
            if i == r or not M[i][j]:
                continue
            f = M[i][j]
            Mr = M[r]
            M[i] = [x - f * y for x, y in zip(M[i], Mr)]
        pivots.append(r)
        r += 1
    # consistency: rows below rank must vanish on the V block
    for i in range(r, n):
        if any(M[i][k:]):
            raise NotInSpan("vector outside lattice span")
    return [M[i][k:k + m] for i in range(r)]

def right_kernel(A):
    """Basis (as columns) of the right kernel of A over the field."""
    if not A:
        return []
    n, m = len(A), len(A[0])
    ctx = A[0][0].ctx if A[0] else None
    M = [list(r) for r in A]
    pivots = {}
    r = 0
    for j in range(m):
        piv = None
        for i in range(r, n):
            if M[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        inv = M[r][j]
        M[r] = [x / inv for x in M[r]]
        for i in range(n):
            if i == r or not M[i][j]:
                continue
            f = M[i][j]
            Mr = M[r]
            M[i] = [x - f * y for x, y in zip(M[i], Mr)]
        pivots[j] = r
        r += 1
    free = [j for j in range(m) if j not in pivots]
    cols = []
    for j in free:
        v = [ctx.zero] * m
        v[j] = ctx.one
        for pj, pr in pivots.items():
            v[pj] = -M[pr][j]
        cols.append(v)
    return cols


def _mod_ppow(q, pe):
    """Canonical representative of a rational with unit denominator mod p^e."""
    den = q.denominator
    if pe == 1:
        return 0
    return q.numerator * pow(den, -1, pe) % pe

def reduce_mod_power(s, e):
    """Representative of s mod p^e*O with components in [0, p^e); e >= 0."""
    ctx = s.ctx
    if e <= 0:
        return ctx.zero
    pe = ctx.p ** e
    return ExtScalar(ctx, Fraction(_mod_ppow(s.a, pe)), Fraction(_mod_ppow(s.b, pe)))


def hnf_columns(M, drop_dependent=False):
    """Canonical column echelon form over O of an integral matrix M (n x k).

    Pivots are powers of p, entries left of a pivot are the canonical
    representatives mod that power, entries right of a pivot vanish.  The
    result depends only on the O-span of the columns.  Dependent columns
    raise RankDeficient unless drop_dependent is set, in which case they are
    discarded.
    """
    if not M:
        return []
    n, k = len(M), len(M[0])
    if k == 0:
        return [[] for _ in range(n)]
    ctx = M[0][0].ctx
    C = [list(c) for c in zip(*M)]  # work on columns
    col = 0
    for row in range(n):
        best, bestval = None, INF
        for j in range(col, k):
            x = C[j][row]
            if x:
                v = x.valuation()
                if v < bestval:
                    best, bestval = j, v
        if best is None:
            continue
        if best != col:
            C[col], C[best] = C[best], C[col]
        e = bestval
        unit = C[col][row].shifted(-e)  # pivot / p^e, a unit of O
        C[col] = [x / unit for x in C[col]]
        for j in range(col + 1, k):
            x = C[j][row]
            if x:
                q = x.shifted(-e)
                Cc = C[col]
                C[j] = [y - q * z for y, z in zip(C[j], Cc)]
        for j in range(col):
            x = C[j][row]
            rep = reduce_mod_power(x, e)
            diff = x - rep
            if diff:
                q = diff.shifted(-e)
                Cc = C[col]
                C[j] = [y - q * z for y, z in zip(C[j], Cc)]
        col += 1
        if col == k:
            break
    if col < k:
        if not drop_dependent:
            raise RankDeficient("columns are dependent over O")
        C = C[:col]
    return from_columns(C, n)


def smith(M):
    """Smith normal form over O with transforms.

    Returns (exps, P, Q) with P M Q = diag(p^e for e in exps, padded by
    zeros), P and Q unimodular over O, exps weakly increasing.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    ctx = M[0][0].ctx if n and m else None
    A = [list(r) for r in M]
    P = eye(ctx, n) if ctx else []
    Q = eye(ctx, m) if ctx else []
    exps = []
    k = 0
    while k < min(n, m):
        bi = bj = None
        bv = INF
        for i in range(k, n):
            Ai = A[i]
            for j in range(k, m):
                x = Ai[j]
                if x:
                    v = x.valuation()
                    if v < bv:
                        bi, bj, bv = i, j, v
        if bi is None:
            break
        if bi != k:
            A[k], A[bi] = A[bi], A[k]
            P[k], P[bi] = P[bi], P[k]
        if bj != k:
            for row in A:
                row[k], row[bj] = row[bj], row[k]
            for row in Q:
                row[k], row[bj] = row[bj], row[k]
        e = bv
        unit = A[k][k].shifted(-e)
        A[k] = [x / unit for x in A[k]]
        P[k] = [x / unit for x in P[k]]
        for i in range(n):
            if i == k or not A[i][k]:
                continue
            q = A[i][k].shifted(-e)
            Ak, Pk = A[k], P[k]
            A[i] = [x - q * y for x, y in zip(A[i], Ak)]
            P[i] = [x - q * y for x, y in zip(P[i], Pk)]
        for j in range(m):
            if j == k:
                continue
            x = A[k][j]
            if not x:
                continue
            q = x.shifted(-e)
            for row in A:
                row[j] = row[j] - q * row[k]
            for row in Q:
                row[j] = row[j] - q * row[k]
        exps.append(e)
        k += 1
    return exps, P, Q


def kernel_over_ring(M):
    """O-basis (as columns) of {v in O^m : M v = 0}; M may be non-integral."""
    if not M or not M[0]:
        return []
    m = len(M[0])
    shift = 0
    vmin = min((x.valuation() for row in M for x in row if x), default=INF)
    if vmin is INF:
        # zero map: kernel is all of O^m
        ctx = M[0][0].ctx
        return columns(eye(ctx, m))
    A = mat_scale_p(M, -vmin) if vmin else M
    exps, P, Q = smith(A)
    r = len(exps)
    return [[Q[i][j] for i in range(m)] for j in range(r, m)]
