"""Special vectors, their fundamental matrix, and cycle membership tests.

A tuple of special vectors x_1..x_m determines the cycle support
S(x) = {vertices L : every x_i lies in L^dual}.  The constructor
diagonalizes the fundamental matrix T = (h(x_i, x_j)) by a unimodular
change of the tuple (allowed: it preserves the O-span, hence S) and sorts
the diagonal valuations r_1 <= ... <= r_m.
"""

from fractions import Fraction

from . import matrices as mx
from .errors import IngestError, NonIntegralT, SingularT
from .lattices import lattice_in_subspace, span_lattice, sum_lattices
from .scalars import INF


def fundamental_matrix(space, vectors):
    """T with T[i][j] = h(x_i, x_j); hermitian by construction."""
    return [[space.h(v, w) for w in vectors] for v in vectors]


def diagonalize_hermitian(T, ctx):
    """Unimodular g over O with g^T T conj(g) diagonal; T integral hermitian
    nonsingular.  Returns (g, diag entries)."""
    m = len(T)
    A = [list(r) for r in T]
    g = mx.eye(ctx, m)

    def colop(j, i, c):
        # x_j <- x_j + c * x_i  (acts on A as congruence, on g as column op)
        for row in g:
            row[j] = row[j] + c * row[i]
        cc = c.conj()
        # h(x_r, x_j + c x_i) = T_rj + conj(c) T_ri, then the new row j
        for r in range(m):
            A[r][j] = A[r][j] + cc * A[r][i]
        for s in range(m):
            A[j][s] = A[j][s] + c * A[i][s]

    def colswap(i, j):
        for row in g:
            row[i], row[j] = row[j], row[i]
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        A[i], A[j] = A[j], A[i]

    for k in range(m):
        bi = bj = None
        bv = INF
        for i in range(k, m):
            for j in range(k, m):
                x = A[i][j]
                if x:
                    v = x.valuation()
                    if v < bv:
                        bi, bj, bv = i, j, v
        if bi is None:
            raise SingularT("fundamental matrix is singular")
        if bi != bj:
            # make the minimum appear on the diagonal: x_i += lam * x_j;
            # h(x_i+lam x_j) = T_ii + N(lam) T_jj + Tr(conj(lam) T_ij) and
            # some residue lambda avoids cancellation at level p^bv
            done = False
            for la in range(ctx.p):
                for lb in range(ctx.p):
                    if la == 0 and lb == 0:
                        continue
                    lam = ctx.scalar(la, lb)
                    cand = (A[bi][bi] + lam * lam.conj() * A[bj][bj]
                            + lam.conj() * A[bi][bj] + lam * A[bj][bi])
                    if cand.valuation() == bv:
                        colop(bi, bj, lam)
                        done = True
                        break
                if done:
                    break
            if not done:
                raise SingularT("diagonal pivot extraction failed")
        if bi != k:
            colswap(k, bi)
        piv = A[k][k]
        for j in range(k + 1, m):
            if A[k][j]:
                # clear h(x_k, x_j): x_j <- x_j - (h(x_j, x_k)/h(x_k,x_k)) x_k
                colop(j, k, -(A[j][k] / piv))
    return g, [A[i][i] for i in range(m)]


class SpecialTuple:
    """Validated special vectors with diagonalized fundamental data."""

    def __init__(self, space, vectors):
        if not vectors:
            raise IngestError("empty vector tuple")
        self.space = space
        self.ctx = space.ctx
        self.x = [list(v) for v in vectors]
        self.m = len(vectors)
        for i, v in enumerate(self.x):
            if len(v) != space.n:
                raise IngestError("vector %d has length %d, expected %d"
                                  % (i, len(v), space.n))
            if not any(v):
                raise IngestError("vector %d is zero" % i)
        self.T = fundamental_matrix(space, self.x)
        for i in range(self.m):
            for j in range(self.m):
                if self.T[i][j].valuation() < 0:
                    raise NonIntegralT(
                        "fundamental matrix entry (%d,%d) has negative "
                        "valuation" % (i, j))
        g, diag = diagonalize_hermitian(self.T, self.ctx)
        order = sorted(range(self.m), key=lambda i: diag[i].valuation())
        self.g = [[g[r][order[c]] for c in range(self.m)] for r in range(self.m)]
        self.diag = [diag[i] for i in order]
        self.r = [d.valuation() for d in self.diag]
        X = mx.from_columns([list(v) for v in self.x], space.n)
        self.xd = mx.columns(mx.mat_mul(X, self.g))  # diagonalized tuple
        self._complement = None

    def complement_basis(self):
        """Orthogonal basis of the orthocomplement of span(x), with norms."""
        if self._complement is None:
            self._complement = self._build_complement()
        return self._complement

    def _build_complement(self):
        sp = self.space
        d = sp.n - self.m
        if d == 0:
            return [], []
        # y is orthogonal to all x_i iff conj(y) kills the rows of X^T G
        X = mx.from_columns(self.xd, sp.n)
        rows = mx.mat_mul(mx.transpose(X), sp.gram)
        ker = mx.right_kernel(rows)
        ker = [[x.conj() for x in v] for v in ker]
        if len(ker) != d:
            raise SingularT("complement has wrong dimension")
        # orthogonalize: scale the restricted gram to integral entries and
        # reuse the hermitian diagonalization
        K = mx.from_columns(ker, sp.n)
        Gc = [[sp.h(a, b) for b in ker] for a in ker]
        vmin = min(x.valuation() for row in Gc for x in row if x)
        shift = max(0, -vmin)
        Gi = [[x.shifted(shift) for x in row] for row in Gc]
        g, diag = diagonalize_hermitian(Gi, self.ctx)
        cols = mx.columns(mx.mat_mul(K, g))
        norms = [d.shifted(-shift) for d in diag]
        return cols, norms

    def scaled_sub(self, drop_scale):
        """The tuple (p^-1 x) for recursion on a single vector of r >= 2."""
        assert self.m == 1
        x = [v.shifted(-drop_scale) for v in self.xd[0]]
        return SpecialTuple(self.space, [x])


def in_cycle(vertex, st):
    """Whether every special vector lies in the dual of the vertex lattice.

    x in L^dual means h(x, b) in O for every basis vector b, so no dual
    lattice needs to be computed.
    """
    sp = vertex.lattice.space
    cols = vertex.lattice.basis_columns()
    return all(sp.h(v, b).is_integral() for v in st.xd for b in cols)


class KrStratum:
    """The pair (a, b) locating a vertex relative to a single vector."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __eq__(self, other):
        return isinstance(other, KrStratum) and (self.a, self.b) == (other.a, other.b)

    def __repr__(self):
        return "KrStratum(a=%d, b=%d)" % (self.a, self.b)


def kr_stratum(vertex, x):
    """a = max{k : p^-k x in L}, b = max{k : p^-k x in L^dual}."""
    ca = vertex.lattice.coords_of(x)
    cb = vertex.lattice.dual().coords_of(x)
    a = min(c.valuation() for c in ca)
    b = min(c.valuation() for c in cb)
    return KrStratum(int(a), int(b))


def kr_invariants_ok(vertex, x, r):
    """The stratum constraints a-1 <= b <= a, a+b <= r, b >= 0 iff member."""
    s = kr_stratum(vertex, x)
    if not (s.a - 1 <= s.b <= s.a):
        return False
    if s.a + s.b > r:
        return False
    in_dual = vertex.lattice.dual().member(x)
    return (s.b >= 0) == in_dual


def splits_off(vertex, x):
    """Whether the vertex lattice decomposes as (L cap Kx) + (L cap x-perp)."""
    sp = vertex.lattice.space
    line = lattice_in_subspace(vertex.lattice, [x])
    w = mx.mat_vec(sp.gram, [c.conj() for c in x])
    perp_dirs = mx.right_kernel([w])
    perp = lattice_in_subspace(vertex.lattice, perp_dirs)
    return sum_lattices(line, perp) == vertex.lattice


def all_components_above_in_cycle(vertex, st):
    """Whether every max-type vertex above this one lies in the cycle."""
    from .building import neighbors_above
    tmax = st.space.max_type
    return all(in_cycle(w, st) for w in neighbors_above(vertex, tmax))


def cycle_dimension_type(st):
    """Largest odd t0 <= n - #{r_i = 0}; None when nothing is left."""
    m1 = sum(1 for r in st.r if r == 0)
    d = st.space.n - m1
    if d <= 0:
        return None
    return d if d % 2 else d - 1


def irreducibility_criterion(st):
    """For m = n: at most one x_i needs r_i >= 2 even or r_i >= 3 odd."""
    if st.m != st.space.n:
        raise IngestError("irreducibility criterion needs m = n")
    n_even = sum(1 for r in st.r if r >= 2 and r % 2 == 0)
    n_odd = sum(1 for r in st.r if r >= 3 and r % 2 == 1)
    return max(n_even, n_odd) <= 1


def tuple_report(st):
    """Diagnostic summary of the validated tuple."""
    rep = {
        "m": st.m,
        "n": st.space.n,
        "p": st.ctx.p,
        "r": list(st.r),
        "dimension_type": cycle_dimension_type(st),
    }
    if st.m == st.space.n:
        rep["irreducible"] = irreducibility_criterion(st)
    return rep
