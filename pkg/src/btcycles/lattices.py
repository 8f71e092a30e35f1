"""Hermitian spaces, O-lattices in canonical form, duals and vertex types.

A lattice is stored as p^(-shift) times an integral matrix in canonical
column echelon form, so equal lattices have equal representations and can be
hashed.  The hermitian form is h(v, w) = v^T G conj(w), linear in the first
slot.
"""

from fractions import Fraction

from . import matrices as mx
from .errors import IngestError, NotAVertex, NotContained, RankDeficient
from .scalars import INF, scalar_from_tuple, scalar_to_tuple


class HermSpace:
    """A nondegenerate hermitian space of dimension n over Q(sqrt(eps))."""

    def __init__(self, ctx, gram):
        self.ctx = ctx
        self.n = len(gram)
        for i in range(self.n):
            if len(gram[i]) != self.n:
                raise IngestError("gram matrix is not square")
            for j in range(self.n):
                if gram[i][j] != gram[j][i].conj():
                    raise IngestError("gram matrix is not hermitian at (%d,%d)"
                                      % (i, j))
        self.gram = [list(r) for r in gram]
        if self.n:
            try:
                self._gram_inv = mx.inverse(self.gram)
            except RankDeficient:
                raise IngestError("gram matrix is singular") from None
            self.det_val = _det_valuation(self.gram)
        else:
            self._gram_inv = []
            self.det_val = 0
        self.det_parity = self.det_val % 2
        # largest admissible vertex type: t <= n, t = det_val (mod 2)
        t = self.n
        if t % 2 != self.det_parity:
            t -= 1
        self.max_type = max(t, 0)
        # dual bases need (G^T)^{-1} = transpose of the inverse
        self._gram_inv_T = mx.transpose(self._gram_inv)

    def h(self, v, w):
        """Hermitian pairing of two coordinate vectors."""
        acc = self.ctx.zero
        for i in range(self.n):
            vi = v[i]
            if not vi:
                continue
            Gi = self.gram[i]
            for j in range(self.n):
                wj = w[j]
                if wj and Gi[j]:
                    acc = acc + vi * Gi[j] * wj.conj()
        return acc

    def __repr__(self):
        return "HermSpace(n=%d, p=%d)" % (self.n, self.ctx.p)


def _det_valuation(G):
    """Valuation of det(G) via fraction-free-ish elimination."""
    n = len(G)
    M = [list(r) for r in G]
    ctx = G[0][0].ctx
    val = 0
    for i in range(n):
        piv = None
        for k in range(i, n):
            if M[k][i]:
                piv = k
                break
        if piv is None:
            raise IngestError("gram matrix is singular")
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
        val += M[i][i].valuation()
        inv = M[i][i]
        for k in range(i + 1, n):
            if M[k][i]:
                f = M[k][i] / inv
                Mi = M[i]
                M[k] = [x - f * y for x, y in zip(M[k], Mi)]
    return val


class Lattice:
    """Free O-module of rank k inside an n-dimensional hermitian space."""

    __slots__ = ("space", "shift", "mat", "rank", "_key", "_inv", "_dual")

    def __init__(self, space, shift, canonical_mat, rank):
        self.space = space
        self.shift = shift
        self.mat = canonical_mat
        self.rank = rank
        self._key = (shift, tuple(
            tuple((x.a.numerator, x.a.denominator, x.b.numerator, x.b.denominator)
                  for x in row) for row in canonical_mat))
        self._inv = None
        self._dual = None

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def basis_columns(self):
        """Basis vectors (columns of p^(-shift) * mat) as lists of scalars."""
        if self.shift == 0:
            return mx.columns(self.mat)
        return mx.columns(mx.mat_scale_p(self.mat, -self.shift))

    def basis_matrix(self):
        if self.shift == 0:
            return [list(r) for r in self.mat]
        return mx.mat_scale_p(self.mat, -self.shift)

    def _mat_inv(self):
        if self._inv is None:
            self._inv = mx.inverse(self.mat)
        return self._inv

    def coords_matrix(self, other):
        """C with (basis of self) * C = basis of other; needs full rank."""
        if self.rank == self.space.n:
            C = mx.mat_mul(self._mat_inv(), other.mat)
            return mx.mat_scale_p(C, self.shift - other.shift)
        return mx.solve_in_span(self.basis_matrix(), other.basis_matrix())

    def coords_of(self, v):
        """Coordinates of a single vector in this basis; NotInSpan if outside."""
        if self.rank == self.space.n:
            c = mx.mat_vec(self._mat_inv(), v)
            return [x.shifted(self.shift) for x in c]
        return [r[0] for r in mx.solve_in_span(self.basis_matrix(), [[x] for x in v])]

    def member(self, v):
        """Whether v lies in the lattice (NotInSpan if outside the span)."""
        return all(x.is_integral() for x in self.coords_of(v))

    def contains(self, other):
        """Whether other is a sublattice of self (same span assumed full)."""
        try:
            C = self.coords_matrix(other)
        except Exception:
            return False
        return all(x.is_integral() for row in C for x in row)

    def scaled(self, k):
        """The lattice p^k * self."""
        return Lattice(self.space, self.shift - k, self.mat, self.rank)

    def dual(self):
        """Dual lattice {y : h(y, self) in O}; full rank only."""
        if self._dual is not None:
            return self._dual
        sp = self.space
        if self.rank != sp.n:
            raise RankDeficient("dual needs a full-rank lattice")
        if sp.n == 0:
            self._dual = self
            return self
        # basis of the dual: (conj(B)^T G^T)^{-1} = (G^T)^{-1} conj(B^{-1})^T
        # with B = p^(-shift) M this is p^(shift) (G^T)^{-1} conj(M^{-1})^T
        binv_ct = mx.conj_transpose(self._mat_inv())
        D = mx.mat_mul(sp._gram_inv_T, binv_ct)
        self._dual = canonicalize(sp, mx.mat_scale_p(D, self.shift))
        return self._dual

    def serialize(self):
        return {"shift": self.shift,
                "columns": [[scalar_to_tuple(x) for x in col]
                            for col in mx.columns(self.mat)]}

    def __repr__(self):
        return "Lattice(rank=%d, shift=%d)" % (self.rank, self.shift)


def lattice_from_dict(space, d):
    try:
        shift = int(d["shift"])
        cols = [[scalar_from_tuple(space.ctx, t) for t in col]
                for col in d["columns"]]
    except (KeyError, TypeError) as e:
        raise IngestError("bad lattice object: %s" % e) from None
    B = mx.from_columns(cols, space.n)
    return canonicalize(space, mx.mat_scale_p(B, -shift))


def canonicalize(space, B):
    """Canonical Lattice spanned by the columns of B; RankDeficient if
    the columns are dependent."""
    return _span(space, B, strict=True)


def span_lattice(space, cols):
    """Lattice spanned by the given vectors, dependent ones discarded."""
    return _span(space, mx.from_columns(cols, space.n), strict=False)


def _span(space, B, strict):
    n = space.n
    if n == 0 or not B or not B[0]:
        return Lattice(space, 0, [[] for _ in range(n)], 0)
    vmin = min((x.valuation() for row in B for x in row if x), default=INF)
    if vmin is INF:
        if strict:
            raise RankDeficient("zero columns span nothing")
        return Lattice(space, 0, [[] for _ in range(n)], 0)
    shift = -vmin
    M = mx.mat_scale_p(B, shift) if shift else B
    H = mx.hnf_columns(M, drop_dependent=not strict)
    rank = len(H[0]) if H else 0
    return Lattice(space, shift, H, rank)


def standard_lattice(space):
    """O^n in the given coordinates."""
    return canonicalize(space, mx.eye(space.ctx, space.n)) if space.n else \
        Lattice(space, 0, [], 0)


def sum_lattices(l1, l2):
    return span_lattice(l1.space, l1.basis_columns() + l2.basis_columns())


def intersect_lattices(l1, l2):
    """Intersection, computed by an integral kernel (independent of duals)."""
    sp = l1.space
    B1 = l1.basis_matrix()
    B2 = l2.basis_matrix()
    k1 = l1.rank
    if k1 == 0 or l2.rank == 0:
        return Lattice(sp, 0, [[] for _ in range(sp.n)], 0)
    stacked = [list(B1[i]) + [-x for x in B2[i]] for i in range(sp.n)]
    ker = mx.kernel_over_ring(stacked)
    cols = [mx.mat_vec(B1, v[:k1]) for v in ker]
    return span_lattice(sp, cols)


def lattice_in_subspace(lat, span_vectors):
    """The sublattice lat intersect span_K(span_vectors)."""
    sp = lat.space
    S = mx.from_columns(span_vectors, sp.n)
    # rows annihilating the subspace: kernel of S^T
    ann = mx.right_kernel(mx.transpose(S))
    if not ann:
        return lat
    E = mx.transpose(mx.from_columns(ann, sp.n))  # (n-d) x n equation rows
    A = mx.mat_mul(E, lat.basis_matrix())
    ker = mx.kernel_over_ring(A)
    cols = [mx.mat_vec(lat.basis_matrix(), v) for v in ker]
    return span_lattice(sp, cols)


def elementary_divisors(l1, l2):
    """Exponents of l2 inside l1 (l2 must be a finite-index sublattice of the
    same span); raises NotContained when some divisor is negative."""
    if l1.rank != l2.rank:
        raise NotContained("ranks differ: %d vs %d" % (l1.rank, l2.rank))
    if l1.rank == 0:
        return []
    C = l1.coords_matrix(l2)
    exps, _, _ = mx.smith(C)
    if len(exps) < l1.rank:
        raise NotContained("degenerate inclusion")
    if any(x.valuation() < 0 for row in C for x in row):
        raise NotContained("not a sublattice")
    return sorted(exps)


def divisor_spread(l1, l2):
    """max |e| over the relative elementary divisors of two full lattices.

    Any chain of L containment edges between vertices keeps all relative
    divisors inside [-L, L], so this is a lower bound for edge distance.
    """
    C = l1.coords_matrix(l2)
    exps, _, _ = mx.smith(C)
    return max((abs(e) for e in exps), default=0)


def vertex_type(lat):
    """Type t = length(L / L^dual) if lat is a vertex, else None."""
    sp = lat.space
    if lat.rank != sp.n:
        return None
    if sp.n == 0:
        return 0
    d = lat.dual()
    try:
        exps = elementary_divisors(lat, d)
    except NotContained:
        return None
    if any(e > 1 for e in exps):
        return None
    return sum(exps)


class Vertex:
    """A certified vertex: p*L <= L^dual <= L, with its type."""

    __slots__ = ("lattice", "type")

    def __init__(self, lattice, t):
        self.lattice = lattice
        self.type = t

    @classmethod
    def from_lattice(cls, lat):
        t = vertex_type(lat)
        if t is None:
            raise NotAVertex("lattice is not a vertex")
        return cls(lat, t)

    @property
    def key(self):
        return self.lattice.key

    def dual(self):
        return self.lattice.dual()

    def __eq__(self, other):
        return isinstance(other, Vertex) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return "Vertex(type=%d)" % self.type
