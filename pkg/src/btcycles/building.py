"""Vertex combinatorics of the building: neighbors, balls, distances.

Neighbors of a vertex are enumerated through isotropic subspaces of the two
residue quotients L/L^dual (form p*h) and L^dual/pL (form h) over F_{p^2}.
Isotropic lines of the standard (identity gram) space are enumerated once per
(p, eps, dim) and pulled back through an explicit isometry; higher dimensions
recurse through perp-quotients with RREF deduplication.
"""

import itertools

from . import matrices as mx
from .errors import IngestError, NotAVertex, TooLarge, Unreachable
from .lattices import (Lattice, Vertex, intersect_lattices, span_lattice,
                       vertex_type)
from .scalars import FqScalar, fq_elements


class FiniteHermSpace:
    """Nondegenerate hermitian space over F_{p^2}; H(u,v) = u^T G frob(v)."""

    def __init__(self, ctx, gram):
        self.ctx = ctx
        self.d = len(gram)
        for i in range(self.d):
            for j in range(self.d):
                if gram[i][j] != gram[j][i].frob():
                    raise IngestError("finite gram not hermitian")
        self.gram = [list(r) for r in gram]
        if self.d and not _fq_det(ctx, self.gram):
            raise IngestError("finite gram is degenerate")

    def h(self, u, v):
        acc = self.ctx.fq_zero
        for i in range(self.d):
            if not u[i]:
                continue
            gi = self.gram[i]
            for j in range(self.d):
                if v[j] and gi[j]:
                    acc = acc + u[i] * gi[j] * v[j].frob()
        return acc

    def __repr__(self):
        return "FiniteHermSpace(d=%d, p=%d)" % (self.d, self.ctx.p)


def _fq_det(ctx, rows):
    M = [list(r) for r in rows]
    n = len(M)
    det = ctx.fq_one
    for i in range(n):
        piv = None
        for k in range(i, n):
            if M[k][i]:
                piv = k
                break
        if piv is None:
            return ctx.fq_zero
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            det = -det
        det = det * M[i][i]
        inv = M[i][i].inv()
        for k in range(i + 1, n):
            if M[k][i]:
                f = M[k][i] * inv
                Mi = M[i]
                M[k] = [x - f * y for x, y in zip(M[k], Mi)]
    return det


def _vec_key(v):
    return tuple(x.key() for x in v)


def rref_fq(rows):
    """Reduced row echelon form over F_{p^2}; zero rows dropped."""
    M = [list(r) for r in rows]
    if not M:
        return ()
    m = len(M[0])
    r = 0
    for j in range(m):
        piv = None
        for i in range(r, len(M)):
            if M[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        inv = M[r][j].inv()
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][j]:
                f = M[i][j]
                Mr = M[r]
                M[i] = [x - f * y for x, y in zip(M[i], Mr)]
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r])


_STD_LINES_CACHE = {}


def _std_lines(ctx, d):
    """Isotropic lines of the identity-gram space of dimension d, as RREF
    row vectors, cached per (p, eps, d)."""
    key = (ctx.p, ctx.eps, d)
    got = _STD_LINES_CACHE.get(key)
    if got is not None:
        return got
    p = ctx.p
    els = fq_elements(ctx)
    norms = {(x.a, x.b): x.norm() for x in els}
    lines = []
    zero = ctx.fq_zero
    one = ctx.fq_one
    for piv in range(d):
        free = d - piv - 1
        for tail in itertools.product(els, repeat=free):
            s = 1  # norm of the leading 1
            for x in tail:
                s += norms[(x.a, x.b)]
            if s % p == 0:
                lines.append(tuple([zero] * piv + [one] + list(tail)))
    lines.sort(key=_vec_key)
    _STD_LINES_CACHE[key] = tuple(lines)
    return _STD_LINES_CACHE[key]


def _find_anisotropic(V, basis):
    """A vector of nonzero norm in the span of the given basis vectors."""
    for v in basis:
        if V.h(v, v):
            return v
    els = fq_elements(V.ctx)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            for lam in els:
                if not lam:
                    continue
                v = tuple(x + lam * y for x, y in zip(basis[i], basis[j]))
                if V.h(v, v):
                    return v
    raise IngestError("no anisotropic vector; form degenerate?")


def _norm_preimage(ctx, c):
    """Some lambda in F_{p^2} with N(lambda) = c (c nonzero in F_p)."""
    for x in fq_elements(ctx):
        if x and x.norm() == c:
            return x
    raise IngestError("norm is not surjective?")


def standard_isometry(V):
    """Columns t_1..t_d with H(t_i, t_j) = delta_ij (identity gram)."""
    ctx = V.ctx
    d = V.d
    basis = []
    for i in range(d):
        e = [ctx.fq_zero] * d
        e[i] = ctx.fq_one
        basis.append(tuple(e))
    out = []
    while basis:
        v = _find_anisotropic(V, basis)
        c = V.h(v, v).a  # norm value in F_p
        lam = _norm_preimage(ctx, pow(c, ctx.p - 2, ctx.p))
        t = tuple(lam * x for x in v)
        out.append(t)
        # project the rest onto the orthocomplement of v and re-extract
        # an independent set of size len(basis)-1
        hvv = V.h(v, v)
        proj = []
        for w in basis:
            f = V.h(w, v) / hvv
            proj.append(tuple(x - f * y for x, y in zip(w, v)))
        proj = rref_fq(proj)
        basis = list(proj)
    return out  # list of d vectors


def _fq_matvec_cols(cols, coeffs):
    """Linear combination sum coeffs[i] * cols[i] of vectors."""
    d = len(cols[0])
    ctx = cols[0][0].ctx
    acc = [ctx.fq_zero] * d
    for c, col in zip(coeffs, cols):
        if c:
            acc = [a + c * x for a, x in zip(acc, col)]
    return tuple(acc)


def isotropic_subspaces(V, k):
    """All totally isotropic k-subspaces of V, as canonical RREF bases.

    The subspaces of the standard (identity gram) space are enumerated once
    per (p, eps, d, k) and pulled back through an isometry; an isometry is a
    bijection on totally isotropic subspaces, so this is exhaustive.
    """
    ctx = V.ctx
    d = V.d
    if k == 0:
        return [()]
    if k < 0 or 2 * k > d:
        return []
    T = standard_isometry(V)
    out = {}
    for sub in _std_subspaces(ctx, d, k):
        basis = rref_fq([_fq_matvec_cols(T, w) for w in sub])
        out[tuple(_vec_key(r) for r in basis)] = basis
    return [out[key] for key in sorted(out)]


_STD_SUBS_CACHE = {}


def _std_subspaces(ctx, d, k):
    """Isotropic k-subspaces of the identity-gram space, cached."""
    if k == 1:
        return [(v,) for v in _std_lines(ctx, d)]
    key = (ctx.p, ctx.eps, d, k)
    got = _STD_SUBS_CACHE.get(key)
    if got is None:
        eye = [[ctx.fq_one if i == j else ctx.fq_zero for j in range(d)]
               for i in range(d)]
        got = tuple(_subspaces_recursive(FiniteHermSpace(ctx, eye), k))
        _STD_SUBS_CACHE[key] = got
    return got


def _subspaces_recursive(V, k):
    ctx = V.ctx
    d = V.d
    seen = {}
    for line in isotropic_subspaces(V, 1):
        v = line[0]
        # perp of v: single linear equation, then a complement of v inside it
        cvec = _perp_equation(V, v)
        kernel = _fq_kernel_of_row(ctx, cvec)
        indep = [v]
        for w in kernel:
            if len(indep) == d - 1:
                break
            cand = rref_fq(indep + [w])
            if len(cand) > len(indep):
                indep.append(w)
        comp = indep[1:]
        gram = [[V.h(a, b) for b in comp] for a in comp]
        Q = FiniteHermSpace(ctx, gram)
        for sub in isotropic_subspaces(Q, k - 1):
            lifts = [_fq_matvec_cols(comp, coeffs) for coeffs in sub]
            basis = rref_fq([v] + lifts)
            if len(basis) != k:
                continue
            seen[tuple(_vec_key(r) for r in basis)] = basis
    return [seen[key] for key in sorted(seen)]


def _perp_equation(V, v):
    """Row c with {w : sum c_i w_i = 0} = perp of v."""
    fv = [x.frob() for x in v]
    return [sum((V.gram[i][j] * fv[j] for j in range(V.d) if fv[j]),
                V.ctx.fq_zero) for i in range(V.d)]


def _fq_kernel(ctx, rows, d):
    """Basis of the joint kernel of several linear forms on F_{p^2}^d."""
    R = rref_fq(rows)
    pivots = []
    for row in R:
        for j in range(d):
            if row[j]:
                pivots.append(j)
                break
    pivset = set(pivots)
    basis = []
    for j in range(d):
        if j in pivset:
            continue
        v = [ctx.fq_zero] * d
        v[j] = ctx.fq_one
        for row, pj in zip(R, pivots):
            v[pj] = -row[j]
        basis.append(tuple(v))
    return basis


def _fq_kernel_of_row(ctx, c):
    """Basis of the kernel of a single linear form."""
    d = len(c)
    piv = None
    for i in range(d):
        if c[i]:
            piv = i
            break
    basis = []
    if piv is None:
        for i in range(d):
            e = [ctx.fq_zero] * d
            e[i] = ctx.fq_one
            basis.append(tuple(e))
        return basis
    cinv = c[piv].inv()
    for i in range(d):
        if i == piv:
            continue
        e = [ctx.fq_zero] * d
        e[i] = ctx.fq_one
        e[piv] = -(c[i] * cinv)
        basis.append(tuple(e))
    return basis


# ---------------------------------------------------------------------------
# vertex neighbors


def _quotient_below(vertex):
    """(F_{p^2}-space of L/L^dual with form p*h, lift vectors)."""
    lat = vertex.lattice
    dual = lat.dual()
    return _quotient(lat, dual, scale=1)


def _quotient_above(vertex):
    """(F_{p^2}-space of L^dual/pL with form h, lift vectors)."""
    lat = vertex.lattice
    dual = lat.dual()
    return _quotient(dual, lat.scaled(1), scale=0)


def _quotient(big, small, scale):
    sp = big.space
    C = big.coords_matrix(small)
    exps, P, _Q = mx.smith(C)
    Pinv = mx.inverse(P)
    Bp = mx.mat_mul(big.basis_matrix(), Pinv)
    cols = mx.columns(Bp)
    idx = [i for i, e in enumerate(exps) if e == 1]
    if any(e not in (0, 1) for e in exps):
        raise NotAVertex("quotient is not p-torsion")
    lifts = [cols[i] for i in idx]
    gram = [[sp.h(a, b).shifted(scale).reduce() for b in lifts] for a in lifts]
    return FiniteHermSpace(sp.ctx, gram), lifts


def _lift_combo(lifts, coeffs):
    """Integral lift sum coeffs[j].lift() * lifts[j] in ambient coordinates."""
    n = len(lifts[0])
    ctx = lifts[0][0].ctx
    acc = [ctx.zero] * n
    for c, col in zip(coeffs, lifts):
        if c:
            cl = c.lift()
            acc = [a + cl * x for a, x in zip(acc, col)]
    return acc


# when set, every enumerated neighbor is re-certified from scratch (used by
# the test suite; the constructions below are exact either way)
CERTIFY_NEIGHBORS = False


def make_vertex(lat, expected_type, what):
    if CERTIFY_NEIGHBORS:
        v = Vertex.from_lattice(lat)
        if v.type != expected_type:
            raise NotAVertex("%s of unexpected type %d" % (what, v.type))
        return v
    return Vertex(lat, expected_type)


def neighbors_below(vertex, ttilde):
    """All vertices of type ttilde contained in the given vertex."""
    t = vertex.type
    if ttilde == t:
        return [vertex]
    if ttilde > t or ttilde < 0 or (t - ttilde) % 2:
        raise IngestError("bad target type %d below type %d" % (ttilde, t))
    k = (t - ttilde) // 2
    V, lifts = _quotient_below(vertex)
    ctx = V.ctx
    sp = vertex.lattice.space
    dual_cols = vertex.lattice.dual().basis_columns()
    out = []
    for sub in isotropic_subspaces(V, k):
        # the neighbor is the preimage of U-perp: L~ / L^dual = U-perp
        eqs = [_perp_equation(V, u) for u in sub]
        uperp = _fq_kernel(ctx, eqs, V.d)
        us = [_lift_combo(lifts, w) for w in uperp]
        lam = span_lattice(sp, dual_cols + us)
        out.append(make_vertex(lam, ttilde, "below-neighbor"))
    return out


def neighbors_above(vertex, ttilde):
    """All vertices of type ttilde containing the given vertex."""
    t = vertex.type
    if ttilde == t:
        return [vertex]
    sp = vertex.lattice.space
    if ttilde < t or (ttilde - t) % 2 or ttilde > sp.max_type:
        raise IngestError("bad target type %d above type %d" % (ttilde, t))
    k = (ttilde - t) // 2
    V, lifts = _quotient_above(vertex)
    scaled_cols = vertex.lattice.scaled(1).basis_columns()
    out = []
    for sub in isotropic_subspaces(V, k):
        us = [_lift_combo(lifts, row) for row in sub]
        pre = span_lattice(sp, scaled_cols + us)
        out.append(make_vertex(pre.scaled(-1), ttilde, "above-neighbor"))
    return out


def faces_below_generators(vertex):
    """Yield (type, lift columns) for every proper sub-vertex.

    The sub-vertex for an isotropic k-subspace U is generated by the dual
    basis of the vertex together with the yielded lifts of U-perp; no
    canonical form is computed here, so callers that only need pairing
    tests against the generators can skip lattice construction.
    """
    t = vertex.type
    if t < 2:
        return
    V, lifts = _quotient_below(vertex)
    ctx = V.ctx
    for k in range(1, t // 2 + 1):
        for sub in isotropic_subspaces(V, k):
            eqs = [_perp_equation(V, u) for u in sub]
            uperp = _fq_kernel(ctx, eqs, V.d)
            us = [_lift_combo(lifts, w) for w in uperp]
            yield t - 2 * k, us


def below_types(vertex):
    return list(range(vertex.type - 2, -1, -2))


def above_types(vertex):
    return list(range(vertex.type + 2, vertex.lattice.space.max_type + 1, 2))


def all_neighbors(vertex):
    out = []
    for t in below_types(vertex):
        out.extend(neighbors_below(vertex, t))
    for t in above_types(vertex):
        out.extend(neighbors_above(vertex, t))
    return out


def downward_closure(vertices, cap=None):
    """All vertices contained in some member; input members included."""
    out = {}
    for v in vertices:
        if v.key not in out:
            out[v.key] = v
        for t in below_types(v):
            for w in neighbors_below(v, t):
                out.setdefault(w.key, w)
        if cap is not None and len(out) > cap:
            raise TooLarge("downward closure exceeded cap %d" % cap)
    return out


# ---------------------------------------------------------------------------
# vertex subsets of the building


class ComplexSubset:
    """A finite set of vertices with its induced containment edges."""

    def __init__(self, space):
        self.space = space
        self._v = {}
        self.depth = {}
        self.meta = {}
        self._edges = None
        self.seed_key = None

    def add(self, vertex, depth=None):
        if vertex.key not in self._v:
            self._v[vertex.key] = vertex
            self._edges = None
        if depth is not None:
            old = self.depth.get(vertex.key)
            if old is None or depth < old:
                self.depth[vertex.key] = depth

    def __contains__(self, item):
        key = item.key if isinstance(item, Vertex) else item
        return key in self._v

    def __len__(self):
        return len(self._v)

    def __iter__(self):
        return iter(self.vertices())

    def get(self, key):
        return self._v.get(key)

    def sorted_keys(self):
        return sorted(self._v)

    def vertices(self):
        return [self._v[k] for k in self.sorted_keys()]

    def edges(self):
        """Induced containment edges as sorted key pairs."""
        if self._edges is not None:
            return self._edges
        bytype = {}
        for k, v in self._v.items():
            bytype.setdefault(v.type, []).append(v)
        for vs in bytype.values():
            vs.sort(key=lambda v: v.key)
        out = []
        types = sorted(bytype)
        for i, t1 in enumerate(types):
            for t2 in types[i + 1:]:
                for big in bytype[t2]:
                    for small in bytype[t1]:
                        if big.lattice.contains(small.lattice):
                            out.append(tuple(sorted((small.key, big.key))))
        out.sort()
        self._edges = out
        return out

    def components(self):
        """Connected components as lists of keys (containment graph)."""
        parent = {k: k for k in self._v}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.edges():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for k in self._v:
            groups.setdefault(find(k), []).append(k)
        return sorted((sorted(g) for g in groups.values()))

    def to_json_dict(self):
        keys = self.sorted_keys()
        ids = {k: i for i, k in enumerate(keys)}
        verts = []
        for k in keys:
            v = self._v[k]
            entry = {"id": ids[k], "type": v.type,
                     "basis": v.lattice.serialize(),
                     "meta": dict(sorted(self.meta.get(k, {}).items()))}
            if k in self.depth:
                entry["meta"]["depth"] = self.depth[k]
            verts.append(entry)
        edges = [[ids[a], ids[b]] for a, b in self.edges()]
        return {"vertices": verts, "edges": sorted(edges)}

    def to_dot(self):
        d = self.to_json_dict()
        lines = ["graph support {"]
        for v in d["vertices"]:
            meta = v["meta"]
            extra = "".join(" %s=%s" % (mk, meta[mk]) for mk in sorted(meta))
            lines.append('  v%d [label="t=%d%s"];' % (v["id"], v["type"], extra))
        for a, b in d["edges"]:
            lines.append("  v%d -- v%d;" % (a, b))
        lines.append("}")
        return "\n".join(lines) + "\n"


def ball(seed, radius, cap=None):
    """All vertices within the given edge distance of the seed."""
    sub = ComplexSubset(seed.lattice.space)
    sub.add(seed, depth=0)
    sub.seed_key = seed.key
    frontier = [seed]
    for depth in range(1, radius + 1):
        nxt = []
        for v in sorted(frontier, key=lambda v: v.key):
            for w in all_neighbors(v):
                if w.key not in sub:
                    sub.add(w, depth=depth)
                    nxt.append(w)
                if cap is not None and len(sub) > cap:
                    raise TooLarge("ball exceeded cap %d" % cap)
        frontier = nxt
        if not frontier:
            break
    return sub


def meets_as_vertex(vertex, subset):
    """Whether the vertex intersects some member of the subset in a vertex."""
    for w in subset if isinstance(subset, (list, tuple)) else subset.vertices():
        if w.key == vertex.key:
            return True
        inter = intersect_lattices(vertex.lattice, w.lattice)
        if vertex_type(inter) is not None:
            return True
    return False


def max_graph_neighbors(vertex, cap=None):
    """Max-type vertices whose intersection with the given one is a vertex."""
    assert vertex.type == vertex.lattice.space.max_type
    tmax = vertex.type
    out = {}
    gammas = [vertex]
    for t in below_types(vertex):
        gammas.extend(neighbors_below(vertex, t))
    for g in gammas:
        for w in neighbors_above(g, tmax):
            out.setdefault(w.key, w)
            if cap is not None and len(out) > cap:
                raise TooLarge("max-graph neighborhood exceeded cap %d" % cap)
    return [out[k] for k in sorted(out)]


def distance(vertex, subset, bound=6, cap=None):
    """Chain distance d(vertex, subset) through max-type vertices.

    Returns 0 when the vertex belongs to the subset, otherwise the minimal
    length of a chain of max-type vertices ending at the vertex whose head
    meets the subset; Unreachable(bound) when the search exhausts the bound.
    """
    if isinstance(subset, ComplexSubset):
        if vertex in subset:
            return 0
    elif any(w.key == vertex.key for w in subset):
        return 0
    frontier = {vertex.key: vertex}
    visited = set(frontier)
    for dist in range(1, bound + 1):
        for v in frontier.values():
            if meets_as_vertex(v, subset):
                return dist
        nxt = {}
        for v in frontier.values():
            for w in max_graph_neighbors(v, cap=cap):
                if w.key not in visited:
                    visited.add(w.key)
                    nxt[w.key] = w
            if cap is not None and len(visited) > cap:
                raise TooLarge("distance search exceeded cap %d" % cap)
        frontier = nxt
        if not frontier:
            break
    return Unreachable(bound)
