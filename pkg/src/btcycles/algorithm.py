"""The support-complex recursion.

Stage s lives in the building of C_{2s}, the orthocomplement of the special
vectors of valuation < 2s.  The map Phi_s glues the split summand
(+) p^{-a_i} O x_i (a_i = s or s+1 as r_i = 2s or 2s+1) onto a vertex of the
stage-(s+1) building.  The loop starts from a finite window in the top stage
(a single point when m = n) and otherwise only performs exact finite
closures, so no lower stage needs a window of its own.
"""

from . import matrices as mx
from .building import (ComplexSubset, ball, downward_closure, make_vertex,
                       neighbors_above)
from .errors import (BtcyclesError, SeedFailure, NotAVertex, TooLarge,
                     WindowTooSmall)
from .lattices import (HermSpace, Lattice, Vertex, canonicalize,
                       divisor_spread)


def _diag_space(ctx, norms):
    g = [[norms[i] if i == j else ctx.zero for j in range(len(norms))]
         for i in range(len(norms))]
    return HermSpace(ctx, g)


def _diag_vertex(space, exponents):
    """Vertex with basis p^(-e_i) e_i; SeedFailure if not a vertex."""
    ctx = space.ctx
    n = space.n
    if n == 0:
        return Vertex(Lattice(space, 0, [], 0), 0)
    cols = []
    for i, e in enumerate(exponents):
        v = [ctx.zero] * n
        v[i] = ctx.one.shifted(-e)
        cols.append(v)
    try:
        return Vertex.from_lattice(canonicalize(space, mx.from_columns(cols, n)))
    except NotAVertex:
        raise SeedFailure("diagonal seed is not a vertex") from None


class SubSpaceChain:
    """Stage spaces C_{2s} of the recursion, with ambient embeddings."""

    def __init__(self, st):
        self.st = st
        self.ctx = st.ctx
        comp_cols, comp_norms = st.complement_basis()
        self.vectors = [list(v) for v in st.xd] + [list(v) for v in comp_cols]
        self.norms = list(st.diag) + list(comp_norms)
        self.rvals = [v.valuation() for v in self.norms]
        self._spaces = {}

    def m_index(self, r):
        """Number of special vectors with r_i < r."""
        return sum(1 for ri in self.st.r if ri < r)

    def space_for(self, s):
        """Hermitian space of C_{2s} in its own diagonal coordinates."""
        if s not in self._spaces:
            start = self.m_index(2 * s)
            self._spaces[s] = _diag_space(self.ctx, self.norms[start:])
        return self._spaces[s]

    def stage_seed(self, s):
        """Canonical vertex of the stage-s building."""
        start = self.m_index(2 * s)
        exps = [-(-r // 2) for r in self.rvals[start:]]
        return _diag_vertex(self.space_for(s), exps)

    def embed_matrix(self):
        """Ambient coordinates of the stage-0 diagonal basis (columns)."""
        return mx.from_columns(self.vectors, self.st.space.n)


def phi_s(chain, s, vertex):
    """Glue the split summand for stage s onto a stage-(s+1) vertex."""
    ctx = chain.ctx
    m1 = chain.m_index(2 * s)
    m2 = chain.m_index(2 * s + 2)
    shift = m2 - m1
    sp = chain.space_for(s)
    d1 = sp.n
    cols = []
    for j, i in enumerate(range(m1, m2)):
        r = chain.st.r[i]
        if r not in (2 * s, 2 * s + 1):
            raise BtcyclesError("phi_%d applied with r_%d = %d" % (s, i, r))
        a = s if r == 2 * s else s + 1
        v = [ctx.zero] * d1
        v[j] = ctx.one.shifted(-a)
        cols.append(v)
    for col in vertex.lattice.basis_columns():
        cols.append([ctx.zero] * shift + list(col))
    expected = vertex.type + m2 - chain.m_index(2 * s + 1)
    return make_vertex(canonicalize(sp, mx.from_columns(cols, d1)),
                       expected, "phi_%d image" % s)


def seed_vertex(st):
    """Canonical ambient vertex inside the cycle support."""
    chain = SubSpaceChain(st)
    local = chain.stage_seed(0)
    return _to_ambient(chain, [local])[0]


def _to_ambient(chain, vertices):
    """Carry stage-0 vertices to the ambient coordinate system."""
    sp = chain.st.space
    E = chain.embed_matrix()
    out = []
    for v in vertices:
        B = mx.mat_mul(E, v.lattice.basis_matrix())
        w = Vertex.from_lattice(canonicalize(sp, B))
        if w.type != v.type:
            raise BtcyclesError("ambient transfer changed the type")
        out.append(w)
    return out


def required_top_radius(st, window_radius):
    s_top = st.r[-1] // 2
    return window_radius + 2 * (s_top + 1)


def run_multi(st, window_radius=2, top_radius=None, cap=None,
              check_both=True, trace=None, prune=True, window=None,
              force_top=False):
    """Compute the support complex S(x_1..x_m) as an ambient ComplexSubset.

    window_radius is the radius (around the canonical seed) within which the
    answer is wanted; the top stage uses a ball of radius top_radius
    (defaulting to a heuristic margin above window_radius; passing something
    smaller raises WindowTooSmall unless force_top is set, in which case the
    run proceeds and is marked uncertified).  When m = n the top stage is a
    point and the result is the entire, finite, support.

    When an ambient window (a ComplexSubset, usually a ball around the seed)
    is supplied and m < n, the final stage tests each window vertex for
    membership in the downward closure of the stage-0 image directly, instead
    of materializing the closure; the returned subset is then exactly the
    support intersected with the window, with the window's depths.

    With prune on (and no window, m < n), stage-0 vertices whose divisor
    spread from the seed already exceeds window_radius + 1 are discarded
    before the final closure; the spread is a lower bound for edge distance,
    so the result inside the window is unchanged.
    """
    chain = SubSpaceChain(st)
    s_top = st.r[-1] // 2
    need = required_top_radius(st, window_radius)
    certified = True
    if top_radius is None:
        top_radius = need
    elif top_radius < need and chain.space_for(s_top + 1).n > 0:
        if not force_top:
            raise WindowTooSmall(
                "top radius %d cannot certify window radius %d (need %d)"
                % (top_radius, window_radius, need))
        certified = False
    top_space = chain.space_for(s_top + 1)
    if top_space.n == 0:
        current = {(): chain.stage_seed(s_top + 1)}
        current = {v.key: v for v in current.values()}
    else:
        b = ball(chain.stage_seed(s_top + 1), top_radius, cap=cap)
        current = {v.key: v for v in b.vertices()}
    windowless = top_space.n == 0
    seed0 = chain.stage_seed(0)
    use_window = window is not None and not windowless
    for s in range(s_top, -1, -1):
        image = [phi_s(chain, s, v) for _, v in sorted(current.items())]
        if s == 0 and use_window:
            out = _window_members(chain, image, window, cap=cap)
            out.seed_key = seed_vertex(st).key
            if trace is not None:
                trace.append(_trace_entry(
                    s, "S&W", {v.key: v for v in out.vertices()}))
            info = {"windowless": False, "top_radius": top_radius,
                    "stages": s_top + 1, "size": len(out),
                    "certified": certified}
            return out, info
        if s == 0 and prune and not windowless:
            bound = window_radius + 1
            image = [v for v in image
                     if divisor_spread(seed0.lattice, v.lattice) <= bound]
        vs = downward_closure(image, cap=cap)
        if trace is not None:
            trace.append(_trace_entry(s, "S", vs))
        if s == 0:
            current = vs
            break
        sp = chain.space_for(s)
        tmax = sp.max_type
        cand = {}
        for g in (vs[k] for k in sorted(vs)):
            for w in neighbors_above(g, tmax):
                cand.setdefault(w.key, w)
        if check_both:
            # the any-type formulation gives the same downward closure
            # exactly when each of its vertices sits under a max candidate
            alt = {}
            for k in sorted(vs):
                lam = vs[k]
                for t in range(lam.type, tmax + 1, 2):
                    for w in neighbors_above(lam, t):
                        alt.setdefault(w.key, w)
            for k in sorted(alt):
                if k in cand:
                    continue
                w = alt[k]
                if not any(u.key in cand
                           for t in range(w.type + 2, tmax + 1, 2)
                           for u in neighbors_above(w, t)):
                    raise BtcyclesError(
                        "step-2 formulations disagree at stage %d" % s)
        if trace is not None:
            trace.append(_trace_entry(s, "S'", cand))
        # the downward closure of cand is deferred: the next stage closes
        # its Phi image anyway, and closure commutes with Phi up to closure
        current = cand
    ambient = _to_ambient(chain, [current[k] for k in sorted(current)])
    out = ComplexSubset(st.space)
    for v in ambient:
        out.add(v)
    out.seed_key = seed_vertex(st).key
    info = {"windowless": windowless, "top_radius": top_radius,
            "stages": s_top + 1, "size": len(out), "certified": certified}
    return out, info


def _window_members(chain, image, window, cap=None):
    """Window vertices lying in the downward closure of the stage-0 image.

    A vertex w is below some image vertex of type t exactly when one of its
    above-neighbors of type t is an image vertex, so membership reduces to
    key lookups and never builds the closure itself.
    """
    sp0 = chain.space_for(0)
    E = chain.embed_matrix()
    Einv = mx.inverse(E)
    img_keys = set()
    for v in image:
        img_keys.add(v.key)
    out = ComplexSubset(chain.st.space)
    count = 0
    for w in window.vertices():
        B = mx.mat_mul(Einv, w.lattice.basis_matrix())
        local = canonicalize(sp0, B)
        hit = local.key in img_keys
        if not hit:
            lv = Vertex(local, w.type)
            for t in range(w.type + 2, sp0.max_type + 1, 2):
                if any(u.key in img_keys for u in neighbors_above(lv, t)):
                    hit = True
                    break
        if hit:
            out.add(w, depth=window.depth.get(w.key))
            count += 1
            if cap is not None and count > cap:
                raise TooLarge("window membership pass over cap %d" % cap)
    return out


def _trace_entry(s, kind, vertices):
    types = {}
    for v in vertices.values():
        types[v.type] = types.get(v.type, 0) + 1
    return {"stage": s, "set": kind, "count": len(vertices),
            "types": {str(t): types[t] for t in sorted(types)}}


# ---------------------------------------------------------------------------
# single-vector base cases and recursion (independent route used in tests)


def _perp_data(st):
    comp_cols, comp_norms = st.complement_basis()
    space = _diag_space(st.ctx, comp_norms)
    exps = [-(-v.valuation() // 2) for v in comp_norms]
    return space, comp_cols, exps


def phi_r0(st, perp_vertex, comp_cols=None):
    """Ambient vertex O x (+) L for a vertex L of the x-perp building."""
    return _phi_base(st, perp_vertex, 0, comp_cols)


def phi_r1(st, perp_vertex, comp_cols=None):
    """Ambient vertex p^-1 O x (+) L; raises the type by one."""
    return _phi_base(st, perp_vertex, 1, comp_cols)


def _phi_base(st, perp_vertex, a, comp_cols):
    assert st.m == 1
    sp = st.space
    if comp_cols is None:
        comp_cols = st.complement_basis()[0]
    E = mx.from_columns(comp_cols, sp.n)
    cols = [[c.shifted(-a) for c in st.xd[0]]]
    for col in perp_vertex.lattice.basis_columns():
        cols.append(mx.mat_vec(E, col))
    out = Vertex.from_lattice(canonicalize(sp, mx.from_columns(cols, sp.n)))
    if out.type != perp_vertex.type + a:
        raise BtcyclesError("base gluing changed the type unexpectedly")
    return out


def recurse_single(st, window_radius=2, cap=None):
    """Support of a single special vector by recursion on its valuation."""
    assert st.m == 1
    r = st.r[0]
    sp = st.space
    if r <= 1:
        space, comp_cols, exps = _perp_data(st)
        seed = _diag_vertex(space, exps)
        perp_radius = window_radius + r + 2
        b = ball(seed, perp_radius, cap=cap)
        glue = phi_r0 if r == 0 else phi_r1
        image = [glue(st, v, comp_cols) for v in b.vertices()]
        if r == 0:
            members = {v.key: v for v in image}
        else:
            members = downward_closure(image, cap=cap)
    else:
        prev = recurse_single(st.scaled_sub(1), window_radius + 2, cap=cap)
        tmax = sp.max_type
        cand = {}
        closed = downward_closure(prev.vertices(), cap=cap)
        for k in sorted(closed):
            for w in neighbors_above(closed[k], tmax):
                cand.setdefault(w.key, w)
        members = downward_closure(cand.values(), cap=cap)
    out = ComplexSubset(sp)
    for k in sorted(members):
        out.add(members[k])
    return out
