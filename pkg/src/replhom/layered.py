"""Modules over the m-replicated algebra, as layered tuples.

A module is m+1 base-algebra representations M^0..M^m glued by connector
maps delta_i: nu(M^i) -> M^{i-1}, the right action of the dual-bimodule
block; delta_{i-1} . nu(delta_i) = 0 encodes the square-zero multiplication
of the matrix algebra.  Projectives P(x_i) carry [I(x) @ i-1, P(x) @ i] with
identity connector, injectives I(x_i) = [I(x) @ i, P(x) @ i+1], so
P(x_{i+1}) and I(x_i) coincide: those are the projective-injectives.

Covers, envelopes, syzygies, Ext and the AR translate all reduce to exact
linear algebra through the blockwise Nakayama calculus on sums of P(x_i)
and I(x_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import repa
from .errors import (IndexOutOfRange, InjectiveInput, ProjectiveInput,
                     ZeroModule)
from .linalg import QMatrix
from .quiver import ReplicationSpec
from .repa import (AMorphism, ARep, compose, hom_basis, injective,
                   inj_sum_of, nu_data, nu_module, nu_morphism, projective,
                   proj_sum_of, simple)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LayeredModule:
    """Module over the m-replicated algebra."""

    def __init__(self, spec: ReplicationSpec, layers, connectors, check=True):
        self.spec = spec
        m = spec.m
        layers = list(layers)
        if len(layers) != m + 1:
            raise ValueError(f"expected {m + 1} layers")
        self.layers = tuple(layers)
        conns = [None] * (m + 1)
        for i in range(1, m + 1):
            c = connectors[i] if connectors and len(connectors) > i else None
            if c is None:
                c = AMorphism.zero(nu_module(self.layers[i]), self.layers[i - 1])
            conns[i] = c
        self.connectors = tuple(conns)
        self._cache = {}
        if check:
            self.validate()

    @property
    def m(self):
        return self.spec.m

    @property
    def quiver(self):
        return self.spec.base

    def validate(self):
        m = self.spec.m
        for i in range(1, m + 1):
            d = self.connectors[i]
            nu_i = nu_module(self.layers[i])
            if d.src.dim != nu_i.dim or d.tgt.dim != self.layers[i - 1].dim:
                raise ValueError(f"connector {i} has wrong shape")
            if not d.commutes():
                raise ValueError(f"connector {i} is not a module morphism")
        for i in range(2, m + 1):
            d_hi = self.connectors[i]
            d_lo = self.connectors[i - 1]
            if d_hi.tgt.total_dim() and not d_lo.src.is_zero():
                if not compose(d_lo, nu_morphism(d_hi)).is_zero():
                    raise ValueError(f"square-zero violated at layer {i}")

    def total_dim(self):
        return sum(l.total_dim() for l in self.layers)

    def is_zero(self):
        return self.total_dim() == 0

    def dim_vector(self):
        """Flat dimension vector ordered by (level, base vertex order)."""
        return tuple(l.dim[v] for l in self.layers for v in self.quiver.vertices)

    def layer_support(self):
        return tuple(i for i, l in enumerate(self.layers) if not l.is_zero())

    def __repr__(self):
        sup = {f"{v}_{i}": l.dim[v] for i, l in enumerate(self.layers)
               for v in self.quiver.vertices if l.dim[v]}
        return f"LayeredModule({sup or 0})"

    def to_dict(self):
        return {
            "m": self.spec.m,
            "layers": [l.to_dict() for l in self.layers],
            "connectors": [
                None if i == 0 else
                {v: self.connectors[i].mats[v].to_lists()
                 for v in self.quiver.vertices}
                for i in range(self.spec.m + 1)
            ],
        }

    @classmethod
    def from_dict(cls, spec: ReplicationSpec, d):
        layers = [ARep.from_dict(spec.base, ld) for ld in d["layers"]]
        conns = [None]
        for i in range(1, spec.m + 1):
            cd = d["connectors"][i]
            nu_i = nu_module(layers[i])
            mats = {}
            for v in spec.base.vertices:
                rows = cd.get(v) if cd else None
                mats[v] = QMatrix(layers[i - 1].dim[v], nu_i.dim[v],
                                  rows if rows else None)
            conns.append(AMorphism(nu_i, layers[i - 1], mats))
        return cls(spec, layers, conns)


class LModMorphism:
    """Morphism of layered modules: one base-level morphism per layer."""

    __slots__ = ("src", "tgt", "parts")

    def __init__(self, src: LayeredModule, tgt: LayeredModule, parts):
        self.src = src
        self.tgt = tgt
        ps = []
        for i in range(src.spec.m + 1):
            p = parts[i] if parts and len(parts) > i and parts[i] is not None \
                else AMorphism.zero(src.layers[i], tgt.layers[i])
            ps.append(p)
        self.parts = tuple(ps)

    @classmethod
    def zero(cls, src, tgt):
        return cls(src, tgt, None)

    @classmethod
    def identity(cls, M):
        return cls(M, M, [AMorphism.identity(l) for l in M.layers])

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def is_mono(self):
        return all(p.is_mono() for p in self.parts)

    def is_epi(self):
        return all(p.is_epi() for p in self.parts)

    def is_iso(self):
        return all(p.is_iso() for p in self.parts)

    def add(self, other):
        return LModMorphism(self.src, self.tgt,
                            [a.add(b) for a, b in zip(self.parts, other.parts)])

    def scale(self, c):
        return LModMorphism(self.src, self.tgt,
                            [p.scale(c) for p in self.parts])

    def compatible(self):
        """Layerwise commuting squares plus connector compatibility."""
        for p in self.parts:
            if not p.commutes():
                return False
        for i in range(1, self.src.spec.m + 1):
            lhs = compose(self.parts[i - 1], self.src.connectors[i])
            rhs = compose(self.tgt.connectors[i], nu_morphism(self.parts[i]))
            for v in self.src.quiver.vertices:
                if lhs.mats[v] != rhs.mats[v]:
                    return False
        return True


def lcompose(g: LModMorphism, f: LModMorphism) -> LModMorphism:
    return LModMorphism(f.src, g.tgt,
                        [compose(a, b) for a, b in zip(g.parts, f.parts)])


def total_trace(f: LModMorphism):
    return sum((repa.morphism_total_trace(p) for p in f.parts), _ZERO)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zero_module(spec: ReplicationSpec) -> LayeredModule:
    z = [ARep(spec.base, {}) for _ in range(spec.m + 1)]
    return LayeredModule(spec, z, None, check=False)


def from_level(spec: ReplicationSpec, M: ARep, level: int) -> LayeredModule:
    """Embed a base-algebra module at the given level (fully faithfully)."""
    if not 0 <= level <= spec.m:
        raise IndexOutOfRange(f"level {level} outside 0..{spec.m}")
    layers = [M if i == level else ARep(spec.base, {})
              for i in range(spec.m + 1)]
    return LayeredModule(spec, layers, None, check=False)


def simple_rep(spec: ReplicationSpec, x, i) -> LayeredModule:
    return from_level(spec, simple(spec.base, x), i)


def projective_rep(spec: ReplicationSpec, x, i) -> LayeredModule:
    """P(x_i) = [I(x) at layer i-1 (if i>0), P(x) at layer i], identity glue."""
    if not 0 <= i <= spec.m:
        raise IndexOutOfRange(f"level {i} outside 0..{spec.m}")
    q = spec.base
    layers = [ARep(q, {}) for _ in range(spec.m + 1)]
    layers[i] = projective(q, x)
    conns = [None] * (spec.m + 1)
    if i > 0:
        layers[i - 1] = injective(q, x)
        nu_p = nu_module(layers[i])
        conns[i] = AMorphism(nu_p, layers[i - 1],
                             {v: QMatrix.identity(nu_p.dim[v])
                              for v in q.vertices})
    return LayeredModule(spec, layers, conns, check=False)


def injective_rep(spec: ReplicationSpec, x, i) -> LayeredModule:
    """I(x_i) = [I(x) at layer i, P(x) at layer i+1 (if i<m)]; equals P(x_{i+1})
    for i < m."""
    if not 0 <= i <= spec.m:
        raise IndexOutOfRange(f"level {i} outside 0..{spec.m}")
    if i < spec.m:
        return projective_rep(spec, x, i + 1)
    return from_level(spec, injective(spec.base, x), spec.m)


def layered_direct_sum(spec: ReplicationSpec, mods):
    """Block direct sum with aligned Nakayama data; returns (D, incls, projs)."""
    mods = list(mods)
    if not mods:
        z = zero_module(spec)
        return z, [], []
    m = spec.m
    layer_data = [repa.direct_sum_areps([M.layers[l] for M in mods])
                  for l in range(m + 1)]
    layers = [ld[0] for ld in layer_data]
    conns = [None] * (m + 1)
    for i in range(1, m + 1):
        nu_i = nu_module(layers[i])
        mats = {v: QMatrix.block_diag([M.connectors[i].mats[v] for M in mods])
                for v in spec.base.vertices}
        conns[i] = AMorphism(nu_i, layers[i - 1], mats)
    D = LayeredModule(spec, layers, conns, check=False)
    incls, projs = [], []
    for k, M in enumerate(mods):
        incls.append(LModMorphism(M, D, [layer_data[l][1][k]
                                         for l in range(m + 1)]))
        projs.append(LModMorphism(D, M, [layer_data[l][2][k]
                                         for l in range(m + 1)]))
    return D, incls, projs


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

def hom_basis_rep(M: LayeredModule, N: LayeredModule):
    """Basis of Hom over the replicated algebra.

    Unknowns are coordinates in the layerwise base Hom spaces; constraints
    are the connector compatibilities, linear through the Nakayama functor.
    """
    cache = M._cache.setdefault("hom", {})
    hit = cache.get(id(N))
    if hit is not None and hit[0] is N:
        return hit[1]
    m = M.spec.m
    layer_bases = [hom_basis(M.layers[l], N.layers[l]) for l in range(m + 1)]
    nu_bases = [[nu_morphism(h) for h in lb] for lb in layer_bases]
    offsets, total = [], 0
    for lb in layer_bases:
        offsets.append(total)
        total += len(lb)
    rows = []
    for i in range(1, m + 1):
        nu_mi = nu_module(M.layers[i])
        tgt = N.layers[i - 1]
        shape = [(v, nu_mi.dim[v], tgt.dim[v]) for v in M.quiver.vertices]
        n_entries = sum(r * c for _, c, r in shape)
        if n_entries == 0:
            continue
        cols = {}
        for k, h in enumerate(layer_bases[i - 1]):
            cols[offsets[i - 1] + k] = compose(h, M.connectors[i])
        for k, nh in enumerate(nu_bases[i]):
            cols[offsets[i] + k] = compose(N.connectors[i], nh).scale(-1)
        for v, csz, rsz in shape:
            for r in range(rsz):
                for c in range(csz):
                    row = [_ZERO] * total
                    for idx, mor in cols.items():
                        row[idx] += mor.mats[v].data[r][c]
                    rows.append(row)
    basis = []
    if total:
        system = QMatrix(len(rows), total, rows if rows else None)
        ker = system.kernel_basis()
        for cidx in range(ker.cols):
            vec = ker.col(cidx)
            parts = []
            for l in range(m + 1):
                mor = None
                for k, h in enumerate(layer_bases[l]):
                    c = vec[offsets[l] + k]
                    if c:
                        hm = h.scale(c)
                        mor = hm if mor is None else mor.add(hm)
                parts.append(mor)
            basis.append(LModMorphism(M, N, parts))
    cache[id(N)] = (N, basis)
    return basis


def hom_dim_rep(M, N):
    return len(hom_basis_rep(M, N))


# ---------------------------------------------------------------------------
# sub/quotient machinery
# ---------------------------------------------------------------------------

def layered_sub(M: LayeredModule, cols):
    """Submodule spanned by per-layer, per-vertex column matrices."""
    m = M.spec.m
    layers, incl_parts = [], []
    for l in range(m + 1):
        K, incl = repa.sub_from_columns(M.layers[l], cols[l])
        layers.append(K)
        incl_parts.append(incl)
    conns = [None] * (m + 1)
    for i in range(1, m + 1):
        nu_incl = nu_morphism(incl_parts[i])
        comp = compose(M.connectors[i], nu_incl)
        mats = {v: incl_parts[i - 1].mats[v].solve_matrix(comp.mats[v])
                for v in M.quiver.vertices}
        conns[i] = AMorphism(nu_incl.src, layers[i - 1], mats)
    K = LayeredModule(M.spec, layers, conns)
    return K, LModMorphism(K, M, incl_parts)


def kernel_rep(f: LModMorphism):
    cols = [{v: f.parts[l].mats[v].kernel_basis()
             for v in f.src.quiver.vertices}
            for l in range(f.src.spec.m + 1)]
    return layered_sub(f.src, cols)


def image_rep(f: LModMorphism):
    cols = [{v: f.parts[l].mats[v].column_space_basis()
             for v in f.src.quiver.vertices}
            for l in range(f.src.spec.m + 1)]
    return layered_sub(f.tgt, cols)


def cokernel_rep(f: LModMorphism):
    """Returns (C, proj: tgt -> C)."""
    N = f.tgt
    m = N.spec.m
    layers, proj_parts = [], []
    for l in range(m + 1):
        C, proj, _ = repa.cokernel_of_morphism(f.parts[l])
        layers.append(C)
        proj_parts.append(proj)
    conns = [None] * (m + 1)
    for i in range(1, m + 1):
        nu_proj = nu_morphism(proj_parts[i])   # nu(N^i) -> nu(C^i), onto
        nu_ci = nu_proj.tgt
        sect = {v: nu_proj.mats[v].solve_matrix(QMatrix.identity(nu_ci.dim[v]))
                for v in N.quiver.vertices}
        comp = compose(proj_parts[i - 1], N.connectors[i])
        mats = {v: comp.mats[v] * sect[v] for v in N.quiver.vertices}
        conns[i] = AMorphism(nu_ci, layers[i - 1], mats)
    C = LayeredModule(N.spec, layers, conns)
    return C, LModMorphism(N, C, proj_parts)


def radical_sub(M: LayeredModule):
    """rad M: base-algebra radical plus the connector images, per layer."""
    m = M.spec.m
    cols = []
    for l in range(m + 1):
        rad_a = repa.radical_columns(M.layers[l])
        per_vertex = {}
        for v in M.quiver.vertices:
            pieces = [rad_a[v]]
            if l < m:
                pieces.append(M.connectors[l + 1].mats[v])
            per_vertex[v] = QMatrix.hstack(pieces).column_space_basis()
        cols.append(per_vertex)
    return layered_sub(M, cols)


def top_data(M: LayeredModule):
    """Generators of M/rad M: list of (layer, vertex, column vector)."""
    R, incl = radical_sub(M)
    gens = []
    for l in range(M.spec.m + 1):
        for v in M.quiver.vertices:
            span = incl.parts[l].mats[v]
            for col in repa.complement_columns(span, M.layers[l].dim[v]):
                gens.append((l, v, col))
    return gens


def socle_data(M: LayeredModule):
    """Socle bases: dict (layer, vertex) -> QMatrix of columns.

    An element sits in the socle iff the base-algebra arrows out of its
    vertex kill it and (for layers >= 1) its connector action vanishes.
    """
    cached = M._cache.get("socle")
    if cached is not None:
        return cached
    q = M.quiver
    out = {}
    for l in range(M.spec.m + 1):
        for x in q.vertices:
            n = M.layers[l].dim[x]
            if n == 0:
                out[(l, x)] = QMatrix.zeros(0, 0)
                continue
            conditions = [M.layers[l].mats[a] for a in q.out_arrows[x]]
            if l >= 1:
                psum = proj_sum_of(q, x)
                delta = M.connectors[l]
                cols = []
                for r in range(n):
                    e = [_ONE if k == r else _ZERO for k in range(n)]
                    phi = psum.hom_to(M.layers[l], [e])
                    comp = compose(delta, nu_morphism(phi))
                    col = []
                    for w in q.vertices:
                        for row in comp.mats[w].data:
                            col.extend(row)
                    cols.append(col)
                if cols and len(cols[0]):
                    conditions.append(QMatrix.from_cols(cols))
            if conditions:
                stacked = QMatrix.vstack(
                    [c for c in conditions] or [QMatrix.zeros(0, n)])
                out[(l, x)] = stacked.kernel_basis() if stacked.rows else \
                    QMatrix.identity(n)
            else:
                out[(l, x)] = QMatrix.identity(n)
    M._cache["socle"] = out
    return out


# ---------------------------------------------------------------------------
# sums of layered projectives / injectives
# ---------------------------------------------------------------------------

class LProjSum:
    """Direct sum of P(x_i), with the layout needed for blockwise Nakayama."""

    def __init__(self, spec: ReplicationSpec, members):
        self.spec = spec
        self.members = tuple(members)
        self.components = [projective_rep(spec, x, i) for x, i in self.members]
        self.module, self.incls, self.projs = layered_direct_sum(
            spec, self.components)

    def gen_position(self, j):
        """(layer, vertex, column) of the j-th generator inside the sum."""
        x, i = self.members[j]
        psum = proj_sum_of(self.spec.base, x)
        local = psum.gen_pos(0)
        off = sum(self.components[k].layers[i].dim[x] for k in range(j))
        return i, x, off + local

    def hom_to(self, N: LayeredModule, gen_cols) -> LModMorphism:
        """Morphism sending the j-th generator to gen_cols[j] in N^{i_j}(x_j)."""
        q = self.spec.base
        m = self.spec.m
        comps = []
        for j, (x, i) in enumerate(self.members):
            psum = proj_sum_of(q, x)
            phi = psum.hom_to(N.layers[i], [gen_cols[j]])
            parts = [None] * (m + 1)
            parts[i] = phi
            if i > 0:
                parts[i - 1] = compose(N.connectors[i], nu_morphism(phi))
            comps.append(LModMorphism(self.components[j], N, parts))
        parts = []
        for l in range(m + 1):
            mats = {}
            for v in q.vertices:
                blocks = [c.parts[l].mats[v] for c in comps]
                mats[v] = QMatrix.hstack(blocks) if blocks else \
                    QMatrix.zeros(N.layers[l].dim[v], 0)
            parts.append(AMorphism(self.module.layers[l], N.layers[l], mats))
        return LModMorphism(self.module, N, parts)

    def piece_offset(self, j, layer, vertex):
        return sum(self.components[k].layers[layer].dim[vertex]
                   for k in range(j))


class LInjSum:
    """Direct sum of I(x_i), mirroring LProjSum."""

    def __init__(self, spec: ReplicationSpec, members):
        self.spec = spec
        self.members = tuple(members)
        self.components = [injective_rep(spec, x, i) for x, i in self.members]
        self.module, self.incls, self.projs = layered_direct_sum(
            spec, self.components)

    def piece_offset(self, j, layer, vertex):
        return sum(self.components[k].layers[layer].dim[vertex]
                   for k in range(j))


def _assemble(src_mod: LayeredModule, tgt_mod: LayeredModule,
              src_sum, tgt_sum, contributions) -> LModMorphism:
    """Build a morphism between sums from per-block base-level morphisms.

    contributions: list of (src member j, tgt member l, layer, AMorphism)
    where the AMorphism runs between the standalone piece representations.
    """
    m = src_mod.spec.m
    q = src_mod.quiver
    parts = []
    for lay in range(m + 1):
        mats = {v: QMatrix.zeros(tgt_mod.layers[lay].dim[v],
                                 src_mod.layers[lay].dim[v])
                for v in q.vertices}
        parts.append(mats)
    for (j, l, lay, h) in contributions:
        for v in q.vertices:
            block = h.mats[v]
            if block.rows == 0 or block.cols == 0 or block.is_zero():
                continue
            ro = tgt_sum.piece_offset(l, lay, v)
            co = src_sum.piece_offset(j, lay, v)
            tgtm = parts[lay][v]
            for r in range(block.rows):
                for c in range(block.cols):
                    if block.data[r][c]:
                        tgtm.data[ro + r][co + c] += block.data[r][c]
    return LModMorphism(src_mod, tgt_mod,
                        [AMorphism(src_mod.layers[lay], tgt_mod.layers[lay],
                                   parts[lay]) for lay in range(m + 1)])


def _phi_from_coeffs(q, x, y, coeffs):
    """Base morphism P(x) -> P(y) with the given path coefficients."""
    psum = proj_sum_of(q, x)
    tgt = projective(q, y)
    tgt_sum = proj_sum_of(q, y)
    gen = [_ZERO] * tgt.dim[x]
    for u, c in coeffs.items():
        gen[tgt_sum.pos[x][(0, u)]] += c
    return psum.hom_to(tgt, [gen])


def _cross_from_coeffs(q, x, y, coeffs):
    """Base morphism P(x) -> I(y) with the given dual-path coefficients."""
    psum = proj_sum_of(q, x)
    tgt = injective(q, y)
    tgt_sum = inj_sum_of(q, y)
    gen = [_ZERO] * tgt.dim[x]
    for u, c in coeffs.items():
        gen[tgt_sum.pos[x][(0, u)]] += c
    return psum.hom_to(tgt, [gen])


def _psi_from_coeffs(q, x, y, coeffs):
    """Base morphism I(x) -> I(y): Nakayama image of the phi with the same
    path coefficients."""
    phi = _phi_from_coeffs(q, x, y, coeffs)
    return repa.nu_projsum_morphism(proj_sum_of(q, x), proj_sum_of(q, y), phi)


def lproj_blocks(P: LProjSum, Q: LProjSum, f: LModMorphism):
    """Decompose f: P -> Q into same-layer and connector-crossing blocks.

    Returns list of (j, l, kind, coeffs); kind "same" carries path
    coefficients (maps P(x_j,i) -> P(y_l,i)), kind "cross" dual-path
    coefficients (maps P(x_j,i) -> P(y_l,i+1)).
    """
    q = P.spec.base
    out = []
    for j, (x, i) in enumerate(P.members):
        lay, v, colpos = P.gen_position(j)
        col = f.parts[lay].mats[v].col(colpos) if f.parts[lay].mats[v].rows \
            else []
        consumed = {}
        for l, (y, il) in enumerate(Q.members):
            if il == i:
                psum = proj_sum_of(q, y)
                off = Q.piece_offset(l, lay, v)
                coeffs = {}
                for idx, (s, u) in enumerate(psum.basis[v]):
                    c = col[off + idx]
                    if c:
                        coeffs[u] = c
                        consumed[off + idx] = True
                if coeffs:
                    out.append((j, l, "same", coeffs))
                else:
                    for idx in range(len(psum.basis[v])):
                        consumed[off + idx] = True
            elif il == i + 1:
                isum = inj_sum_of(q, y)
                off = Q.piece_offset(l, lay, v)
                coeffs = {}
                for idx, (s, u) in enumerate(isum.basis[v]):
                    c = col[off + idx]
                    if c:
                        coeffs[u] = c
                        consumed[off + idx] = True
                if coeffs:
                    out.append((j, l, "cross", coeffs))
                else:
                    for idx in range(len(isum.basis[v])):
                        consumed[off + idx] = True
        for idx, c in enumerate(col):
            if c and not consumed.get(idx):
                raise ArithmeticError("unexpected component in projective-sum "
                                      "morphism block structure")
    return out


def nu_lproj_morphism(P: LProjSum, Q: LProjSum, f: LModMorphism):
    """Nakayama image of f between layered projective sums.

    Same-layer blocks (g, nu g) shift one layer up to (nu g, g); crossing
    blocks shift unchanged; components above layer m are truncated.
    """
    spec = P.spec
    q = spec.base
    m = spec.m
    nuP = LInjSum(spec, P.members)
    nuQ = LInjSum(spec, Q.members)
    contributions = []
    for (j, l, kind, coeffs) in lproj_blocks(P, Q, f):
        x, i = P.members[j]
        y, il = Q.members[l]
        if kind == "same":
            contributions.append((j, l, i, _psi_from_coeffs(q, x, y, coeffs)))
            if i < m:
                contributions.append((j, l, i + 1,
                                      _phi_from_coeffs(q, x, y, coeffs)))
        else:
            contributions.append((j, l, i + 1,
                                  _cross_from_coeffs(q, x, y, coeffs)))
    nud = _assemble(nuP.module, nuQ.module, nuP, nuQ, contributions)
    return nuP, nuQ, nud


def linj_blocks(I0: LInjSum, I1: LInjSum, g: LModMorphism):
    """Decompose g: I0 -> I1 into same-layer and crossing blocks."""
    q = I0.spec.base
    m = I0.spec.m
    out = []
    for j, (x, i) in enumerate(I0.members):
        if i < m:
            # read off the generator column of the P(x) piece at layer i+1
            psum = proj_sum_of(q, x)
            lay = i + 1
            colpos = I0.piece_offset(j, lay, x) + psum.gen_pos(0)
            col = g.parts[lay].mats[x].col(colpos) \
                if g.parts[lay].mats[x].rows else []
            for l, (y, il) in enumerate(I1.members):
                if il == i and il < m:
                    tsum = proj_sum_of(q, y)
                    off = I1.piece_offset(l, lay, x)
                    coeffs = {}
                    for idx, (s, u) in enumerate(tsum.basis[x]):
                        c = col[off + idx]
                        if c:
                            coeffs[u] = c
                    if coeffs:
                        out.append((j, l, "same", coeffs))
                elif il == i + 1:
                    tsum = inj_sum_of(q, y)
                    off = I1.piece_offset(l, lay, x)
                    coeffs = {}
                    for idx, (s, u) in enumerate(tsum.basis[x]):
                        c = col[off + idx]
                        if c:
                            coeffs[u] = c
                    if coeffs:
                        out.append((j, l, "cross", coeffs))
        else:
            # single-layer member: read rows at the socle coordinate of I(y)
            for l, (y, il) in enumerate(I1.members):
                if il != m:
                    continue
                isum_t = inj_sum_of(q, y)
                isum_s = inj_sum_of(q, x)
                rowpos = I1.piece_offset(l, m, y) + isum_t.pos[y][(0, ())]
                mat = g.parts[m].mats[y]
                if not mat.rows:
                    continue
                row = mat.data[rowpos]
                off = I0.piece_offset(j, m, y)
                coeffs = {}
                for idx, (s, u) in enumerate(isum_s.basis[y]):
                    c = row[off + idx]
                    if c:
                        coeffs[u] = c
                if coeffs:
                    out.append((j, l, "same", coeffs))
    return out


def nu_inv_linj_morphism(I0: LInjSum, I1: LInjSum, g: LModMorphism):
    """Inverse Nakayama image of g between layered injective sums."""
    spec = I0.spec
    q = spec.base
    P0 = LProjSum(spec, I0.members)
    P1 = LProjSum(spec, I1.members)
    contributions = []
    for (j, l, kind, coeffs) in linj_blocks(I0, I1, g):
        x, i = I0.members[j]
        y, il = I1.members[l]
        if kind == "same":
            contributions.append((j, l, i, _phi_from_coeffs(q, x, y, coeffs)))
            if i > 0:
                contributions.append((j, l, i - 1,
                                      _psi_from_coeffs(q, x, y, coeffs)))
        else:
            contributions.append((j, l, i, _cross_from_coeffs(q, x, y, coeffs)))
    nug = _assemble(P0.module, P1.module, P0, P1, contributions)
    return P0, P1, nug


# ---------------------------------------------------------------------------
# covers, envelopes, syzygies
# ---------------------------------------------------------------------------

def projective_cover_rep(M: LayeredModule):
    """Minimal projective cover (LProjSum, epi)."""
    if M.is_zero():
        raise ZeroModule("cover of the zero module")
    gens = top_data(M)
    P = LProjSum(M.spec, tuple((v, l) for l, v, _ in gens))
    epi = P.hom_to(M, [col for _, _, col in gens])
    if not epi.is_epi():
        raise ArithmeticError("projective cover failed to be surjective")
    return P, epi


def injective_envelope_rep(M: LayeredModule):
    """Minimal injective envelope (LInjSum, mono)."""
    if M.is_zero():
        raise ZeroModule("envelope of the zero module")
    q = M.quiver
    m = M.spec.m
    soc = socle_data(M)
    members, lams = [], []
    for l in range(m + 1):
        for x in q.vertices:
            s = soc[(l, x)]
            if s.cols:
                for lam in repa._dual_functionals(s, M.layers[l].dim[x]):
                    members.append((x, l))
                    lams.append((x, l, lam))
    I = LInjSum(M.spec, tuple(members))
    comps = []
    for j, (x, l, lam) in enumerate(lams):
        f_l = repa.functional_to_inj_morphism(M.layers[l], x, lam)
        parts = [None] * (m + 1)
        parts[l] = f_l
        if l < m:
            rhs = compose(f_l, M.connectors[l + 1])   # nu(M^{l+1}) -> I(x)
            hb = hom_basis(M.layers[l + 1], projective(q, x))
            nubs = [nu_morphism(h) for h in hb]
            cols, target = [], []
            for w in q.vertices:
                for r in range(rhs.mats[w].rows):
                    target.extend(rhs.mats[w].data[r])
            for nh in nubs:
                col = []
                for w in q.vertices:
                    for r in range(nh.mats[w].rows):
                        col.extend(nh.mats[w].data[r])
                cols.append(col)
            if target and any(t != 0 for t in target):
                sol = QMatrix.from_cols(cols, rows=len(target)).solve(target)
            else:
                sol = [_ZERO] * len(cols)
            f_up = None
            for c, h in zip(sol, hb):
                if c:
                    hm = h.scale(c)
                    f_up = hm if f_up is None else f_up.add(hm)
            if f_up is not None:
                parts[l + 1] = f_up
        comps.append(LModMorphism(M, I.components[j], parts))
    parts = []
    for lay in range(m + 1):
        mats = {}
        for v in q.vertices:
            blocks = [c.parts[lay].mats[v] for c in comps]
            mats[v] = QMatrix.vstack(blocks) if blocks else \
                QMatrix.zeros(0, M.layers[lay].dim[v])
        parts.append(AMorphism(M.layers[lay], I.module.layers[lay], mats))
    mono = LModMorphism(M, I.module, parts)
    if not mono.is_mono():
        raise ArithmeticError("injective envelope failed to be injective")
    return I, mono


def syzygy(M: LayeredModule):
    """Kernel of the minimal projective cover."""
    _, epi = projective_cover_rep(M)
    K, _ = kernel_rep(epi)
    return K


def cosyzygy(M: LayeredModule):
    """Cokernel of the minimal injective envelope."""
    _, mono = injective_envelope_rep(M)
    C, _ = cokernel_rep(mono)
    return C


def is_projective_rep(M: LayeredModule) -> bool:
    flag = M._cache.get("is_proj")
    if flag is None:
        flag = M.is_zero() or syzygy(M).is_zero()
        M._cache["is_proj"] = flag
    return flag


def is_injective_rep(M: LayeredModule) -> bool:
    flag = M._cache.get("is_inj")
    if flag is None:
        flag = M.is_zero() or cosyzygy(M).is_zero()
        M._cache["is_inj"] = flag
    return flag


def is_proj_inj(M: LayeredModule) -> bool:
    return is_projective_rep(M) and is_injective_rep(M)


# ---------------------------------------------------------------------------
# resolutions, projective dimension, Ext
# ---------------------------------------------------------------------------

@dataclass
class Resolution:
    covers: list        # LProjSum per degree
    diffs: list         # LModMorphism: covers[k].module -> covers[k-1].module
    augment: LModMorphism


def resolution(M: LayeredModule) -> Resolution:
    """Minimal projective resolution, computed to completion and cached."""
    res = M._cache.get("resolution")
    if res is None:
        horizon = 2 * M.spec.m + 2
        covers, diffs = [], []
        P0, eps = projective_cover_rep(M)
        covers.append(P0)
        K, prev_incl = kernel_rep(eps)
        while not K.is_zero():
            if len(covers) > horizon:
                raise ArithmeticError("resolution exceeded the global "
                                      "dimension bound; implementation bug")
            Pk, epsk = projective_cover_rep(K)
            covers.append(Pk)
            diffs.append(lcompose(prev_incl, epsk))
            K, prev_incl = kernel_rep(epsk)
        res = Resolution(covers, diffs, eps)
        M._cache["resolution"] = res
    return res


def pd_rep(M: LayeredModule) -> int:
    """Projective dimension via the minimal resolution (always finite)."""
    if M.is_zero():
        return 0
    return len(resolution(M).covers) - 1


def _hom_from_proj_dim(P: LProjSum, N: LayeredModule) -> int:
    return sum(N.layers[i].dim[x] for x, i in P.members)


def _ext_differential(P_k: LProjSum, P_km1: LProjSum, d: LModMorphism,
                      N: LayeredModule) -> QMatrix:
    """Matrix of Hom(d, N): Hom(P_{k-1}, N) -> Hom(P_k, N) in generator
    coordinates."""
    rows_dim = _hom_from_proj_dim(P_k, N)
    cols_dim = _hom_from_proj_dim(P_km1, N)
    out = QMatrix.zeros(rows_dim, cols_dim)
    col = 0
    for beta, (x, i) in enumerate(P_km1.members):
        n = N.layers[i].dim[x]
        for r in range(n):
            e = [_ONE if k == r else _ZERO for k in range(n)]
            rho = P_km1.hom_to(N, [
                e if b == beta else [_ZERO] * N.layers[xi[1]].dim[xi[0]]
                for b, xi in enumerate(P_km1.members)])
            row = 0
            for alpha in range(len(P_k.members)):
                lay, v, cpos = P_k.gen_position(alpha)
                vec = d.parts[lay].mats[v].col(cpos)
                val = rho.parts[lay].mats[v].apply(vec)
                for t in val:
                    out.data[row][col] = t
                    row += 1
            col += 1
    return out


def ext_dim(M: LayeredModule, N: LayeredModule, i: int) -> int:
    """dim Ext^i over the replicated algebra, from the minimal resolution."""
    if i < 1:
        raise ValueError("ext degree must be >= 1")
    if M.is_zero() or N.is_zero():
        return 0
    res = resolution(M)
    pd = len(res.covers) - 1
    if i > pd:
        return 0
    dim_i = _hom_from_proj_dim(res.covers[i], N)
    rank_in = _ext_differential(res.covers[i], res.covers[i - 1],
                                res.diffs[i - 1], N).rank()
    if i + 1 <= pd:
        rank_out = _ext_differential(res.covers[i + 1], res.covers[i],
                                     res.diffs[i], N).rank()
    else:
        rank_out = 0
    return dim_i - rank_in - rank_out


# ---------------------------------------------------------------------------
# AR translates
# ---------------------------------------------------------------------------

def tau_rep(M: LayeredModule) -> LayeredModule:
    """AR translate: kernel of the Nakayama image of a minimal presentation."""
    if M.is_zero():
        raise ZeroModule("tau of the zero module")
    P0, eps = projective_cover_rep(M)
    K, incl = kernel_rep(eps)
    if K.is_zero():
        raise ProjectiveInput("tau undefined on projective modules")
    P1, eps1 = projective_cover_rep(K)
    d = lcompose(incl, eps1)
    _, _, nud = nu_lproj_morphism(P1, P0, d)
    T, _ = kernel_rep(nud)
    return T


def tau_inv_rep(M: LayeredModule) -> LayeredModule:
    """Inverse AR translate via a minimal injective copresentation."""
    if M.is_zero():
        raise ZeroModule("tau^{-1} of the zero module")
    I0, iota = injective_envelope_rep(M)
    C, proj = cokernel_rep(iota)
    if C.is_zero():
        raise InjectiveInput("tau^{-1} undefined on injective modules")
    I1, iota1 = injective_envelope_rep(C)
    qmap = lcompose(iota1, proj)
    _, _, nug = nu_inv_linj_morphism(I0, I1, qmap)
    T, _ = cokernel_rep(nug)
    return T


# ---------------------------------------------------------------------------
# decomposition / isomorphism
# ---------------------------------------------------------------------------

def _layered_hooks():
    def end_basis(M):
        return hom_basis_rep(M, M)

    def compose_trace(f, g):
        return total_trace(lcompose(f, g))

    def vertex_blocks(f):
        out = {}
        for l, p in enumerate(f.parts):
            for v, mat in p.mats.items():
                out[(l, v)] = mat
        return out

    def power_split(M, power_blocks):
        parts = []
        for l in range(M.spec.m + 1):
            mats = {v: power_blocks[(l, v)] for v in M.quiver.vertices}
            parts.append(AMorphism(M.layers[l], M.layers[l], mats))
        f = LModMorphism(M, M, parts)
        K, _ = kernel_rep(f)
        I, _ = image_rep(f)
        return [K, I]

    return repa.SplitHooks(end_basis, compose_trace, vertex_blocks, power_split)


def decompose_rep(M: LayeredModule, seed=0):
    if M.is_zero():
        raise ZeroModule("decompose of the zero module")
    return repa.generic_decompose(M, _layered_hooks(), M.total_dim(), seed)


def is_indecomposable_rep(M: LayeredModule, seed=0) -> bool:
    if M.is_zero():
        raise ZeroModule("zero module is not indecomposable")
    return len(decompose_rep(M, seed)) == 1


def is_iso_rep(M: LayeredModule, N: LayeredModule, seed=0) -> bool:
    if M.dim_vector() != N.dim_vector():
        return False
    if M.total_dim() == 0:
        return True
    basis = hom_basis_rep(M, N)
    if not basis:
        return False
    for f in basis:
        if f.is_iso():
            return True
    import random as _random
    rng = _random.Random(seed)
    for _ in range(20):
        f = None
        for b in basis:
            c = rng.randint(-4, 4)
            if c:
                g = b.scale(c)
                f = g if f is None else f.add(g)
        if f is not None and f.is_iso():
            return True
    return False


# ---------------------------------------------------------------------------
# misc structure helpers
# ---------------------------------------------------------------------------

def loewy_series(M: LayeredModule):
    """Radical filtration quotients: list of {(vertex, layer): multiplicity}."""
    out = []
    cur = M
    while not cur.is_zero():
        R, _ = radical_sub(cur)
        layer = {}
        for l in range(M.spec.m + 1):
            for v in M.quiver.vertices:
                d = cur.layers[l].dim[v] - R.layers[l].dim[v]
                if d:
                    layer[(v, l)] = d
        out.append(layer)
        cur = R
    return out


def dual_path_action(M: LayeredModule, l: int, qpath, x, y) -> QMatrix:
    """Action of the dual-bimodule element attached to a path q: x -> y,
    mapping M^l(y) -> M^{l-1}(x)."""
    if l < 1:
        raise ValueError("dual-path action maps layer l >= 1 downward")
    layer = M.layers[l]
    pres = repa.minimal_presentation(layer)
    nd = nu_data(layer)
    n = layer.dim[y]
    isum = repa.InjSum(M.quiver, pres.p0.vertices)
    cols = []
    for r in range(n):
        e = [_ONE if k == r else _ZERO for k in range(n)]
        w = pres.pi.mats[y].solve(e)
        vec = [_ZERO] * isum.rep.dim[x]
        for idx, c in enumerate(w):
            if not c:
                continue
            s, p = pres.p0.basis[y][idx]
            k = len(p)
            if k == 0:
                xi = qpath
            elif len(qpath) >= k and qpath[len(qpath) - k:] == p:
                xi = qpath[:len(qpath) - k]
            else:
                continue
            pos = isum.pos[x].get((s, xi))
            if pos is not None:
                vec[pos] += c
        nu_vec = nd.proj.mats[x].apply(vec)
        cols.append(M.connectors[l].mats[x].apply(nu_vec))
    return QMatrix.from_cols(cols, rows=M.layers[l - 1].dim[x])
