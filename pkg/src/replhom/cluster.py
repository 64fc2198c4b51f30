"""The m-cluster category through its exact fundamental domain.

Indecomposable objects are stalks of base-algebra indecomposables in degrees
0..m-1 plus shifted projectives in degree m.  Orbit Hom groups are computed
by the hereditary stalk calculus (Hom in equal degree, first Ext one degree
up, the translate of a projective stalk dropping a degree); the orbit sum is
restricted to shifts -2..2 and the terms outside the two surviving shifts
are asserted to vanish at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import layered as L
from . import repa
from .errors import TheoremViolation, WindowViolation
from .quiver import ReplicationSpec, dynkin_type


@dataclass(frozen=True, order=True)
class ClusterObject:
    """(module stalk in degree 0..m-1) or (shifted projective in degree m)."""
    kind: str                 # "module" | "shifted_projective"
    index: object             # ind-A position, or base vertex
    degree: int

    def describe(self, ctx=None):
        if self.kind == "module":
            base = f"ind[{self.index}]"
            if ctx is not None:
                base = ctx.ind_name(self.index)
            return f"({base})[{self.degree}]"
        return f"P({self.index})[{self.degree}]"


class ClusterContext:
    """Stalk calculus and Ext tables for the m-cluster category."""

    def __init__(self, spec: ReplicationSpec, seed=0):
        if dynkin_type(spec.base) in (None, "kronecker"):
            raise repa.NotSupported("cluster enumeration needs a Dynkin base")
        self.spec = spec
        self.seed = seed
        q = spec.base
        self.ind = repa.enumerate_ind(q)
        self.n_ind = len(self.ind)
        self._proj_of = {}
        self._inj_of = {}
        for x in q.vertices:
            P, I = repa.projective(q, x), repa.injective(q, x)
            self._proj_of[x] = self._find(P)
            self._inj_of[x] = self._find(I)
        self._proj_idx = {v: k for k, v in self._proj_of.items()}
        self._inj_idx = {v: k for k, v in self._inj_of.items()}
        self._tau = {}
        self._tau_inv = {}
        for k, M in enumerate(self.ind):
            if k not in self._proj_idx:
                self._tau[k] = self._find(repa.tau_a(M))
            if k not in self._inj_idx:
                self._tau_inv[k] = self._find(repa.tau_inv_a(M))
        self._hom = {}
        self._ext1 = {}

    def _find(self, M):
        for k, N in enumerate(self.ind):
            if N.dim == M.dim and repa.is_iso_a(N, M, self.seed):
                return k
        raise TheoremViolation("module missing from the ind-A registry")

    def ind_name(self, k):
        M = self.ind[k]
        return "+".join(f"{v}^{M.dim[v]}" if M.dim[v] > 1 else v
                        for v in M.quiver.vertices if M.dim[v])

    def hom(self, a, b):
        key = (a, b)
        if key not in self._hom:
            self._hom[key] = repa.hom_dim(self.ind[a], self.ind[b])
        return self._hom[key]

    def ext1(self, a, b):
        key = (a, b)
        if key not in self._ext1:
            self._ext1[key] = repa.ext1_a(self.ind[a], self.ind[b])
        return self._ext1[key]

    # -- derived stalk calculus ---------------------------------------------------

    def _tau_stalk(self, stalk):
        k, d = stalk
        if k in self._proj_idx:
            return (self._inj_of[self._proj_idx[k]], d - 1)
        return (self._tau[k], d)

    def _tau_inv_stalk(self, stalk):
        k, d = stalk
        if k in self._inj_idx:
            return (self._proj_of[self._inj_idx[k]], d + 1)
        return (self._tau_inv[k], d)

    def _tau_power(self, stalk, e):
        for _ in range(abs(e)):
            stalk = self._tau_stalk(stalk) if e > 0 else \
                self._tau_inv_stalk(stalk)
        return stalk

    def _hom_derived(self, a, b):
        (ka, da), (kb, db) = a, b
        if db == da:
            return self.hom(ka, kb)
        if db == da + 1:
            return self.ext1(ka, kb)
        return 0

    def stalk(self, obj: ClusterObject):
        if obj.kind == "module":
            return (obj.index, obj.degree)
        return (self._proj_of[obj.index], obj.degree)

    # -- cluster Ext ------------------------------------------------------------

    def cluster_ext(self, X: ClusterObject, Y: ClusterObject, i: int) -> int:
        """Orbit Ext^i, 1 <= i <= m; shifts outside {-1, 0} must vanish."""
        m = self.spec.m
        if not 1 <= i <= m:
            raise ValueError(f"cluster ext degree {i} outside 1..m")
        xs = self.stalk(X)
        ys = self.stalk(Y)
        total = 0
        for s in (-2, -1, 0, 1, 2):
            obj = self._tau_power(ys, -s)
            shifted = (obj[0], obj[1] + m * s + i)
            h = self._hom_derived(xs, shifted)
            if h and s in (-2, 1, 2):
                raise WindowViolation(
                    f"nonzero orbit term at shift {s} for "
                    f"{X.describe(self)} -> {Y.describe(self)} in degree {i}")
            total += h
        return total

    # -- objects and enumeration ---------------------------------------------------

    def objects(self):
        """The indecomposable objects, canonically ordered."""
        out = [ClusterObject("module", k, d)
               for d in range(self.spec.m) for k in range(self.n_ind)]
        out.extend(ClusterObject("shifted_projective", x, self.spec.m)
                   for x in self.spec.base.vertices)
        return out

    def compatible(self, X, Y) -> bool:
        return all(self.cluster_ext(X, Y, i) == 0 and
                   self.cluster_ext(Y, X, i) == 0
                   for i in range(1, self.spec.m + 1))

    def is_exceptional_object(self, objs) -> bool:
        objs = list(objs)
        for X in objs:
            for Y in objs:
                if any(self.cluster_ext(X, Y, i)
                       for i in range(1, self.spec.m + 1)):
                    return False
        return True

    def is_tilting_object(self, objs) -> bool:
        objs = list(objs)
        return (len(set(objs)) == len(objs)
                and len(objs) == self.spec.base.n
                and self.is_exceptional_object(objs))

    def compatibility_pairs(self):
        objs = self.objects()
        table = {}
        for a in range(len(objs)):
            if not self.is_exceptional_object([objs[a]]):
                raise WindowViolation(
                    "an indecomposable object has a self-extension")
            for b in range(a + 1, len(objs)):
                table[(a, b)] = self.compatible(objs[a], objs[b])
        return objs, table

    def enumerate_tilting_objects(self):
        """All maximal pairwise-compatible sets (size = rank of the base)."""
        objs, table = self.compatibility_pairs()
        n = self.spec.base.n
        out = []

        def ok(a, chosen):
            return all(table[(min(a, c), max(a, c))] for c in chosen)

        def search(start, chosen):
            if len(chosen) == n:
                out.append(tuple(objs[c] for c in chosen))
                return
            if len(chosen) + (len(objs) - start) < n:
                return
            for c in range(start, len(objs)):
                if ok(c, chosen):
                    chosen.append(c)
                    search(c + 1, chosen)
                    chosen.pop()

        search(0, [])
        return out

    def compatibility_dot(self) -> str:
        objs, table = self.compatibility_pairs()
        lines = ["graph cluster_compatibility {", "  node [fontsize=10];"]
        for k, o in enumerate(objs):
            lines.append(f'  o{k} [label="{o.describe(self)}"];')
        for (a, b), ok in sorted(table.items()):
            if ok:
                lines.append(f"  o{a} -- o{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the projection functor and the tilting bijection
# ---------------------------------------------------------------------------

def pi_object(arq, node) -> ClusterObject:
    """Fundamental-domain label of a left-part node as a cluster object."""
    lab = arq.pi_label(node)
    if lab[0] == "mod":
        return ClusterObject("module", lab[1], lab[2])
    return ClusterObject("shifted_projective", lab[1], lab[2])


def verify_bijection(spec: ReplicationSpec, arq=None, tctx=None, cctx=None,
                     seed=0):
    """Double enumeration: tilting modules whose non-projective-injective
    summands lie in the left part, against tilting objects, matched by the
    projection functor.  Also matches exceptional sets of every size up to
    the rank.  Returns a JSON-ready report; violations list is empty on
    success."""
    from .arquiver import ARQuiver
    from .tilting import TiltingContext

    arq = arq or ARQuiver(spec, seed=seed)
    tctx = tctx or TiltingContext(spec, arq=arq, seed=seed)
    cctx = cctx or ClusterContext(spec, seed=seed)
    n = spec.base.n
    m = spec.m
    horizon = 2 * m + 1

    pool = arq.left_part_non_proj_inj()
    mods = {i: arq.nodes[i].module for i in pool}

    def mod_compat(a, b):
        return all(L.ext_dim(mods[a], mods[b], i) == 0 and
                   L.ext_dim(mods[b], mods[a], i) == 0
                   for i in range(1, horizon + 1))

    self_ok = {i: all(L.ext_dim(mods[i], mods[i], k) == 0
                      for k in range(1, horizon + 1)) for i in pool}
    pair_ok = {}
    for a, b in combinations(pool, 2):
        pair_ok[(a, b)] = mod_compat(a, b)

    def compatible_sets(size):
        found = []

        def search(start, chosen):
            if len(chosen) == size:
                found.append(tuple(chosen))
                return
            for k in range(start, len(pool)):
                c = pool[k]
                if not self_ok[c]:
                    continue
                if all(pair_ok[(min(c, o), max(c, o))] for o in chosen):
                    chosen.append(c)
                    search(k + 1, chosen)
                    chosen.pop()

        search(0, [])
        return found

    violations = []

    # tilting level
    module_tilting = []
    for cand in compatible_sets(n):
        full = [mods[i] for i in cand] + list(tctx.proj_inj)
        if tctx.is_tilting(full):
            module_tilting.append(cand)
        else:
            violations.append({"kind": "counting_criterion",
                               "summands": [f"n{i}" for i in cand]})
    cluster_tilting = cctx.enumerate_tilting_objects()
    cluster_tilting_sets = {frozenset(t) for t in cluster_tilting}
    matched = []
    seen = set()
    for cand in module_tilting:
        image = frozenset(pi_object(arq, i) for i in cand)
        if image in seen:
            violations.append({"kind": "not_injective",
                               "summands": [f"n{i}" for i in cand]})
        seen.add(image)
        if image not in cluster_tilting_sets:
            violations.append({"kind": "image_not_tilting",
                               "summands": [f"n{i}" for i in cand]})
        else:
            matched.append({
                "module_side": sorted(f"n{i}" for i in cand),
                "cluster_side": sorted(o.describe(cctx) for o in image),
            })
    if len(seen) != len(cluster_tilting_sets):
        unmatched = cluster_tilting_sets - seen
        violations.append({
            "kind": "not_surjective",
            "objects": [sorted(o.describe(cctx) for o in t)
                        for t in sorted(map(sorted, map(list, unmatched)),
                                        key=str)],
        })

    # exceptional level: sets of every size map bijectively
    exceptional_counts = {}
    for size in range(1, n + 1):
        mod_sets = {frozenset(pi_object(arq, i) for i in cand)
                    for cand in compatible_sets(size)}
        clu_sets = set()
        objs, table = cctx.compatibility_pairs()
        idx = {o: k for k, o in enumerate(objs)}

        def cl_search(start, chosen):
            if len(chosen) == size:
                clu_sets.add(frozenset(objs[c] for c in chosen))
                return
            for c in range(start, len(objs)):
                if all(table[(min(c, o), max(c, o))] for o in chosen):
                    chosen.append(c)
                    cl_search(c + 1, chosen)
                    chosen.pop()

        cl_search(0, [])
        exceptional_counts[size] = {"module_side": len(mod_sets),
                                    "cluster_side": len(clu_sets)}
        if mod_sets != clu_sets:
            violations.append({"kind": "exceptional_mismatch", "size": size})

    report = {
        "base": list(spec.base.vertices),
        "m": m,
        "module_side_count": len(module_tilting),
        "cluster_side_count": len(cluster_tilting),
        "object_universe": m * cctx.n_ind + n,
        "left_part_non_proj_inj": len(pool),
        "matched": sorted(matched, key=lambda e: e["module_side"]),
        "exceptional_counts": exceptional_counts,
        "violations": violations,
    }
    return report
