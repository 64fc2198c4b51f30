"""The Auslander-Reiten quiver of the replicated algebra (Dynkin base).

Nodes are iso-classes of indecomposables, found by closing the projectives
and injectives under the AR translates.  Arrows are knitted mesh by mesh:
arrows into a projective come from the radical decomposition, arrows into a
non-projective Y are transported from the arrows out of tau(Y); dimension
additivity of every mesh is asserted.  On top of the quiver sit the path
order, the cosyzygy slices, projective dimension with its position/witness
cross-checks, and the left part that serves as the cluster fundamental
domain.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from . import layered as L
from . import repa
from .errors import ClosureIncomplete, NotInDomain, TheoremViolation
from .quiver import ReplicationSpec, dynkin_type


@dataclass
class Node:
    idx: int
    module: L.LayeredModule
    proj_site: tuple | None = None
    inj_site: tuple | None = None
    tau: int | None = None
    tau_inv: int | None = None

    @property
    def is_projective(self):
        return self.proj_site is not None

    @property
    def is_injective(self):
        return self.inj_site is not None

    @property
    def is_proj_inj(self):
        return self.is_projective and self.is_injective


_MAX_ORBIT = 4096


class ARQuiver:
    """AR quiver of the m-replicated algebra of a Dynkin quiver."""

    def __init__(self, spec: ReplicationSpec, seed=0):
        if dynkin_type(spec.base) in (None, "kronecker"):
            raise repa.NotSupported("AR quiver construction needs a Dynkin base")
        self.spec = spec
        self.seed = seed
        self.nodes: list[Node] = []
        self._buckets = {}
        self.in_arrows = {}
        self.out_arrows = {}
        self._pd = {}
        self._slices = {}
        self._labels = None
        self._ind_a = None
        self._build()

    # -- registry ------------------------------------------------------------

    def _register(self, module) -> Node:
        key = module.dim_vector()
        bucket = self._buckets.setdefault(key, [])
        for idx in bucket:
            if L.is_iso_rep(self.nodes[idx].module, module, self.seed):
                return self.nodes[idx]
        node = Node(len(self.nodes), module)
        self.nodes.append(node)
        bucket.append(node.idx)
        return node

    def find_node(self, module) -> Node:
        key = module.dim_vector()
        for idx in self._buckets.get(key, ()):
            if L.is_iso_rep(self.nodes[idx].module, module, self.seed):
                return self.nodes[idx]
        raise ClosureIncomplete(
            "module missing from the tau-closure node set", witness=module)

    # -- construction ----------------------------------------------------------

    def _build(self):
        spec = self.spec
        q = spec.base
        m = spec.m
        proj_nodes = {}
        for i in range(m + 1):
            for x in q.vertices:
                node = self._register(L.projective_rep(spec, x, i))
                node.proj_site = (x, i)
                proj_nodes[(x, i)] = node
        for i in range(m + 1):
            for x in q.vertices:
                if i < m:
                    node = proj_nodes[(x, i + 1)]
                else:
                    node = self._register(L.injective_rep(spec, x, m))
                node.inj_site = (x, i)
        seeds = [n.idx for n in list(self.nodes)]
        for idx in seeds:
            self._walk_forward(self.nodes[idx])
            self._walk_backward(self.nodes[idx])

        rad_parts = {}
        radmap = {}
        for (x, i), pnode in sorted(proj_nodes.items()):
            R, _ = L.radical_sub(pnode.module)
            entries = []
            if not R.is_zero():
                counts = {}
                for s in L.decompose_rep(R, self.seed):
                    snode = self.find_node(s)
                    counts[snode.idx] = counts.get(snode.idx, 0) + 1
                entries = sorted(counts.items())
            rad_parts[pnode.idx] = entries
            for sidx, mult in entries:
                radmap.setdefault(sidx, []).append((pnode.idx, mult))

        processed = set()
        queue = deque()
        for node in self.nodes:
            if node.is_projective:
                self.in_arrows[node.idx] = rad_parts[node.idx]
                queue.append(node.idx)
        while queue:
            idx = queue.popleft()
            if idx in processed:
                continue
            processed.add(idx)
            node = self.nodes[idx]
            out = {}
            for pidx, mult in radmap.get(idx, ()):
                out[pidx] = out.get(pidx, 0) + mult
            for sidx, mult in self.in_arrows.get(idx, ()):
                snode = self.nodes[sidx]
                if not snode.is_injective:
                    if snode.tau_inv is None:
                        raise ClosureIncomplete(
                            "missing tau-inverse during knitting",
                            witness=snode.module)
                    out[snode.tau_inv] = out.get(snode.tau_inv, 0) + mult
            self.out_arrows[idx] = sorted(out.items())
            if not node.is_injective:
                nxt = node.tau_inv
                self.in_arrows[nxt] = sorted(out.items())
                queue.append(nxt)
        if len(processed) != len(self.nodes):
            missing = [n for n in self.nodes if n.idx not in processed]
            raise ClosureIncomplete("knitting did not reach every node",
                                    witness=missing[0].module)

        self._check_meshes()
        self._check_injective_quotients()
        self._toposort()

    def _walk_forward(self, node):
        for _ in range(_MAX_ORBIT):
            if node.is_injective:
                return
            if node.tau_inv is not None:
                node = self.nodes[node.tau_inv]
                continue
            nxt = self._register(L.tau_inv_rep(node.module))
            if nxt.tau is not None and nxt.tau != node.idx:
                raise TheoremViolation("inconsistent tau pairing",
                                       witness=nxt.module)
            node.tau_inv, nxt.tau = nxt.idx, node.idx
            node = nxt
        raise ClosureIncomplete("tau-inverse orbit did not terminate",
                                witness=node.module)

    def _walk_backward(self, node):
        for _ in range(_MAX_ORBIT):
            if node.is_projective:
                return
            if node.tau is not None:
                node = self.nodes[node.tau]
                continue
            prv = self._register(L.tau_rep(node.module))
            if prv.tau_inv is not None and prv.tau_inv != node.idx:
                raise TheoremViolation("inconsistent tau pairing",
                                       witness=prv.module)
            node.tau, prv.tau_inv = prv.idx, node.idx
            node = prv
        raise ClosureIncomplete("tau orbit did not terminate",
                                witness=node.module)

    def _check_meshes(self):
        for node in self.nodes:
            if node.is_projective:
                continue
            tau_node = self.nodes[node.tau]
            lhs = [0] * len(node.module.dim_vector())
            for sidx, mult in self.in_arrows[node.idx]:
                for k, d in enumerate(self.nodes[sidx].module.dim_vector()):
                    lhs[k] += mult * d
            rhs = [a + b for a, b in zip(tau_node.module.dim_vector(),
                                         node.module.dim_vector())]
            if lhs != rhs:
                raise ClosureIncomplete("mesh dimension additivity failed",
                                        witness=node.module)

    def _check_injective_quotients(self):
        for node in self.nodes:
            if not node.is_injective:
                continue
            soc = L.socle_data(node.module)
            cols = [{v: soc[(l, v)] for v in self.spec.base.vertices}
                    for l in range(self.spec.m + 1)]
            S, incl = L.layered_sub(node.module, cols)
            Q, _ = L.cokernel_rep(incl)
            counts = {}
            if not Q.is_zero():
                for s in L.decompose_rep(Q, self.seed):
                    snode = self.find_node(s)
                    counts[snode.idx] = counts.get(snode.idx, 0) + 1
            if sorted(counts.items()) != self.out_arrows[node.idx]:
                raise ClosureIncomplete(
                    "arrows out of an injective do not match its socle "
                    "quotient", witness=node.module)

    def _toposort(self):
        indeg = {n.idx: 0 for n in self.nodes}
        for idx, outs in self.out_arrows.items():
            for tgt, _ in outs:
                indeg[tgt] += 1
        order, ready = [], sorted(i for i, d in indeg.items() if d == 0)
        ready = deque(ready)
        while ready:
            i = ready.popleft()
            order.append(i)
            for tgt, _ in self.out_arrows[i]:
                indeg[tgt] -= 1
                if indeg[tgt] == 0:
                    ready.append(tgt)
        if len(order) != len(self.nodes):
            raise TheoremViolation("AR quiver of the replicated algebra "
                                   "must be directed")
        self.topo_order = order
        desc = {i: 1 << i for i in indeg}
        for i in reversed(order):
            for tgt, _ in self.out_arrows[i]:
                desc[i] |= desc[tgt]
        self._desc = desc

    # -- path order ------------------------------------------------------------

    def leq(self, a, b) -> bool:
        """Path order: a <= b iff b is reachable from a (or equal)."""
        ia = a.idx if isinstance(a, Node) else a
        ib = b.idx if isinstance(b, Node) else b
        return bool((self._desc[ia] >> ib) & 1)

    def predecessors(self, node) -> list:
        i = node.idx if isinstance(node, Node) else node
        return [n.idx for n in self.nodes if self.leq(n.idx, i)]

    def set_leq(self, s1, s2) -> bool:
        """Set order on node sets (used for consecutive slices)."""
        s1, s2 = list(s1), list(s2)
        if not all(any(self.leq(a, b) for a in s1) for b in s2):
            return False
        if not all(any(self.leq(a, b) for b in s2) for a in s1):
            return False
        if any(self.leq(b, a) and a != b for a in s1 for b in s2):
            return False
        return True

    # -- slices and projective dimension ----------------------------------------

    def sigma_slice(self, k):
        """Sigma_k: the k-th cosyzygies of the level-0 projectives."""
        if not 0 <= k <= self.spec.m:
            raise ValueError(f"slice index {k} outside 0..m")
        if k not in self._slices:
            members = []
            for x in self.spec.base.vertices:
                M = L.projective_rep(self.spec, x, 0)
                for _ in range(k):
                    M = L.cosyzygy(M)
                members.append(self.find_node(M).idx)
            if len(set(members)) != self.spec.base.n:
                raise TheoremViolation("slice members are not distinct")
            self._slices[k] = members
        return self._slices[k]

    def slice_position(self, node):
        """min k <= m with node <= Sigma_k, or None."""
        i = node.idx if isinstance(node, Node) else node
        for k in range(self.spec.m + 1):
            if any(self.leq(i, s) for s in self.sigma_slice(k)):
                return k
        return None

    def pd(self, node) -> int:
        i = node.idx if isinstance(node, Node) else node
        if i not in self._pd:
            self._pd[i] = L.pd_rep(self.nodes[i].module)
        return self._pd[i]

    def ind_a_nodes(self):
        """Level-0 nodes in the canonical order of ind A."""
        if self._ind_a is None:
            ind = repa.enumerate_ind(self.spec.base)
            out = []
            for N in ind:
                out.append(self.find_node(L.from_level(self.spec, N, 0)).idx)
            if len(set(out)) != len(ind):
                raise ClosureIncomplete("level-0 part does not match ind A")
            self._ind_a = out
        return self._ind_a

    def fundamental_domain_labels(self):
        """Labels of the non-projective-injective left-part nodes.

        ("mod", ind-A index, degree k-1) for the (k-1)-st cosyzygy of an
        ind-A module (1 <= k <= m), ("shift", vertex, m) for the last slice.
        """
        if self._labels is None:
            labels = {}
            m = self.spec.m
            for pos, nidx in enumerate(self.ind_a_nodes()):
                M = self.nodes[nidx].module
                for k in range(1, m + 1):
                    node = self.find_node(M)
                    if node.is_proj_inj:
                        raise TheoremViolation(
                            "fundamental domain hit a projective-injective",
                            witness=node.module)
                    if node.idx in labels:
                        raise TheoremViolation(
                            "fundamental domain labels collide",
                            witness=node.module)
                    labels[node.idx] = ("mod", pos, k - 1)
                    if k < m:
                        M = L.cosyzygy(M)
            for x in self.spec.base.vertices:
                M = L.projective_rep(self.spec, x, 0)
                for _ in range(m):
                    M = L.cosyzygy(M)
                node = self.find_node(M)
                if node.is_proj_inj or node.idx in labels:
                    raise TheoremViolation("last-slice labels collide",
                                           witness=node.module)
                labels[node.idx] = ("shift", x, m)
            self._labels = labels
        return self._labels

    def projective_dimension(self, node) -> int:
        """pd by minimal resolution, cross-checked against the slice position
        and the translate-of-cosyzygy witness when both apply."""
        n = node if isinstance(node, Node) else self.nodes[node]
        k = self.pd(n.idx)
        if not n.is_projective and not n.is_proj_inj and 1 <= k <= self.spec.m:
            pos = self.slice_position(n.idx)
            if pos != k:
                raise TheoremViolation(
                    f"slice position {pos} disagrees with pd {k}",
                    witness=n.module)
            if n.idx not in self._witness_set(k):
                raise TheoremViolation(
                    f"no translate-of-cosyzygy witness for pd {k}",
                    witness=n.module)
        return k

    def _witness_set(self, k):
        """Nodes of the form tau^{-1} of the (k-1)-st cosyzygy of ind A."""
        key = ("witness", k)
        if key not in self._pd:
            out = set()
            for nidx in self.ind_a_nodes():
                M = self.nodes[nidx].module
                for _ in range(k - 1):
                    M = L.cosyzygy(M)
                    if M.is_zero():
                        M = None
                        break
                if M is None:
                    continue
                node = self.find_node(M)
                if node.is_injective:
                    continue
                out.add(node.tau_inv)
            self._pd[key] = out
        return self._pd[key]

    def check_trichotomy(self):
        """pd = slice position = witness membership for 1 <= pd <= m;
        anything of larger pd must sit beyond the last slice."""
        m = self.spec.m
        for node in self.nodes:
            k = self.pd(node.idx)
            if k > 2 * m + 1:
                raise TheoremViolation("global dimension bound violated",
                                       witness=node.module)
            if node.is_projective:
                continue
            if k <= m:
                if not node.is_proj_inj:
                    self.projective_dimension(node)
            else:
                if self.slice_position(node.idx) is not None:
                    raise TheoremViolation(
                        f"pd {k} > m yet the module precedes a slice",
                        witness=node.module)
        return True

    def m_left_part(self):
        """Nodes all of whose predecessors have pd <= m.

        The direct definition, the cosyzygy-family membership and the
        position characterization are computed independently and must agree
        on non-projective-injective nodes.
        """
        m = self.spec.m
        by_def = set()
        for node in self.nodes:
            if all(self.pd(p) <= m for p in self.predecessors(node)):
                by_def.add(node.idx)
        by_family = set(self.fundamental_domain_labels())
        sig_m = self.sigma_slice(m)
        by_pos = {node.idx for node in self.nodes
                  if any(self.leq(node.idx, s) for s in sig_m)}
        non_pi = {n.idx for n in self.nodes if not n.is_proj_inj}
        if by_def & non_pi != by_family:
            raise TheoremViolation("left part definition disagrees with the "
                                   "cosyzygy-family characterization")
        if by_def & non_pi != by_pos & non_pi:
            raise TheoremViolation("left part definition disagrees with the "
                                   "position characterization")
        return by_def

    def left_part_non_proj_inj(self):
        return sorted(self.fundamental_domain_labels())

    def pi_label(self, node):
        i = node.idx if isinstance(node, Node) else node
        labels = self.fundamental_domain_labels()
        if i not in labels:
            raise NotInDomain("node is not in the fundamental domain")
        return labels[i]

    # -- theorem suites ----------------------------------------------------------

    def check_commutation(self):
        """Cosyzygy and inverse translate commute wherever both composites
        are defined and nonzero."""
        for node in self.nodes:
            if node.is_injective:
                continue
            t = L.tau_inv_rep(node.module)
            ct = L.cosyzygy(t)
            c = L.cosyzygy(node.module)
            if c.is_zero() or ct.is_zero():
                continue
            if L.is_injective_rep(c):
                continue
            tc = L.tau_inv_rep(c)
            if tc.is_zero():
                continue
            if not L.is_iso_rep(ct, tc, self.seed):
                raise TheoremViolation(
                    "cosyzygy and inverse translate do not commute",
                    witness=node.module)
        return True

    def check_syzygy_duality(self):
        """Along chains of projective-injective envelopes, the j-th cosyzygy
        of the start matches the (k+1-j)-th syzygy of the end."""
        m = self.spec.m
        for node in self.nodes:
            chain = [node.module]
            for _ in range(m + 1):
                cur = chain[-1]
                if cur.is_zero():
                    break
                I, _ = L.injective_envelope_rep(cur)
                if any(i == m for _, i in I.members):
                    break   # envelope not projective-injective
                nxt = L.cosyzygy(cur)
                if nxt.is_zero():
                    break
                chain.append(nxt)
            k_plus_1 = len(chain) - 1
            if k_plus_1 < 1:
                continue
            N = chain[-1]
            back = [N]
            for _ in range(k_plus_1):
                back.append(L.syzygy(back[-1]))
            for j in range(k_plus_1 + 1):
                if not L.is_iso_rep(chain[j], back[k_plus_1 - j], self.seed):
                    raise TheoremViolation(
                        "syzygy-cosyzygy duality failed along a "
                        "projective-injective coresolution",
                        witness=node.module)
        return True

    def check_global_dimension(self):
        bound = 2 * self.spec.m + 1
        for node in self.nodes:
            if self.pd(node.idx) > bound:
                raise TheoremViolation("projective dimension exceeds the "
                                       "global dimension bound",
                                       witness=node.module)
        return True

    # -- output -------------------------------------------------------------------

    def node_label(self, node) -> str:
        n = node if isinstance(node, Node) else self.nodes[node]
        lay = L.loewy_series(n.module)
        rows = []
        for level in lay:
            parts = []
            for (v, l), mult in sorted(level.items()):
                parts.extend([f"{v}{l}"] * mult)
            rows.append(" ".join(parts))
        return "/".join(rows) if rows else "0"

    def node_table(self):
        labels = self.fundamental_domain_labels()
        left = self.m_left_part()
        slices = {k: set(self.sigma_slice(k)) for k in range(self.spec.m + 1)}
        table = []
        for node in self.nodes:
            entry = {
                "id": f"n{node.idx}",
                "label": self.node_label(node),
                "dims": {f"{v}_{l}": node.module.layers[l].dim[v]
                         for l in range(self.spec.m + 1)
                         for v in self.spec.base.vertices
                         if node.module.layers[l].dim[v]},
                "layer_support": list(node.module.layer_support()),
                "pd": self.pd(node.idx),
                "projective": node.is_projective,
                "injective": node.is_injective,
                "projective_injective": node.is_proj_inj,
                "tau": None if node.tau is None else f"n{node.tau}",
                "tau_inv": None if node.tau_inv is None else f"n{node.tau_inv}",
                "slices": sorted(k for k, s in slices.items()
                                 if node.idx in s),
                "in_left_part": node.idx in left,
            }
            lab = labels.get(node.idx)
            if lab is not None:
                if lab[0] == "mod":
                    entry["cluster_label"] = {"kind": "module",
                                              "ind_index": lab[1],
                                              "degree": lab[2]}
                else:
                    entry["cluster_label"] = {"kind": "shifted_projective",
                                              "vertex": lab[1],
                                              "degree": lab[2]}
            table.append(entry)
        return table

    def to_dot(self) -> str:
        left = self.m_left_part()
        slices = {k: set(self.sigma_slice(k)) for k in range(self.spec.m + 1)}
        lines = ["digraph ar_quiver {", "  rankdir=LR;",
                 '  node [fontsize=10];']
        for i in self.topo_order:
            node = self.nodes[i]
            attrs = [f'label="{self.node_label(node)}"']
            if node.is_proj_inj:
                attrs.append("shape=box")
                attrs.append("peripheries=2")
            elif node.is_projective or node.is_injective:
                attrs.append("shape=box")
            else:
                attrs.append("shape=ellipse")
            if i in left:
                attrs.append("style=filled")
                attrs.append("fillcolor=lightgrey")
            marks = [f"S{k}" for k, s in slices.items() if i in s]
            if marks:
                attrs.append(f'xlabel="{",".join(marks)}"')
            lines.append(f'  n{i} [{", ".join(attrs)}];')
        for i in self.topo_order:
            for tgt, mult in self.out_arrows[i]:
                lbl = f' [label="{mult}"]' if mult > 1 else ""
                lines.append(f"  n{i} -> n{tgt}{lbl};")
        for node in self.nodes:
            if node.tau_inv is not None:
                lines.append(f"  n{node.tau_inv} -> n{node.idx} "
                             "[style=dashed, color=gray, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def table_json(self) -> str:
        return json.dumps({
            "base_vertices": list(self.spec.base.vertices),
            "m": self.spec.m,
            "node_count": len(self.nodes),
            "nodes": self.node_table(),
            "arrows": [{"src": f"n{i}", "tgt": f"n{t}", "mult": mu}
                       for i in self.topo_order
                       for t, mu in self.out_arrows[i]],
        }, indent=2, sort_keys=True)
