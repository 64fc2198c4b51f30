"""Walk through the AR quiver of a replicated path algebra.

Builds the duplicated algebra of A_2 (the two-vertex quiver b -> a), prints
every indecomposable with its Loewy label, projective dimension and slice
membership, and writes the quiver to DOT.  Then does the same scan for the
three-vertex source quiver replicated twice, whose projectives show the
characteristic tied layers.

Run:  python demos/ar_quiver_walkthrough.py [outdir]
"""

import sys

from replhom.arquiver import ARQuiver
from replhom.quiver import Quiver, ReplicationSpec


def scan(name, quiver, m):
    print(f"== {name}, m = {m} ==")
    arq = ARQuiver(ReplicationSpec(quiver, m))
    slices = {k: set(arq.sigma_slice(k)) for k in range(m + 1)}
    left = arq.m_left_part()
    print(f"{len(arq.nodes)} indecomposables, "
          f"{sum(1 for n in arq.nodes if n.is_proj_inj)} projective-injective")
    for i in arq.topo_order:
        node = arq.nodes[i]
        tags = []
        if node.is_proj_inj:
            tags.append("proj-inj")
        elif node.is_projective:
            tags.append("proj")
        elif node.is_injective:
            tags.append("inj")
        for k, s in slices.items():
            if i in s:
                tags.append(f"slice {k}")
        if i in left:
            tags.append("left part")
        print(f"  {arq.node_label(node):<12} pd={arq.pd(i)}  "
              f"{', '.join(tags)}")
    print("meshes (tau written M <- N):")
    for node in arq.nodes:
        if node.tau is not None:
            print(f"  {arq.node_label(node.tau):<12} <- "
                  f"{arq.node_label(node)}")
    print()
    return arq


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    a2 = Quiver(["a", "b"], [("beta", "b", "a")])
    arq = scan("A2", a2, 1)
    path = f"{outdir}/a2_duplicated.dot"
    with open(path, "w") as fh:
        fh.write(arq.to_dot())
    print(f"wrote {path}")

    ts = Quiver(["a", "b", "c"], [("alpha", "b", "a"), ("beta", "b", "c")])
    scan("three-vertex source quiver", ts, 2)


if __name__ == "__main__":
    main()
