#!/usr/bin/env python3
"""Regenerate the small planar graph corpus and the reference embeddings.

Writes, under tests/data/:
  planar_le8.g6       every connected simple planar graph on 1..8 vertices
                      with at most 14 edges, one per isomorphism class
  icosahedron.rot     rotation system of the icosahedron
  dodecahedron.rot    rotation system of the dodecahedron

Usage: python3 tools/gen_corpus.py [outdir]
"""
import sys
from pathlib import Path

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

MAX_EDGES = 14


def keep(g):
    return (g.number_of_nodes() >= 1 and nx.is_connected(g)
            and g.number_of_edges() <= MAX_EDGES and nx.check_planarity(g)[0])


def eight_vertex_graphs(seven):
    buckets = {}
    for base in seven:
        nodes = list(base.nodes())
        for mask in range(1, 1 << 7):
            g = base.copy()
            g.add_node(7)
            for i in range(7):
                if mask >> i & 1:
                    g.add_edge(nodes[i], 7)
            if g.number_of_edges() > MAX_EDGES or not keep(g):
                continue
            key = (nx.weisfeiler_lehman_graph_hash(g, iterations=4),
                   tuple(sorted(d for _, d in g.degree())))
            bucket = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(g, h) for h in bucket):
                bucket.append(g)
    return [g for bucket in buckets.values() for g in bucket]


def write_rotation(path, g, title):
    ok, emb = nx.check_planarity(g)
    assert ok
    with open(path, "w") as f:
        f.write(f"# {title}: {g.number_of_nodes()} vertices, "
                f"{g.number_of_edges()} edges, clockwise rotation per vertex\n")
        for v in sorted(g.nodes()):
            f.write(f"{v}: " + " ".join(str(w) for w in emb.neighbors_cw_order(v)) + "\n")


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "data")
    out.mkdir(parents=True, exist_ok=True)
    atlas = graph_atlas_g()
    small = [g for g in atlas if 1 <= g.number_of_nodes() <= 7 and keep(g)]
    seven_all = [g for g in atlas if g.number_of_nodes() == 7]
    eight = eight_vertex_graphs(seven_all)
    corpus = small + eight
    with open(out / "planar_le8.g6", "w") as f:
        for g in corpus:
            g = nx.convert_node_labels_to_integers(g)
            f.write(nx.to_graph6_bytes(g, header=False).decode().strip() + "\n")
    print(f"{len(small)} graphs on <=7 vertices, {len(eight)} on 8 vertices")
    write_rotation(out / "icosahedron.rot", nx.icosahedral_graph(), "icosahedron")
    write_rotation(out / "dodecahedron.rot", nx.dodecahedral_graph(), "dodecahedron")


if __name__ == "__main__":
    main()
