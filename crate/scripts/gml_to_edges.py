"""Convert a Newman-style GML network (polbooks, polblogs) to the edge-list
and ground-truth files read by `edmot`.

    python3 scripts/gml_to_edges.py polbooks.gml data/polbooks

writes data/polbooks.edges and data/polbooks.labels, using each node's
`value` attribute as its community.
"""

import sys

import networkx as nx


def main(src: str, stem: str) -> None:
    with open(src, encoding="utf-8", errors="replace") as f:
        text = f.read()
    # polblogs repeats some arcs; a multigraph reader accepts them and the
    # edge list parser collapses duplicates later.
    if "multigraph" not in text:
        text = text.replace("graph\n[", "graph\n[\n  multigraph 1", 1).replace("graph [", "graph [\n  multigraph 1", 1)
    g = nx.parse_gml(text, label="id")
    with open(f"{stem}.edges", "w") as out:
        for u, v in g.edges():
            out.write(f"{u} {v}\n")
    with open(f"{stem}.labels", "w") as out:
        for node, attrs in g.nodes(data=True):
            out.write(f"{node} {str(attrs['value']).replace(' ', '_')}\n")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: gml_to_edges.py <input.gml> <output-stem>")
    main(sys.argv[1], sys.argv[2])
