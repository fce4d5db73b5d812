"""Graph file exports: GraphML, DOT and edge CSV.

Nodes carry the three attributes external viewers need to reproduce the
standard visual mapping: in-degree (size), global status count (color)
and global follower count (opacity). Element ordering is sorted ids, so
exports are byte-reproducible.
"""

from __future__ import annotations

import csv
from xml.sax.saxutils import escape, quoteattr

from .graph import DirectedGraph

FORMATS = ("graphml", "dot", "edge-csv")

_NODE_KEYS = ("in_degree", "statuses_count", "followers_count")


def _node_attributes(g: DirectedGraph, attributes):
    rows = {}
    for node in sorted(g.nodes):
        record = attributes.get(node) if attributes else None
        rows[node] = {
            "in_degree": len(g.in_neighbors(node)),
            "statuses_count": record.statuses_count_global if record else 0,
            "followers_count": record.followers_count_global if record else 0,
        }
    return rows


def _write_graphml(g, attributes, handle):
    handle.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    handle.write(
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns"\n'
        '         xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"\n'
        '         xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns'
        ' http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">\n'
    )
    for i, key in enumerate(_NODE_KEYS):
        handle.write(
            f'  <key id="d{i}" for="node" attr.name="{key}" attr.type="long"/>\n'
        )
    handle.write('  <graph id="G" edgedefault="directed">\n')
    rows = _node_attributes(g, attributes)
    for node, attrs in rows.items():
        handle.write(f"    <node id={quoteattr(node)}>\n")
        for i, key in enumerate(_NODE_KEYS):
            handle.write(f'      <data key="d{i}">{attrs[key]}</data>\n')
        handle.write("    </node>\n")
    for s, t in g.sorted_edges():
        handle.write(f"    <edge source={quoteattr(s)} target={quoteattr(t)}/>\n")
    handle.write("  </graph>\n</graphml>\n")


def _write_dot(g, attributes, handle):
    handle.write("digraph G {\n")
    rows = _node_attributes(g, attributes)
    for node, attrs in rows.items():
        attr_text = ", ".join(f"{k}={attrs[k]}" for k in _NODE_KEYS)
        handle.write(f'  "{escape(node)}" [{attr_text}];\n')
    for s, t in g.sorted_edges():
        handle.write(f'  "{escape(s)}" -> "{escape(t)}";\n')
    handle.write("}\n")


def _write_edge_csv(g, handle):
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["source", "target"])
    for s, t in g.sorted_edges():
        writer.writerow([s, t])


def export_graph(g: DirectedGraph, attributes, fmt: str, path) -> None:
    """Write the graph to path in the requested format."""
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; choose one of {FORMATS}")
    with open(path, "w", encoding="utf-8", newline="") as handle:
        if fmt == "graphml":
            _write_graphml(g, attributes, handle)
        elif fmt == "dot":
            _write_dot(g, attributes, handle)
        else:
            _write_edge_csv(g, handle)


def parse_edge_csv(path) -> DirectedGraph:
    """Reparse an edge CSV written by export_graph."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != ["source", "target"]:
            raise ValueError(f"unexpected edge CSV header: {header}")
        edges = [(row[0], row[1]) for row in reader if row]
    return DirectedGraph((), edges)
