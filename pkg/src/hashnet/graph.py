"""Directed simple graphs, layer unions and weakly connected components.

Graphs are immutable after construction: build the node/edge sets first,
then freeze them into a DirectedGraph. All read paths are therefore safe
under concurrent access.
"""

from __future__ import annotations

from dataclasses import dataclass


class DirectedGraph:
    """A directed simple graph over string node ids.

    No self-loops, no duplicate edges. Nodes keep their registration
    (insertion) order; anything reported as a set is emitted sorted so
    runs are byte-reproducible.
    """

    __slots__ = ("_nodes", "_index", "_edges", "_out", "_in")

    def __init__(self, nodes=(), edges=()):
        self._nodes: list[str] = []
        self._index: dict[str, int] = {}
        self._edges: set[tuple[str, str]] = set()
        self._out: dict[str, list[str]] = {}
        self._in: dict[str, list[str]] = {}
        for n in nodes:
            self._register(n)
        for s, t in edges:
            self._add_edge(s, t)

    def _register(self, node: str) -> None:
        if node not in self._index:
            self._index[node] = len(self._nodes)
            self._nodes.append(node)
            self._out[node] = []
            self._in[node] = []

    def _add_edge(self, source: str, target: str) -> None:
        if source == target:
            raise ValueError(f"self-loop rejected: {source!r}")
        self._register(source)
        self._register(target)
        if (source, target) not in self._edges:
            self._edges.add((source, target))
            self._out[source].append(target)
            self._in[target].append(source)

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self._nodes)

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return frozenset(self._edges)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self._edges)

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def has_node(self, node: str) -> bool:
        return node in self._index

    def has_edge(self, source: str, target: str) -> bool:
        return (source, target) in self._edges

    def out_neighbors(self, node: str) -> tuple[str, ...]:
        return tuple(self._out[node])

    def in_neighbors(self, node: str) -> tuple[str, ...]:
        return tuple(self._in[node])

    def node_index(self) -> dict[str, int]:
        """Node id -> dense integer index in registration order."""
        return dict(self._index)

    def reversed(self) -> "DirectedGraph":
        return DirectedGraph(self._nodes, [(t, s) for s, t in self._edges])

    def __contains__(self, node: str) -> bool:
        return node in self._index

    def __repr__(self):
        return f"DirectedGraph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class ComponentPartition:
    """Weak-connectivity partition of a graph's nodes.

    components are sorted by size descending, ties broken by smallest
    member id; component_id maps each node to its component's position
    in that list.
    """

    component_id: dict[str, int]
    components: tuple[tuple[str, ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)

    def main_component(self) -> tuple[str, ...]:
        if not self.components:
            raise ValueError("empty partition has no main component")
        return self.components[0]


class _UnionFind:
    """Union by size with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def weakly_connected_components(g: DirectedGraph) -> ComponentPartition:
    """Partition nodes by reachability ignoring edge direction.

    Isolated nodes form singleton components.
    """
    nodes = g.nodes
    index = {n: i for i, n in enumerate(nodes)}
    uf = _UnionFind(len(nodes))
    for s, t in g.edges:
        uf.union(index[s], index[t])

    groups: dict[int, list[str]] = {}
    for n in nodes:
        groups.setdefault(uf.find(index[n]), []).append(n)

    ordered = sorted(
        (tuple(sorted(members)) for members in groups.values()),
        key=lambda comp: (-len(comp), comp[0]),
    )
    component_id = {n: ci for ci, comp in enumerate(ordered) for n in comp}
    return ComponentPartition(component_id=component_id, components=tuple(ordered))


def union_layers(network, kinds) -> DirectedGraph:
    """Union of the selected relationship layers into one directed graph.

    The node set is every edge-incident node of the selected layers,
    plus all core tweeters whenever the F layer is selected (F registers
    every tweeting account, including isolated ones). An edge present in
    several layers counts once.
    """
    kinds = set(kinds)
    if not kinds:
        raise ValueError("at least one layer kind required")
    unknown = kinds - {"F", "M", "R"}
    if unknown:
        raise ValueError(f"unknown layer kinds: {sorted(unknown)}")

    nodes: list[str] = []
    seen: set[str] = set()

    def add_node(n):
        if n not in seen:
            seen.add(n)
            nodes.append(n)

    if "F" in kinds:
        for n in network.core_tweeters:
            add_node(n)
    edges: set[tuple[str, str]] = set()
    for kind in ("F", "M", "R"):
        if kind not in kinds:
            continue
        layer = network.layers[kind]
        for s, t in layer.sorted_edges():
            add_node(s)
            add_node(t)
            edges.add((s, t))
    return DirectedGraph(nodes, sorted(edges))
