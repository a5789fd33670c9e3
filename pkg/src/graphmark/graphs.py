"""Graph containers shared by the codec, validation, and attack layers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class DirectedGraph:
    """A plain directed graph over non-negative integer node ids.

    Holds everything the strict codec type cannot: attacked graphs, unlabeled
    graphs read from edge-list files, hand-built fixtures. Nodes are stored
    sorted and deduplicated; edges are stored sorted and MAY repeat, so a
    graph damaged by an edge flip that collides with an existing edge stays
    representable in memory.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        nodes = tuple(sorted(set(self.nodes)))
        if nodes and nodes[0] < 0:
            raise ValueError("node ids must be non-negative")
        edges = tuple(sorted((int(a), int(b)) for a, b in self.edges))
        known = set(nodes)
        for a, b in edges:
            if a not in known or b not in known:
                raise ValueError(f"edge ({a}, {b}) references an unknown node")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def build(cls, edges: Iterable[tuple[int, int]],
              extra_nodes: Iterable[int] = ()) -> "DirectedGraph":
        """Construct from edges, inferring the node set from endpoints."""
        edges = tuple(edges)
        nodes = {v for e in edges for v in e}
        nodes.update(extra_nodes)
        return cls(tuple(nodes), edges)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def edge_multiset(self) -> Counter:
        return Counter(self.edges)

    def out_neighbors(self, descending: bool = False) -> dict[int, list[int]]:
        """Adjacency lists, sorted per source node."""
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
        for targets in adj.values():
            targets.sort(reverse=descending)
        return adj

    def out_degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for a, _ in self.edges:
            deg[a] += 1
        return deg


@dataclass(frozen=True)
class ReduciblePermutationGraph:
    """Flow graph encoding a permutation of 1..size.

    One body node per element, plus a header (label size+1, outdegree 1) and a
    footer (label 0, outdegree 0). Every body node i carries a list pointer to
    i-1 and a forward pointer to ``forward[i-1]``, which is always a higher
    label. Instances are valid by construction; damaged variants live in
    DirectedGraph.
    """

    size: int
    forward: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("graph needs at least one body node")
        forward = tuple(self.forward)
        if len(forward) != self.size:
            raise ValueError(
                f"expected {self.size} forward pointers, got {len(forward)}")
        top = self.size + 1
        for i, m in enumerate(forward, 1):
            if not i < m <= top:
                raise ValueError(
                    f"forward pointer of node {i} must lie in {i + 1}..{top}, got {m}")
        object.__setattr__(self, "forward", forward)

    @property
    def header(self) -> int:
        return self.size + 1

    @property
    def footer(self) -> int:
        return 0

    @property
    def edge_count(self) -> int:
        return 2 * self.size + 1

    def list_edges(self) -> Iterator[tuple[int, int]]:
        """List pointers (a, a-1), emitted from the header downward."""
        for a in range(self.size + 1, 0, -1):
            yield (a, a - 1)

    def forward_edges(self) -> Iterator[tuple[int, int]]:
        for i, m in enumerate(self.forward, 1):
            yield (i, m)

    def edges(self) -> Iterator[tuple[int, int]]:
        yield from self.list_edges()
        yield from self.forward_edges()

    def to_directed(self) -> DirectedGraph:
        return DirectedGraph(tuple(range(self.size + 2)), tuple(self.edges()))
