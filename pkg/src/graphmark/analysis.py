"""Structural validation and recovery for watermark flow graphs.

Everything here works from labels and outdegrees alone. The codec gives every
node a rigid role: the header (highest label) has outdegree 1, the footer
(label 0) outdegree 0, and each body node exactly one list pointer to the
next lower label plus one forward pointer to a higher label. That rigidity is
what makes single-edge tampering visible and label restoration unique.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TamperError
from .graphs import DirectedGraph, ReduciblePermutationGraph

VIOLATION_KINDS = (
    "header-outdegree",
    "footer-outdegree",
    "body-outdegree",
    "missing-list-pointer",
    "forward-pointer-not-higher",
    "duplicate-edge",
    "unreachable-node",
)


@dataclass(frozen=True)
class RpgValidationReport:
    """All structural violations found in a labeled graph, as (node, kind)."""

    violations: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> tuple[str, ...]:
        return tuple(sorted({kind for _, kind in self.violations}))

    def __str__(self) -> str:
        if self.ok:
            return "structure ok"
        return "; ".join(f"node {node}: {kind}" for node, kind in self.violations)


def _as_directed(g) -> DirectedGraph:
    if isinstance(g, ReduciblePermutationGraph):
        return g.to_directed()
    if isinstance(g, DirectedGraph):
        return g
    raise ValueError(f"expected a graph, got {type(g).__name__}")


def validate_rpg(g) -> RpgValidationReport:
    """Check a labeled graph against the codec structure, reporting every hit.

    Labels are taken at face value: the highest label plays the header, 0 the
    footer, everything else a body node needing the edge (i, i-1) plus one
    forward edge to a higher label. Duplicate edges, labels absent from the
    0..max range, and nodes unreachable from the header are also reported.
    """
    graph = _as_directed(g)
    if not graph.nodes:
        raise ValueError("cannot validate an empty graph")
    violations: list[tuple[int, str]] = []
    top = max(graph.nodes)
    present = set(graph.nodes)
    for edge, mult in sorted(graph.edge_multiset().items()):
        if mult > 1:
            violations.append((edge[0], "duplicate-edge"))
    adjacency = graph.out_neighbors()
    for label in range(top + 1):
        if label not in present:
            violations.append((label, "unreachable-node"))
            continue
        out = adjacency[label]
        if label == top:
            if len(out) != 1:
                violations.append((label, "header-outdegree"))
            if top - 1 not in out:
                violations.append((label, "missing-list-pointer"))
        elif label == 0:
            if out:
                violations.append((label, "footer-outdegree"))
        else:
            if label - 1 not in out:
                violations.append((label, "missing-list-pointer"))
            if len(out) != 2:
                violations.append((label, "body-outdegree"))
            rest = [t for t in out if t != label - 1]
            for target in rest:
                if target <= label:
                    violations.append((label, "forward-pointer-not-higher"))
    # Reachability from the presumed header over the edges that exist.
    reached = set()
    stack = [top]
    while stack:
        v = stack.pop()
        if v in reached:
            continue
        reached.add(v)
        stack.extend(adjacency.get(v, ()))
    for label in sorted(present - reached):
        violations.append((label, "unreachable-node"))
    return RpgValidationReport(tuple(violations))


def as_rpg(g) -> ReduciblePermutationGraph:
    """Promote a labeled graph to the strict codec type, or raise TamperError."""
    if isinstance(g, ReduciblePermutationGraph):
        return g
    graph = _as_directed(g)
    report = validate_rpg(graph)
    if not report.ok:
        raise TamperError(f"graph-structural violation: {report}")
    top = max(graph.nodes)
    adjacency = graph.out_neighbors()
    forward = tuple(next(t for t in adjacency[i] if t != i - 1)
                    for i in range(1, top))
    return ReduciblePermutationGraph(top - 1, forward)


def hamiltonian_path(g, neighbor_order: str = "ascending") -> tuple[int, ...]:
    """Return the unique Hamiltonian path of a codec graph.

    Starts the DFS at the single outdegree-1 node and returns the discovery
    order. On codec graphs every step has exactly one unvisited successor, so
    the result does not depend on the tie-breaking policy; neighbor_order
    exists precisely to let callers demonstrate this. Raises TamperError when
    there is no unique outdegree-1 node or the discovery order is not a
    Hamiltonian path.
    """
    if neighbor_order not in ("ascending", "descending"):
        raise ValueError(f"unknown neighbor order {neighbor_order!r}")
    graph = _as_directed(g)
    degrees = graph.out_degrees()
    starts = [v for v, d in degrees.items() if d == 1]
    if len(starts) != 1:
        raise TamperError(
            f"graph has {len(starts)} outdegree-1 nodes, expected exactly 1")
    adjacency = graph.out_neighbors(descending=(neighbor_order == "ascending"))
    # Reverse-sorted push so the stack pops neighbors in the requested order.
    order: list[int] = []
    seen = set()
    stack = [starts[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        stack.extend(adjacency[v])
    if len(order) != graph.node_count:
        raise TamperError("no Hamiltonian path: graph is not connected from the start node")
    edge_set = set(graph.edges)
    for a, b in zip(order, order[1:]):
        if (a, b) not in edge_set:
            raise TamperError(
                f"no Hamiltonian path: discovery order breaks between {a} and {b}")
    return tuple(order)


def restore_labels(g: DirectedGraph) -> ReduciblePermutationGraph:
    """Rebuild codec labels of a structurally intact graph from shape alone.

    Node ids are treated as opaque. The single outdegree-0 node must be the
    footer and the single outdegree-1 node the header; walking from the
    header, each step has exactly one unvisited successor, and labels n+1
    down to 0 are assigned along the walk. Raises TamperError when the
    outdegree profile or the walk does not match a codec graph.
    """
    graph = _as_directed(g)
    if graph.node_count < 3:
        raise TamperError(f"{graph.node_count} nodes cannot form a codec graph")
    degrees = graph.out_degrees()
    sinks = [v for v, d in degrees.items() if d == 0]
    starts = [v for v, d in degrees.items() if d == 1]
    others = [v for v, d in degrees.items() if d not in (0, 1, 2)]
    if len(sinks) != 1 or len(starts) != 1 or others:
        raise TamperError(
            "outdegree profile mismatch: "
            f"{len(sinks)} sinks, {len(starts)} unary nodes, "
            f"{len(others)} nodes above degree 2")
    adjacency = graph.out_neighbors()
    size = graph.node_count - 2
    label: dict[int, int] = {}
    current = starts[0]
    for value in range(size + 1, -1, -1):
        label[current] = value
        if value == 0:
            break
        candidates = [t for t in adjacency[current] if t not in label]
        if len(candidates) != 1:
            raise TamperError(
                f"label walk stalls at id {current}: "
                f"{len(candidates)} unvisited successors")
        current = candidates[0]
    if label[current] != 0 or current != sinks[0]:
        raise TamperError("label walk does not end at the sink")
    forward = [0] * size
    for node, lab in label.items():
        if lab in (0, size + 1):
            continue
        targets = [label[t] for t in adjacency[node] if label[t] != lab - 1]
        if len(targets) != 1 or targets[0] <= lab:
            raise TamperError(f"id {node} (label {lab}) has no single higher forward edge")
        forward[lab - 1] = targets[0]
    return ReduciblePermutationGraph(size, tuple(forward))


@dataclass(frozen=True)
class RepairResult:
    """A repaired graph plus the list-pointer edits that produced it."""

    graph: ReduciblePermutationGraph
    rebuilt: tuple[tuple[int, int], ...]   # list edges that were missing
    removed: tuple[tuple[int, int], ...]   # flipped-list debris taken out

    @property
    def changed(self) -> bool:
        return bool(self.rebuilt or self.removed)


def repair_list_pointers(g) -> RepairResult:
    """Rebuild damaged list pointers; forward damage is detected, not fixed.

    List edges are fully determined by labels ((i+1, i) for every i), so any
    number of list-edge deletions or flips can be undone. A flipped list edge
    (i+1, i) leaves debris (i, i+1), which is removed only when the matching
    list edge is missing and node i still has its own forward edge; in every
    other configuration the non-list edges must be exactly one forward edge
    per body node, or TamperError is raised (the damage is not list-scoped).
    """
    graph = _as_directed(g)
    if not graph.nodes or max(graph.nodes) < 2:
        raise TamperError("graph too small to repair")
    top = max(graph.nodes)
    size = top - 1
    if set(graph.nodes) != set(range(top + 1)):
        raise TamperError("node set has gaps: not list-pointer damage")
    counts = graph.edge_multiset()
    expected_list = [(a, a - 1) for a in range(top, 0, -1)]
    missing = [e for e in expected_list if counts[e] == 0]
    missing_set = set(missing)

    non_list_by_node: dict[int, list[tuple[int, int]]] = {v: [] for v in graph.nodes}
    for (a, b), mult in sorted(counts.items()):
        if b != a - 1:
            non_list_by_node[a].extend([(a, b)] * mult)

    removed: list[tuple[int, int]] = []
    forward = [0] * size
    for i in range(0, top + 1):
        non_list = non_list_by_node[i]
        if i == 0 or i == top:
            # Footer and header own no forward edge; the only admissible
            # extra is flipped-list debris (i, i+1).
            for edge in non_list:
                if edge == (i, i + 1) and (i + 1, i) in missing_set:
                    removed.append(edge)
                else:
                    raise TamperError(
                        f"node {i} carries edge {edge}: not list-pointer damage")
            continue
        debris = (i, i + 1)
        keep = list(non_list)
        if len(keep) == 2 and debris in keep and (i + 1, i) in missing_set:
            keep.remove(debris)
            removed.append(debris)
        if len(keep) != 1:
            raise TamperError(
                f"body node {i} has {len(keep)} forward candidates: "
                "forward-pointer damage is not repairable")
        target = keep[0][1]
        if target <= i:
            raise TamperError(
                f"body node {i} points down to {target}: "
                "forward-pointer damage is not repairable")
        forward[i - 1] = target
    repaired = ReduciblePermutationGraph(size, tuple(forward))
    return RepairResult(repaired, tuple(missing), tuple(removed))
