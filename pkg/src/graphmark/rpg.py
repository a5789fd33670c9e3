"""Permutation-to-flow-graph codec built on max didomination pointers.

Element i of a permutation is didominated by the elements that precede it and
exceed it with nothing in between; the largest of these is the nearest
greater element to its left, or the header when none exists. Those pointers,
plus the descending list spine header -> n -> ... -> 1 -> footer, form a
reducible flow graph from which the permutation (and hence the watermark) can
be recovered by one DFS. The stack pass below is the normative encoder; the
full didomination DAG is kept as a brute-force diagnostic oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TamperError
from .graphs import DirectedGraph, ReduciblePermutationGraph
from .sip import _check_permutation


def max_didominators(p) -> dict[int, int]:
    """Map each element to its nearest greater left neighbor (header if none).

    One left-to-right pass over a monotonic stack seeded with the header
    label n+1; every element is pushed and popped at most once.
    """
    n = _check_permutation(p)
    out: dict[int, int] = {}
    stack = [n + 1]
    push = stack.append
    pop = stack.pop
    for v in p:
        while stack[-1] < v:
            pop()
        out[v] = stack[-1]
        push(v)
    return out


@dataclass(frozen=True)
class DidominationDag:
    """Diagnostic DAG: one vertex per element plus source s=n+1 and sink t=0.

    Edges run didominator -> didominated; s feeds every vertex nothing
    didominates, and every vertex that didominates nothing feeds t (an
    isolated vertex gets both).
    """

    size: int
    edges: frozenset[tuple[int, int]]

    @property
    def source(self) -> int:
        return self.size + 1

    @property
    def sink(self) -> int:
        return 0

    def predecessors(self, v: int) -> set[int]:
        return {a for a, b in self.edges if b == v}

    def successors(self, v: int) -> set[int]:
        return {b for a, b in self.edges if a == v}


def didomination_dag(p) -> DidominationDag:
    """Build the full didomination DAG straight from the set definition.

    i dominates j when i > j and i precedes j; i didominates j when no k is
    both dominated by i and a dominator of j. Dominator/dominated sets are
    held as bitmasks so the no-intermediate test is a single intersection.
    Quadratic-ish and intended for diagnostics and cross-checking only; the
    stack pass is the production path.
    """
    n = _check_permutation(p)
    dominators = [0] * (n + 1)  # values > v placed left of v
    dominated = [0] * (n + 1)   # values < v placed right of v
    prefix = 0
    for v in p:
        dominators[v] = prefix >> (v + 1) << (v + 1)
        prefix |= 1 << v
    suffix = 0
    for v in reversed(p):
        dominated[v] = suffix & ((1 << v) - 2)
        suffix |= 1 << v

    edges: set[tuple[int, int]] = set()
    indegree = [0] * (n + 1)
    outdegree = [0] * (n + 1)
    for j in range(1, n + 1):
        doms = dominators[j]
        if not doms:
            continue
        s = bin(doms)  # scanning the text is faster than bit twiddling here
        base = len(s) - 1
        pos = s.find("1", 2)
        while pos != -1:
            i = base - pos
            if not dominated[i] & doms:
                edges.add((i, j))
                indegree[j] += 1
                outdegree[i] += 1
            pos = s.find("1", pos + 1)
    source = n + 1
    for v in range(1, n + 1):
        if indegree[v] == 0:
            edges.add((source, v))
        if outdegree[v] == 0:
            edges.add((v, 0))
    return DidominationDag(n, frozenset(edges))


def sip_to_rpg(p) -> ReduciblePermutationGraph:
    """Encode a permutation as its reducible flow graph."""
    n = _check_permutation(p)
    pointers = max_didominators(p)
    return ReduciblePermutationGraph(n, tuple(pointers[i] for i in range(1, n + 1)))


def _rpg_discovery_order(g: ReduciblePermutationGraph) -> list[int]:
    """DFS discovery order over the forward-pointer tree, smallest child first."""
    n = g.size
    children: list[list[int]] = [[] for _ in range(n + 2)]
    for i, m in enumerate(g.forward, 1):
        children[m].append(i)  # i ascends, so each bucket is already sorted
    order: list[int] = []
    stack = [n + 1]
    pop = stack.pop
    extend = stack.extend
    append = order.append
    while stack:
        v = pop()
        append(v)
        kids = children[v]
        if kids:
            extend(reversed(kids))
    return order


def rpg_to_sip(g) -> list[int]:
    """Recover the permutation a flow graph encodes.

    Drops the footer and all list pointers, reverses the remaining edges to
    get a tree rooted at the header, and reads the permutation off the DFS
    discovery order (children visited in ascending label order). Works for
    the graph of any permutation, not only codec SIPs.

    Accepts a ReduciblePermutationGraph, or a DirectedGraph whose labels are
    read at face value; for the latter, edges (a, a-1) count as list pointers
    and a TamperError is raised when the reversed remainder is not a tree.
    """
    if isinstance(g, ReduciblePermutationGraph):
        return _rpg_discovery_order(g)[1:]
    if not isinstance(g, DirectedGraph):
        raise ValueError(f"cannot decode a {type(g).__name__}")
    if not g.nodes:
        raise TamperError("empty graph")
    top = max(g.nodes)
    n = top - 1
    if n < 1:
        raise TamperError("graph too small to carry a permutation")
    parent: dict[int, int] = {}
    for a, b in g.edges:
        if b == a - 1:
            continue  # list pointer by the label rule
        if a in parent:
            raise TamperError(
                f"flipped edges do not form a tree: node {a} has several parents")
        parent[a] = b
    children: dict[int, list[int]] = {v: [] for v in g.nodes}
    for child, par in parent.items():
        if par not in children:
            raise TamperError(f"forward edge targets missing node {par}")
        children[par].append(child)
    for kids in children.values():
        kids.sort()
    order: list[int] = []
    stack = [top]
    seen = set()
    while stack:
        v = stack.pop()
        if v in seen:
            raise TamperError("flipped edges do not form a tree: cycle reached")
        seen.add(v)
        order.append(v)
        stack.extend(reversed(children[v]))
    body = [v for v in order if v not in (top, 0)]
    expected = set(range(1, top))
    if set(body) != expected or len(body) != n:
        raise TamperError("flipped edges do not form a tree covering every body node")
    return body
