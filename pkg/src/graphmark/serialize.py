"""Bit-exact text formats for permutations and graphs.

All formats are UTF-8, LF line endings, single-space separated, and writers
are canonical: the same object always serializes to the same bytes.

Permutation: one line of space-separated base-10 values, newline-terminated::

    5 6 9 8 1 2 7 4 3

Labeled graph (RPG format): a header line ``RPG <n>`` for a graph with body
size n (node labels 0..n+1), then one edge record per line, ``<from> <to> L``
for list pointers and ``<from> <to> F`` for everything else. List records are
written from the header downward, forward records by ascending source. The
kind tag is stored explicitly (readers never infer it) but must agree with
the label rule ``to == from-1  <=>  L``; damaged graphs with deleted, added,
or flipped edges stay representable, only an exact duplicate (from, to) pair
does not.

Unlabeled graph (EDGES format): ``EDGES <node_count>`` then one ``<a> <b>``
record per edge, sorted ascending. Node ids are arbitrary distinct
non-negative integers carrying no label meaning; self-loops, duplicate edges,
empty edge sets, and ids not covered by node_count are rejected.
"""

from __future__ import annotations

from .errors import FormatError
from .graphs import DirectedGraph, ReduciblePermutationGraph


def write_permutation(p) -> str:
    if not p:
        raise FormatError("refusing to write an empty permutation")
    return " ".join(str(v) for v in p) + "\n"


def read_permutation(text: str) -> list[int]:
    line = text.strip("\n")
    if not line or "\n" in line:
        raise FormatError("permutation file must hold exactly one nonempty line")
    values = []
    for token in line.split(" "):
        if not token.isdigit():
            raise FormatError(f"bad permutation token {token!r}")
        values.append(int(token))
    if any(v < 1 for v in values):
        raise FormatError("permutation values are 1-indexed and positive")
    return values


def _edge_records(graph: DirectedGraph) -> list[tuple[int, int, str]]:
    seen = set()
    lists = []
    forwards = []
    for a, b in graph.edges:
        if (a, b) in seen:
            raise FormatError(
                f"duplicate edge ({a}, {b}) is not representable in the RPG format")
        seen.add((a, b))
        if b == a - 1:
            lists.append((a, b, "L"))
        else:
            forwards.append((a, b, "F"))
    lists.sort(key=lambda r: -r[0])
    forwards.sort()
    return lists + forwards


def write_rpg(g) -> str:
    """Serialize a labeled graph, canonical byte-for-byte."""
    if isinstance(g, ReduciblePermutationGraph):
        graph = g.to_directed()
        size = g.size
    elif isinstance(g, DirectedGraph):
        if not g.nodes:
            raise FormatError("cannot serialize an empty graph")
        graph = g
        size = max(g.nodes) - 1
    else:
        raise FormatError(f"cannot serialize a {type(g).__name__}")
    if size < 1:
        raise FormatError("graph too small for the RPG format")
    lines = [f"RPG {size}"]
    lines.extend(f"{a} {b} {kind}" for a, b, kind in _edge_records(graph))
    return "\n".join(lines) + "\n"


def read_rpg(text: str) -> DirectedGraph:
    """Parse the RPG format into a labeled graph, without structural checks.

    Enforces file-level well-formedness only (header, tokens, label range,
    kind-tag consistency, no duplicate edge); run analysis.validate_rpg or
    analysis.as_rpg on the result to re-validate codec structure, so damaged
    graphs can still be loaded and examined.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty file")
    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != "RPG" or not head[1].isdigit():
        raise FormatError(f"malformed header {lines[0]!r}")
    size = int(head[1])
    if size < 1:
        raise FormatError("body size must be at least 1")
    top = size + 1
    edges = []
    seen = set()
    for ln, line in enumerate(lines[1:], 2):
        parts = line.split(" ")
        if len(parts) != 3 or not parts[0].isdigit() or not parts[1].isdigit():
            raise FormatError(f"line {ln}: malformed edge record {line!r}")
        a, b, kind = int(parts[0]), int(parts[1]), parts[2]
        if kind not in ("L", "F"):
            raise FormatError(f"line {ln}: unknown edge kind {kind!r}")
        if a > top or b > top:
            raise FormatError(f"line {ln}: label out of range 0..{top}")
        if (kind == "L") != (b == a - 1):
            raise FormatError(
                f"line {ln}: kind {kind} does not match labels {a} -> {b}")
        if (a, b) in seen:
            raise FormatError(f"line {ln}: duplicate edge ({a}, {b})")
        seen.add((a, b))
        edges.append((a, b))
    return DirectedGraph(tuple(range(top + 1)), tuple(edges))


def write_unlabeled(g: DirectedGraph) -> str:
    """Serialize a graph as an anonymous edge list (labels carry no meaning).

    Nodes without any incident edge are written as bare single-id lines after
    the edge records, so the node set always survives the round trip.
    """
    if not isinstance(g, DirectedGraph):
        raise FormatError(f"cannot serialize a {type(g).__name__}")
    if not g.edges:
        raise FormatError("refusing to write an empty edge set")
    seen = set()
    touched = set()
    lines = [f"EDGES {g.node_count}"]
    for a, b in g.edges:
        if a == b:
            raise FormatError(f"self-loop on {a} is not representable")
        if (a, b) in seen:
            raise FormatError(f"duplicate edge ({a}, {b}) is not representable")
        seen.add((a, b))
        touched.update((a, b))
        lines.append(f"{a} {b}")
    lines.extend(str(v) for v in g.nodes if v not in touched)
    return "\n".join(lines) + "\n"


def read_unlabeled(text: str) -> DirectedGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty file")
    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != "EDGES" or not head[1].isdigit():
        raise FormatError(f"malformed header {lines[0]!r}")
    count = int(head[1])
    if len(lines) == 1:
        raise FormatError("empty edge set")
    edges = []
    seen = set()
    ids = set()
    for ln, line in enumerate(lines[1:], 2):
        parts = line.split(" ")
        if len(parts) == 1 and parts[0].isdigit():
            v = int(parts[0])
            if v in ids:
                raise FormatError(f"line {ln}: redundant bare node {v}")
            ids.add(v)
            continue
        if len(parts) != 2 or not parts[0].isdigit() or not parts[1].isdigit():
            raise FormatError(f"line {ln}: malformed edge record {line!r}")
        a, b = int(parts[0]), int(parts[1])
        if a == b:
            raise FormatError(f"line {ln}: self-loop on {a}")
        if (a, b) in seen:
            raise FormatError(f"line {ln}: duplicate edge ({a}, {b})")
        seen.add((a, b))
        ids.update((a, b))
        edges.append((a, b))
    if not edges:
        raise FormatError("no edge records")
    if len(ids) != count:
        raise FormatError(
            f"header claims {count} nodes but records mention {len(ids)} ids")
    return DirectedGraph(tuple(ids), tuple(edges))


def export_dot(g, annotate: bool = False) -> str:
    """Render a labeled graph as Graphviz DOT, deterministically.

    List pointers are solid, forward pointers dashed; the header and footer
    get distinct shapes. With annotate set, nodes are labeled and the header
    and footer are marked s and t.
    """
    if isinstance(g, ReduciblePermutationGraph):
        graph = g.to_directed()
    elif isinstance(g, DirectedGraph):
        graph = g
    else:
        raise FormatError(f"cannot export a {type(g).__name__}")
    if not graph.nodes:
        raise FormatError("cannot export an empty graph")
    top = max(graph.nodes)
    lines = ["digraph watermark {", "  rankdir=LR;", "  node [shape=circle];"]
    for v in graph.nodes:
        attrs = []
        if v == top:
            attrs.append("shape=doublecircle")
            if annotate:
                attrs.append(f'label="s ({v})"')
        elif v == 0:
            attrs.append("shape=square")
            if annotate:
                attrs.append(f'label="t ({v})"')
        elif annotate:
            attrs.append(f'label="u{v}"')
        if attrs:
            lines.append(f"  {v} [{', '.join(attrs)}];")
    for a, b in sorted(graph.edges, key=lambda e: (e[1] != e[0] - 1, e)):
        style = "solid" if b == a - 1 else "dashed"
        lines.append(f"  {a} -> {b} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
