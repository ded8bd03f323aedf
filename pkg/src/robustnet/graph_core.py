"""Undirected simple graphs stored as per-node neighbor bitsets.

A node set is represented throughout the package as a Python ``int`` bitmask
(bit ``v`` set means node ``v`` is a member).  Functions that accept a node set
also take any iterable of node indices and convert it with :func:`as_mask`.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Graph",
    "LayeredGraph",
    "GraphFormatError",
    "as_mask",
    "mask_to_nodes",
    "degree",
    "min_max_degree",
    "edge_boundary_size",
    "induced_subgraph",
    "is_connected",
    "parse_edge_list",
    "format_edge_list",
    "read_edge_list",
    "write_edge_list",
    "read_layer_file",
    "write_layer_file",
    "layered_from_files",
    "adjacency_matrix",
    "graph_from_matrix",
]


class GraphFormatError(ValueError):
    """Malformed edge-list or layer file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


NodeSet = int | Iterable[int]


def as_mask(s: NodeSet) -> int:
    if isinstance(s, int):
        if s < 0:
            raise ValueError("node-set mask must be non-negative")
        return s
    mask = 0
    for v in s:
        if v < 0:
            raise ValueError(f"negative node index {v}")
        mask |= 1 << v
    return mask


def mask_to_nodes(mask: int) -> list[int]:
    nodes = []
    while mask:
        low = mask & -mask
        nodes.append(low.bit_length() - 1)
        mask ^= low
    return nodes


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    ``adjacency[v]`` is the bitmask of neighbors of ``v``.  Construction
    validates symmetry and rejects self-loops; use :meth:`from_edges` to build
    one from an edge list (duplicate edges are rejected there).
    """

    node_count: int
    adjacency: tuple[int, ...]

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        if len(self.adjacency) != self.node_count:
            raise ValueError("adjacency length does not match node_count")
        full = (1 << self.node_count) - 1
        for v, nb in enumerate(self.adjacency):
            if nb & ~full:
                raise ValueError(f"node {v} has a neighbor index out of range")
            if nb >> v & 1:
                raise ValueError(f"self-loop at node {v}")
            for u in mask_to_nodes(nb):
                if not self.adjacency[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * node_count
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if adj[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(node_count, tuple(adj))

    @classmethod
    def empty(cls, node_count: int) -> Graph:
        return cls(node_count, (0,) * node_count)

    @classmethod
    def complete(cls, node_count: int) -> Graph:
        full = (1 << node_count) - 1
        return cls(node_count, tuple(full ^ (1 << v) for v in range(node_count)))

    @property
    def full_mask(self) -> int:
        return (1 << self.node_count) - 1

    @property
    def edge_count(self) -> int:
        return sum(nb.bit_count() for nb in self.adjacency) // 2

    def neighbors(self, v: int) -> list[int]:
        return mask_to_nodes(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.node_count)
                for v in mask_to_nodes(self.adjacency[u] >> (u + 1) << (u + 1))]

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adjacency]

    def with_edge(self, u: int, v: int) -> Graph:
        """Copy of this graph with one extra edge."""
        if u == v:
            raise ValueError("self-loop")
        if self.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) already present")
        adj = list(self.adjacency)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.node_count, tuple(adj))

    def union(self, other: Graph) -> Graph:
        if other.node_count != self.node_count:
            raise ValueError("graphs have different node counts")
        return Graph(self.node_count,
                     tuple(a | b for a, b in zip(self.adjacency, other.adjacency)))


@dataclass(frozen=True)
class LayeredGraph:
    """A graph on ``k * n`` nodes where layer ``i`` is nodes ``i*n .. (i+1)*n - 1``."""

    graph: Graph
    layers_k: int
    per_layer_n: int

    def __post_init__(self):
        if self.layers_k < 2:
            raise ValueError("an interdependent network needs at least 2 layers")
        if self.per_layer_n < 1:
            raise ValueError("each layer needs at least one node")
        if self.graph.node_count != self.layers_k * self.per_layer_n:
            raise ValueError("node_count must equal k * n")

    @property
    def layer_of(self) -> tuple[int, ...]:
        return tuple(v // self.per_layer_n for v in range(self.graph.node_count))

    def layer_mask(self, i: int) -> int:
        if not 0 <= i < self.layers_k:
            raise IndexError(f"layer {i} out of range")
        n = self.per_layer_n
        return ((1 << n) - 1) << (i * n)

    def intra_edge_count(self) -> int:
        return sum((self.graph.adjacency[v] & self.layer_mask(v // self.per_layer_n)).bit_count()
                   for v in range(self.graph.node_count)) // 2

    def inter_edge_count(self) -> int:
        return self.graph.edge_count - self.intra_edge_count()


def _check_node(g: Graph, v: int) -> None:
    if not 0 <= v < g.node_count:
        raise IndexError(f"node {v} out of range for graph with {g.node_count} nodes")


def degree(g: Graph, v: int) -> int:
    _check_node(g, v)
    return g.adjacency[v].bit_count()


def min_max_degree(g: Graph) -> tuple[int, int]:
    if g.node_count == 0:
        raise ValueError("degree extremes undefined on the empty graph")
    d = g.degrees()
    return min(d), max(d)


def edge_boundary_size(g: Graph, s: NodeSet) -> int:
    """Number of edges with exactly one endpoint in ``s``.

    Returns 0 for the empty set and for the full node set.
    """
    mask = as_mask(s)
    if mask & ~g.full_mask:
        raise IndexError("node set contains indices outside the graph")
    outside = g.full_mask & ~mask
    return sum((g.adjacency[v] & outside).bit_count() for v in mask_to_nodes(mask))


def induced_subgraph(g: Graph, s: NodeSet) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s``, relabeled densely.

    Returns the subgraph and ``old_index``: new node ``j`` is ``old_index[j]``.
    """
    mask = as_mask(s)
    if mask == 0:
        raise ValueError("induced subgraph of an empty node set")
    if mask & ~g.full_mask:
        raise IndexError("node set contains indices outside the graph")
    old_index = mask_to_nodes(mask)
    new_of = {old: new for new, old in enumerate(old_index)}
    adj = []
    for old in old_index:
        nb = 0
        for u in mask_to_nodes(g.adjacency[old] & mask):
            nb |= 1 << new_of[u]
        adj.append(nb)
    return Graph(len(old_index), tuple(adj)), old_index


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense 0/1 adjacency matrix (``uint8``, shape ``(N, N)``)."""
    n = g.node_count
    nbytes = max(1, (n + 7) // 8)
    raw = b"".join(nb.to_bytes(nbytes, "little") for nb in g.adjacency)
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes),
                         axis=1, bitorder="little")
    return bits[:, :n]


def graph_from_matrix(a: np.ndarray) -> Graph:
    """Graph from a symmetric 0/1 matrix with zero diagonal."""
    a = np.asarray(a).astype(bool)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("adjacency matrix must be symmetric")
    if a.diagonal().any():
        raise ValueError("adjacency matrix has self-loops")
    packed = np.packbits(a, axis=1, bitorder="little")
    adj = tuple(int.from_bytes(row.tobytes(), "little") for row in packed)
    return Graph(a.shape[0], adj)


def is_connected(g: Graph) -> bool:
    if g.node_count <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in mask_to_nodes(frontier):
            nxt |= g.adjacency[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == g.full_mask


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def _parse_int_line(line: str, lineno: int, width: int) -> list[int]:
    parts = line.split()
    if len(parts) != width:
        raise GraphFormatError(f"expected {width} integers, got {len(parts)}", lineno)
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {line.strip()!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GraphFormatError("empty edge-list file", 1)
    n, m = _parse_int_line(lines[0], 1, 2)
    if n < 0 or m < 0:
        raise GraphFormatError("negative header values", 1)
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}", len(lines))
    adj = [0] * n
    for offset, line in enumerate(body):
        lineno = offset + 2
        u, v = _parse_int_line(line, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}", lineno)
        if adj[u] >> v & 1:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.node_count} {len(edges)}"]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def read_layer_file(path: str | Path, node_count: int) -> list[int]:
    lines = [ln for ln in Path(path).read_text().splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) != node_count:
        raise GraphFormatError(f"expected {node_count} layer lines, found {len(lines)}")
    layer_of = [-1] * node_count
    for lineno, line in enumerate(lines, start=1):
        node, layer = _parse_int_line(line, lineno, 2)
        if not 0 <= node < node_count or layer < 0:
            raise GraphFormatError(f"bad entry {node} {layer}", lineno)
        if layer_of[node] != -1:
            raise GraphFormatError(f"node {node} listed twice", lineno)
        layer_of[node] = layer
    return layer_of


def write_layer_file(lg: LayeredGraph, path: str | Path) -> None:
    Path(path).write_text("".join(f"{v} {layer}\n" for v, layer in enumerate(lg.layer_of)))


def layered_from_files(edge_path: str | Path, layer_path: str | Path) -> LayeredGraph:
    """Rebuild a :class:`LayeredGraph` from an edge list plus layer file.

    The layer file must describe layer-contiguous blocks of equal size.
    """
    g = read_edge_list(edge_path)
    layer_of = read_layer_file(layer_path, g.node_count)
    k = max(layer_of) + 1 if layer_of else 0
    if k < 2 or g.node_count % k:
        raise GraphFormatError("layers must be at least 2 blocks of equal size")
    n = g.node_count // k
    if any(layer != v // n for v, layer in enumerate(layer_of)):
        raise GraphFormatError("layers must be contiguous blocks of n nodes")
    return LayeredGraph(g, k, n)
