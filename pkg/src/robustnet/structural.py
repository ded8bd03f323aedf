"""Isoperimetric constant, vertex connectivity and degree/expansion bounds."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _subsets
from .graph_core import Graph, LayeredGraph, mask_to_nodes, min_max_degree
from .spectral import algebraic_connectivity

__all__ = [
    "IsoperimetricResult",
    "SandwichReport",
    "isoperimetric_exact",
    "isoperimetric_bounds",
    "boundary_table",
    "vertex_connectivity",
    "local_vertex_connectivity",
    "degree_bound",
    "check_degree_isoperimetric_sandwich",
    "DEFAULT_ISO_CAP",
]

DEFAULT_ISO_CAP = 24


@dataclass(frozen=True)
class IsoperimetricResult:
    value: Fraction
    argmin_set: int
    enumerated_sets: int

    @property
    def argmin_nodes(self) -> list[int]:
        return mask_to_nodes(self.argmin_set)


def boundary_table(g: Graph, masks: np.ndarray) -> np.ndarray:
    """``|boundary(M)|`` for each mask in ``masks``."""
    out = np.zeros(len(masks), dtype=np.int32)
    for _, in_set, cnt in _subsets.outside_counts(g, masks):
        out += np.where(in_set, cnt, 0).astype(np.int32)
    return out


def isoperimetric_exact(g: Graph, node_cap: int = DEFAULT_ISO_CAP) -> IsoperimetricResult:
    """Minimum of ``|boundary(A)| / |A|`` over nonempty ``A`` with ``|A| <= N // 2``.

    Ties go to the smaller ``|A|``, then to the lexicographically smallest
    sorted member list.
    """
    n = g.node_count
    if n < 2:
        raise ValueError("isoperimetric constant needs at least 2 nodes")
    _subsets.check_cap(g, node_cap, "exact isoperimetric constant")
    half = n // 2
    best_b = [None] * (half + 1)  # per size: (min boundary, best lexicographic key)
    enumerated = 0
    for masks in _subsets.mask_chunks(n):
        size = np.bitwise_count(masks)
        keep = (size >= 1) & (size <= half)
        masks, size = masks[keep], size[keep]
        enumerated += len(masks)
        if not len(masks):
            continue
        bnd = boundary_table(g, masks)
        for s in range(1, half + 1):
            sel = size == s
            if not sel.any():
                continue
            b = bnd[sel]
            bmin = int(b.min())
            winners = masks[sel][b == bmin]
            key = int(_subsets.lexicographic_key(winners, n).max())
            cur = best_b[s]
            if cur is None or bmin < cur[0] or (bmin == cur[0] and key > cur[1]):
                best_b[s] = (bmin, key)
    value, size_star = min((Fraction(b[0], s), s) for s, b in enumerate(best_b) if b is not None)
    key = best_b[size_star][1]
    argmin = 0
    for v in range(n):
        if key >> (n - 1 - v) & 1:
            argmin |= 1 << v
    return IsoperimetricResult(value, argmin, enumerated)


def isoperimetric_bounds(g: Graph, lambda2: float) -> tuple[float, float]:
    """``(lambda2 / 2, d_min)``: spectral lower bound and one-vertex upper bound on i(G)."""
    if lambda2 < 0:
        raise ValueError("lambda2 must be non-negative")
    d_min, _ = min_max_degree(g)
    return lambda2 / 2.0, float(d_min)


def local_vertex_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s-t paths for non-adjacent ``s``, ``t``.

    Unit-capacity max flow on the node-split graph (``v_in -> v_out`` capacity 1
    for every ``v`` other than ``s`` and ``t``), augmenting along BFS paths.
    """
    if s == t or g.has_edge(s, t):
        raise ValueError("local vertex connectivity needs distinct non-adjacent nodes")
    n = g.node_count
    # node v -> in = 2v, out = 2v + 1
    cap: dict[tuple[int, int], int] = {}
    nbrs: list[list[int]] = [[] for _ in range(2 * n)]

    def add(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            nbrs[a].append(b)
            nbrs[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    inf = n
    for v in range(n):
        add(2 * v, 2 * v + 1, inf if v in (s, t) else 1)
    for u, v in g.edges():
        add(2 * u + 1, 2 * v, inf)
        add(2 * v + 1, 2 * u, inf)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in nbrs[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity; ``N - 1`` for complete graphs, 0 if disconnected."""
    n = g.node_count
    if n < 2:
        raise ValueError("vertex connectivity needs at least 2 nodes")
    if g.edge_count == n * (n - 1) // 2:
        return n - 1
    kappa = min(g.degrees())
    # some node among the first kappa + 1 lies outside every minimum separator
    i = 0
    while i <= kappa and i < n:
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                kappa = min(kappa, local_vertex_connectivity(g, i, j))
        i += 1
    return kappa


def degree_bound(n: int, k: int, p: float, epsilon: float) -> float:
    """Upper envelope on the maximum degree of a random k-partite graph.

    ``n (k-1) p (1 + sqrt(3) * (ln n / ((k-1) n p)) ** (1/2 - epsilon))``
    """
    mean = n * (k - 1) * p
    return mean * (1.0 + math.sqrt(3.0) * (math.log(n) / mean) ** (0.5 - epsilon))


@dataclass(frozen=True)
class SandwichReport:
    alpha_np_le_i: bool
    i_le_dmin: bool
    dmin_le_dmax: bool
    dmax_le_bound: bool
    i_value: float
    i_exact: bool
    d_min: int
    d_max: int
    dmax_bound: float
    alpha_sustained: float

    @property
    def all_hold(self) -> bool:
        return self.alpha_np_le_i and self.i_le_dmin and self.dmin_le_dmax and self.dmax_le_bound


def check_degree_isoperimetric_sandwich(lg: LayeredGraph, p: float, alpha: float,
                                        epsilon: float, *, i_value=None,
                                        lambda2: float | None = None,
                                        node_cap: int = DEFAULT_ISO_CAP) -> SandwichReport:
    """Evaluate ``alpha n p <= i <= d_min <= d_max <= degree_bound`` on one instance.

    ``i`` is the exact isoperimetric constant when the graph fits under
    ``node_cap`` (or is passed as ``i_value``); otherwise the spectral lower
    bound ``lambda2 / 2`` stands in, which keeps the first inequality sound
    but makes the second vacuous.  ``alpha_sustained`` is the largest alpha
    the instance supports, ``i / (n p)``.
    """
    n, k = lg.per_layer_n, lg.layers_k
    if not 0.0 < epsilon <= 0.5:
        raise ValueError("epsilon must lie in (0, 1/2]")
    if not (p > 0 and math.log(n) < (k - 1) * n * p):
        raise ValueError("requires ln n < (k - 1) n p")
    g = lg.graph
    d_min, d_max = min_max_degree(g)
    exact = True
    if i_value is None:
        if g.node_count <= node_cap:
            i_value = isoperimetric_exact(g, node_cap).value
        else:
            lam = algebraic_connectivity(g) if lambda2 is None else lambda2
            i_value = lam / 2.0
            exact = False
    i_f = float(i_value)
    bound = degree_bound(n, k, p, epsilon)
    return SandwichReport(
        alpha_np_le_i=alpha * n * p <= i_f,
        i_le_dmin=i_value <= d_min,
        dmin_le_dmax=d_min <= d_max,
        dmax_le_bound=d_max <= bound,
        i_value=i_f,
        i_exact=exact,
        d_min=d_min,
        d_max=d_max,
        dmax_bound=bound,
        alpha_sustained=i_f / (n * p),
    )
