"""Seeded generators for random k-partite and interdependent networks.

Every random draw comes from a ``numpy`` generator whose seed is a pure
function of ``(base_seed, trial_index, stream)``, so graphs are reproducible
regardless of which worker builds them or in what order.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph_core import Graph, LayeredGraph, graph_from_matrix, read_edge_list

__all__ = [
    "GenSeed",
    "IntraLayerSpec",
    "derive_seed",
    "rng_for",
    "gen_k_partite",
    "gen_interdependent",
    "gen_fig1",
    "gen_erdos_renyi",
]

_MASK64 = (1 << 64) - 1

# spawn-key streams
_INTER = 0
_INTRA = 1


@dataclass(frozen=True)
class GenSeed:
    base_seed: int
    trial_index: int = 0

    def __post_init__(self):
        if self.trial_index < 0:
            raise ValueError("trial_index must be non-negative")


def derive_seed(base_seed: int, *keys: int) -> int:
    """Mix ``base_seed`` with integer keys into a new 64-bit seed."""
    ss = np.random.SeedSequence([base_seed & _MASK64, *keys])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def rng_for(seed: GenSeed, *stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed.base_seed & _MASK64, seed.trial_index],
                                spawn_key=tuple(stream))
    return np.random.default_rng(ss)


def _as_seed(seed: GenSeed | int) -> GenSeed:
    return seed if isinstance(seed, GenSeed) else GenSeed(seed, 0)


def _check_prob(p: float, name: str = "p") -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class IntraLayerSpec:
    """Topology of a single layer.

    ``kind`` is one of ``empty``, ``complete``, ``erdos_renyi`` (needs ``q``),
    ``ring`` or ``from_file`` (needs ``path``, an edge-list file on n nodes).
    """

    kind: str = "empty"
    q: float | None = None
    path: str | None = None

    _KINDS = ("empty", "complete", "erdos_renyi", "ring", "from_file")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown intra-layer kind {self.kind!r}")
        if self.kind == "erdos_renyi":
            if self.q is None:
                raise ValueError("erdos_renyi layers need q")
            _check_prob(self.q, "q")
        if self.kind == "from_file" and not self.path:
            raise ValueError("from_file layers need a path")

    @classmethod
    def parse(cls, text: str) -> IntraLayerSpec:
        """Parse ``empty``, ``complete``, ``ring``, ``er:0.3`` or ``file:path``."""
        if text.startswith(("er:", "erdos_renyi:")):
            return cls("erdos_renyi", q=float(text.split(":", 1)[1]))
        if text.startswith(("file:", "from_file:")):
            return cls("from_file", path=text.split(":", 1)[1])
        return cls(text)

    def block(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """``n x n`` boolean adjacency block for one layer."""
        a = np.zeros((n, n), dtype=bool)
        if self.kind == "complete":
            a[:] = True
            np.fill_diagonal(a, False)
        elif self.kind == "ring":
            if n == 2:
                a[0, 1] = a[1, 0] = True
            elif n >= 3:
                idx = np.arange(n)
                a[idx, (idx + 1) % n] = True
                a[(idx + 1) % n, idx] = True
        elif self.kind == "erdos_renyi":
            iu = np.triu_indices(n, 1)
            a[iu] = rng.random(len(iu[0])) < self.q
            a |= a.T
        elif self.kind == "from_file":
            g = read_edge_list(Path(self.path))
            if g.node_count != n:
                raise ValueError(f"layer file {self.path} has {g.node_count} nodes, expected {n}")
            for u, v in g.edges():
                a[u, v] = a[v, u] = True
        return a


def _inter_matrix(n: int, k: int, p: float, seed: GenSeed) -> np.ndarray:
    # canonical order: layer pairs (i < j) lexicographic, then row-major within the block
    rng = rng_for(seed, _INTER)
    a = np.zeros((k * n, k * n), dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            block = rng.random((n, n)) < p
            a[i * n:(i + 1) * n, j * n:(j + 1) * n] = block
    return a | a.T


def _check_kn(n: int, k: int) -> None:
    if k < 2:
        raise ValueError("interdependent networks need k >= 2 layers")
    if n < 1:
        raise ValueError("each layer needs n >= 1 nodes")


def gen_k_partite(n: int, k: int, p: float, seed: GenSeed | int) -> LayeredGraph:
    """Random k-partite graph: every inter-layer pair is an edge with probability p."""
    _check_kn(n, k)
    _check_prob(p)
    a = _inter_matrix(n, k, p, _as_seed(seed))
    return LayeredGraph(graph_from_matrix(a), k, n)


def gen_interdependent(n: int, k: int, p: float,
                       intra: IntraLayerSpec | Sequence[IntraLayerSpec],
                       seed: GenSeed | int) -> LayeredGraph:
    """Random interdependent network with Bernoulli interconnections.

    ``intra`` is either one spec used for every layer or a list of ``k`` specs.
    The inter-layer edges are exactly those :func:`gen_k_partite` would draw
    for the same seed; layer ``i`` draws from its own independent stream.
    """
    _check_kn(n, k)
    _check_prob(p)
    seed = _as_seed(seed)
    specs = [intra] * k if isinstance(intra, IntraLayerSpec) else list(intra)
    if len(specs) != k:
        raise ValueError(f"expected {k} intra-layer specs, got {len(specs)}")
    a = _inter_matrix(n, k, p, seed)
    for i, spec in enumerate(specs):
        a[i * n:(i + 1) * n, i * n:(i + 1) * n] = spec.block(n, rng_for(seed, _INTRA, i))
    return LayeredGraph(graph_from_matrix(a), k, n)


def gen_erdos_renyi(n: int, p: float, seed: GenSeed | int) -> Graph:
    _check_prob(p)
    a = IntraLayerSpec("erdos_renyi", q=p).block(n, rng_for(_as_seed(seed), _INTRA, 0))
    return graph_from_matrix(a)


def gen_fig1(n: int, t: int = 1) -> LayeredGraph:
    """Four blocks of ``n/4`` nodes: V1-V2 and V3-V4 complete bipartite, V2-V3 t-regular.

    The V2-V3 coupling is circulant: node ``j`` of V2 links to nodes
    ``j, j+1, ..., j+t-1 (mod n/4)`` of V3.  ``t = 1`` is a perfect matching.
    Returned as a 4-layer graph with layers V1..V4.
    """
    if n <= 0 or n % 4:
        raise ValueError("n must be a positive multiple of 4")
    m = n // 4
    if not 1 <= t <= m:
        raise ValueError(f"t must lie in [1, {m}]")
    v1, v2, v3, v4 = (range(i * m, (i + 1) * m) for i in range(4))
    edges = [(a, b) for a in v1 for b in v2]
    edges += [(a, b) for a in v3 for b in v4]
    edges += [(v2[j], v3[(j + s) % m]) for j in range(m) for s in range(t)]
    return LayeredGraph(Graph.from_edges(n, edges), 4, m)
