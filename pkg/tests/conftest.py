from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from robustnet.generators import GenSeed, IntraLayerSpec, gen_erdos_renyi, gen_fig1, gen_interdependent
from robustnet.graph_core import Graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fig1():
    return gen_fig1(16, 1)


@pytest.fixture
def k3():
    return Graph.complete(3)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def two_triangles() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@st.composite
def graphs(draw, min_nodes: int = 1, max_nodes: int = 7) -> Graph:
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def random_graph_family(index: int, max_nodes: int, seed: int = 0) -> Graph:
    """Deterministic mix of graph families on at most ``max_nodes`` nodes."""
    rng = np.random.default_rng([seed, index])
    family = index % 4
    if family == 0:
        n = int(rng.integers(2, max_nodes + 1))
        return gen_erdos_renyi(n, float(rng.uniform(0.1, 0.9)), GenSeed(seed, index))
    if family == 1:
        k = int(rng.integers(2, 4))
        n = int(rng.integers(1, max_nodes // k + 1))
        return gen_interdependent(n, k, float(rng.uniform(0.2, 1.0)), IntraLayerSpec("empty"),
                                  GenSeed(seed, index)).graph
    if family == 2:
        k = int(rng.integers(2, 4))
        n = int(rng.integers(1, max_nodes // k + 1))
        intra = IntraLayerSpec("erdos_renyi", q=float(rng.uniform(0.0, 1.0)))
        return gen_interdependent(n, k, float(rng.uniform(0.1, 0.8)), intra,
                                  GenSeed(seed, index)).graph
    n4 = 4 * int(rng.integers(1, max_nodes // 4 + 1))
    t = int(rng.integers(1, n4 // 4 + 1))
    g = gen_fig1(n4, t).graph
    # sprinkle a few extra edges so the family is not only the canonical shape
    for _ in range(int(rng.integers(0, 3))):
        u, v = (int(x) for x in rng.choice(n4, 2, replace=False))
        if not g.has_edge(u, v):
            g = g.with_edge(u, v)
    return g
