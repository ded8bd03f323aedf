"""Brute-force reference implementations used only by the tests.

These deliberately share no code with the package beyond reading the
adjacency of a Graph: plain sets, itertools and textbook algorithms.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def nbr_sets(g) -> list[set[int]]:
    return [{u for u in range(g.node_count) if g.adjacency[v] >> u & 1}
            for v in range(g.node_count)]


def reach_set(nbrs, s: set[int]) -> int:
    return max(len(nbrs[v] - s) for v in s)


def robustness_bruteforce(g) -> int:
    """min over disjoint nonempty (S1, S2) of max(reach S1, reach S2) via 3^N labelings."""
    nbrs = nbr_sets(g)
    n = g.node_count
    best = math.inf
    for labels in itertools.product((0, 1, 2), repeat=n):
        s1 = {v for v in range(n) if labels[v] == 1}
        s2 = {v for v in range(n) if labels[v] == 2}
        if not s1 or not s2:
            continue
        best = min(best, max(reach_set(nbrs, s1), reach_set(nbrs, s2)))
    return best


def isoperimetric_bruteforce(g) -> Fraction:
    nbrs = nbr_sets(g)
    n = g.node_count
    best = None
    for size in range(1, n // 2 + 1):
        for a in itertools.combinations(range(n), size):
            aset = set(a)
            b = sum(len(nbrs[v] - aset) for v in a)
            val = Fraction(b, size)
            if best is None or val < best:
                best = val
    return best


def connected_without(nbrs, removed: set[int]) -> bool:
    alive = [v for v in range(len(nbrs)) if v not in removed]
    if len(alive) <= 1:
        return True
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for u in nbrs[v]:
            if u not in removed and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(alive)


def vertex_connectivity_bruteforce(g) -> int:
    """Smallest removal set that disconnects the graph (N-1 for complete graphs)."""
    nbrs = nbr_sets(g)
    n = g.node_count
    for size in range(0, n - 1):
        for removed in itertools.combinations(range(n), size):
            if not connected_without(nbrs, set(removed)):
                return size
    return n - 1


def is_connected_bfs(g) -> bool:
    return connected_without(nbr_sets(g), set())


def jacobi_eigenvalues(a: np.ndarray, sweeps: int = 100, tol: float = 1e-13) -> np.ndarray:
    """Cyclic Jacobi rotations on a symmetric matrix; ascending eigenvalues."""
    a = np.array(a, dtype=float)
    n = len(a)
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-18 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))


def laplacian_by_hand(g) -> np.ndarray:
    nbrs = nbr_sets(g)
    n = g.node_count
    L = np.zeros((n, n))
    for v in range(n):
        L[v, v] = len(nbrs[v])
        for u in nbrs[v]:
            L[v, u] = -1
    return L
