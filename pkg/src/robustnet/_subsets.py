"""Vectorized per-subset quantities over all 2**N node subsets.

Subset ``M`` is addressed by its integer bitmask.  Arrays are built in chunks
of consecutive masks so memory stays bounded for N up to the mid twenties.
"""
from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from .graph_core import Graph

_CHUNK_BITS = 20


class TooLargeError(ValueError):
    """Exact enumeration refused because the graph exceeds the node cap."""


def check_cap(g: Graph, node_cap: int, what: str) -> None:
    if g.node_count > node_cap:
        raise TooLargeError(
            f"{what} on {g.node_count} nodes exceeds node_cap={node_cap}; "
            "use certificate/bound methods or raise the cap explicitly")


def mask_chunks(n: int) -> Iterator[np.ndarray]:
    total = 1 << n
    step = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, step):
        yield np.arange(start, min(start + step, total), dtype=np.int64)


def outside_counts(g: Graph, masks: np.ndarray) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(v, in_set, |N(v) \\ M|)`` for every node ``v`` over the mask array."""
    for v, nb in enumerate(g.adjacency):
        cnt = np.bitwise_count(np.int64(nb) & ~masks)
        in_set = ((masks >> v) & 1).astype(bool)
        yield v, in_set, cnt


def reach_table(g: Graph) -> np.ndarray:
    """``reach[M] = max_{v in M} |N(v) \\ M|`` for every mask (0 for the empty set)."""
    n = g.node_count
    out = np.zeros(1 << n, dtype=np.int32)
    for masks in mask_chunks(n):
        acc = np.zeros(len(masks), dtype=np.int32)
        for _, in_set, cnt in outside_counts(g, masks):
            np.maximum(acc, np.where(in_set, cnt, 0), out=acc)
        out[masks[0]:masks[-1] + 1] = acc
    return out


def subset_min(values: np.ndarray, n: int) -> np.ndarray:
    """``result[T] = min over nonempty S subset of T of values[S]``; ``result[0]`` is a sentinel max."""
    f = values.astype(np.int32, copy=True)
    f[0] = np.iinfo(np.int32).max
    for i in range(n):
        view = f.reshape(-1, 2, 1 << i)
        np.minimum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return f


def lexicographic_key(masks: np.ndarray, n: int) -> np.ndarray:
    """Bit-reversed masks: among equal-size sets, the lexicographically smallest
    sorted member tuple has the largest key."""
    key = np.zeros_like(masks)
    for v in range(n):
        key |= ((masks >> v) & 1) << (n - 1 - v)
    return key
