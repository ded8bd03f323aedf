"""Exact and certified r-robustness.

A set ``S`` is r-reachable when some member has at least ``r`` neighbors
outside ``S``; a graph is r-robust when every pair of disjoint nonempty sets
has an r-reachable member.  Writing ``reach(S)`` for the largest outside
degree inside ``S``, the robustness parameter is

    min over disjoint nonempty (S1, S2) of max(reach(S1), reach(S2)).

The exact routines compute ``reach`` for every subset and then, via a
subset-minimum transform, ``best(T) = min_{S subset of T} reach(S)``; the
parameter is ``min_S max(reach(S), best(V \\ S))``.  That is O(N 2^N) work
instead of a walk over the 3^N ordered pairs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _subsets
from ._subsets import TooLargeError
from .graph_core import Graph, NodeSet, as_mask, mask_to_nodes
from .spectral import default_tolerance

__all__ = [
    "TooLargeError",
    "IndeterminateError",
    "RobustnessVerdict",
    "is_r_reachable",
    "reach",
    "is_r_robust_exact",
    "robustness_parameter_exact",
    "robustness_with_witness",
    "certify_r_robust",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 20

METHODS = ("exact_enumeration", "min_degree_refutation",
           "isoperimetric_certificate", "spectral_certificate")


class IndeterminateError(RuntimeError):
    """No certificate decides the query; callers count this outcome separately."""


@dataclass(frozen=True)
class RobustnessVerdict:
    r_queried: int
    status: str
    method: str
    witness: tuple[int, int] | None = None
    certificate_value: float | None = None

    def __post_init__(self):
        if self.status not in ("robust", "not_robust"):
            raise ValueError(f"bad status {self.status!r}")
        if self.method not in METHODS:
            raise ValueError(f"bad method {self.method!r}")
        if self.method == "min_degree_refutation" and self.status == "robust":
            raise ValueError("a minimum-degree refutation cannot certify robustness")
        if self.witness is not None:
            s1, s2 = self.witness
            if not s1 or not s2 or s1 & s2:
                raise ValueError("witness sets must be nonempty and disjoint")

    @property
    def robust(self) -> bool:
        return self.status == "robust"

    def to_dict(self) -> dict:
        s1, s2 = self.witness if self.witness else (None, None)
        return {
            "r": self.r_queried,
            "status": self.status,
            "method": self.method,
            "witness_s1": mask_to_nodes(s1) if s1 else None,
            "witness_s2": mask_to_nodes(s2) if s2 else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def reach(g: Graph, s: NodeSet) -> int:
    """Largest number of outside neighbors held by a single member of ``s``."""
    mask = as_mask(s)
    if mask == 0:
        raise ValueError("reach of an empty set")
    outside = g.full_mask & ~mask
    return max((g.adjacency[v] & outside).bit_count() for v in mask_to_nodes(mask))


def is_r_reachable(g: Graph, s: NodeSet, r: int) -> bool:
    if r < 1:
        raise ValueError("r must be >= 1")
    return reach(g, s) >= r


@dataclass
class _PairSearch:
    value: int
    s1: int
    s2: int
    enumerated: int = field(default=0)


def _min_max_pair(g: Graph) -> _PairSearch:
    n = g.node_count
    table = _subsets.reach_table(g)
    best = _subsets.subset_min(table, n)
    full = (1 << n) - 1
    masks = np.arange(1, full, dtype=np.int64)  # nonempty proper subsets
    score = np.maximum(table[masks], best[full ^ masks])
    i = int(np.argmin(score))
    value = int(score[i])
    s1 = int(masks[i])
    # a disjoint partner realizing best(V \ S1); smallest mask among ties
    cand = np.arange(1 << n, dtype=np.int64)
    cand = cand[((cand & s1) == 0) & (cand != 0)]
    j = int(np.argmin(table[cand]))
    s2 = int(cand[j])
    s1, s2 = _grow_witness(g, s1, s2, value)
    return _PairSearch(value, s1, s2, enumerated=len(masks))


def _grow_witness(g: Graph, s1: int, s2: int, value: int) -> tuple[int, int]:
    # Enlarge both sides while neither reach exceeds value, then put node 0's side first.
    changed = True
    while changed:
        changed = False
        for w in mask_to_nodes(g.full_mask & ~(s1 | s2)):
            bit = 1 << w
            if reach(g, s1 | bit) <= value:
                s1 |= bit
                changed = True
            elif reach(g, s2 | bit) <= value:
                s2 |= bit
                changed = True
    if (s2 & -s2) < (s1 & -s1):
        s1, s2 = s2, s1
    return s1, s2


def robustness_with_witness(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> tuple[int, tuple[int, int]]:
    """Robustness parameter plus a disjoint pair attaining it (as bitmasks)."""
    _subsets.check_cap(g, node_cap, "exact robustness")
    if g.node_count < 2:
        raise ValueError("robustness parameter needs at least 2 nodes")
    found = _min_max_pair(g)
    return found.value, (found.s1, found.s2)


def robustness_parameter_exact(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Largest r for which ``g`` is r-robust (0 when disconnected)."""
    return robustness_with_witness(g, node_cap)[0]


def is_r_robust_exact(g: Graph, r: int, node_cap: int = DEFAULT_NODE_CAP) -> RobustnessVerdict:
    if r < 1:
        raise ValueError("r must be >= 1")
    _subsets.check_cap(g, node_cap, "exact robustness")
    if g.node_count < 2:
        # no pair of disjoint nonempty sets exists
        return RobustnessVerdict(r, "robust", "exact_enumeration")
    value, witness = robustness_with_witness(g, node_cap)
    if value >= r:
        return RobustnessVerdict(r, "robust", "exact_enumeration")
    return RobustnessVerdict(r, "not_robust", "exact_enumeration", witness=witness)


def certify_r_robust(g: Graph, r: int, lambda2: float, i_lower=None,
                     d_min: int | None = None, tol: float | None = None) -> RobustnessVerdict:
    """Decide r-robustness without enumeration, or raise :class:`IndeterminateError`.

    * ``d_min < r`` refutes (an r-robust graph has minimum degree >= r);
    * ``lambda2 / 2 > r - 1`` with margin ``10 * tol`` certifies, since
      ``i(G) >= lambda2 / 2`` and ``i(G) > r - 1`` forces r-robustness;
    * an exact isoperimetric constant ``i_lower > r - 1`` certifies directly.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if d_min is None:
        d_min = min(g.degrees())
    if d_min < r:
        return RobustnessVerdict(r, "not_robust", "min_degree_refutation",
                                 certificate_value=float(d_min))
    tol = default_tolerance(g) if tol is None else tol
    if lambda2 / 2 - (r - 1) > 10 * tol:
        return RobustnessVerdict(r, "robust", "spectral_certificate",
                                 certificate_value=float(lambda2))
    if i_lower is not None and i_lower > r - 1:
        return RobustnessVerdict(r, "robust", "isoperimetric_certificate",
                                 certificate_value=float(i_lower))
    raise IndeterminateError(
        f"no certificate decides {r}-robustness (lambda2={lambda2:.6g}, d_min={d_min})")
