"""Graph Laplacian and algebraic connectivity."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import IO

import numpy as np

from .graph_core import Graph, adjacency_matrix, min_max_degree

__all__ = [
    "SpectrumError",
    "LaplacianSpectrum",
    "default_tolerance",
    "laplacian",
    "laplacian_spectrum",
    "algebraic_connectivity",
    "cheeger_sandwich_check",
    "monotone_lambda2_check",
    "write_spectrum_csv",
]


class SpectrumError(RuntimeError):
    """The eigensolver failed to converge."""


def default_tolerance(g: Graph) -> float:
    d_max = max(g.degrees(), default=0)
    return 1e-9 * max(1.0, 2.0 * d_max)


@dataclass(frozen=True)
class LaplacianSpectrum:
    eigenvalues: np.ndarray
    tolerance: float

    @property
    def lambda2(self) -> float:
        return float(self.eigenvalues[1])


def laplacian(g: Graph) -> np.ndarray:
    """``L = D - A`` as an integer matrix."""
    a = adjacency_matrix(g).astype(np.int64)
    return np.diag(a.sum(axis=1)) - a


def laplacian_spectrum(g: Graph, tol: float | None = None) -> LaplacianSpectrum:
    """All Laplacian eigenvalues in ascending order.

    Uses LAPACK's symmetric tridiagonal-reduction solver via ``eigvalsh``; the
    result is deterministic for a given matrix.
    """
    if g.node_count < 1:
        raise ValueError("spectrum of the empty graph")
    tol = default_tolerance(g) if tol is None else tol
    L = laplacian(g).astype(float)
    try:
        w = np.linalg.eigvalsh(L)
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"eigensolver did not converge on {g.node_count} nodes: {exc}") from exc
    return LaplacianSpectrum(np.sort(w), tol)


def algebraic_connectivity(g: Graph, tol: float | None = None) -> float:
    """Second-smallest Laplacian eigenvalue, clamped into ``[0, 2 d_max]``."""
    if g.node_count < 2:
        raise ValueError("algebraic connectivity needs at least 2 nodes")
    spec = laplacian_spectrum(g, tol)
    lam = spec.lambda2
    _, d_max = min_max_degree(g)
    if lam < 0:
        if lam < -10 * spec.tolerance:
            raise SpectrumError(f"lambda_2 = {lam} is negative beyond tolerance")
        lam = 0.0
    return min(lam, 2.0 * d_max)


def cheeger_sandwich_check(g: Graph, lambda2: float, i_exact: Fraction | float,
                           tol: float | None = None) -> bool:
    """Check ``i^2 / (2 d_max) <= lambda2 <= 2 i`` with ``10 * tol`` slack."""
    tol = default_tolerance(g) if tol is None else tol
    slack = 10 * tol
    _, d_max = min_max_degree(g)
    i_val = Fraction(i_exact)
    if d_max == 0:
        lower_ok = lambda2 >= -slack and i_val == 0
    else:
        lower_ok = float(i_val * i_val / (2 * d_max)) <= lambda2 + slack
    upper_ok = lambda2 <= float(2 * i_val) + slack
    return lower_ok and upper_ok


def monotone_lambda2_check(g: Graph, g_plus_edge: Graph, tol: float | None = None) -> bool:
    """True iff adding the single extra edge did not lower lambda_2 (beyond ``10 * tol``)."""
    if g.node_count != g_plus_edge.node_count:
        raise ValueError("graphs have different node counts")
    extra = 0
    for a, b in zip(g.adjacency, g_plus_edge.adjacency):
        if a & ~b:
            raise ValueError("second graph is missing an edge of the first")
        extra += (b & ~a).bit_count()
    if extra != 2:
        raise ValueError("graphs must differ by exactly one edge")
    tol = default_tolerance(g_plus_edge) if tol is None else tol
    return algebraic_connectivity(g_plus_edge, tol) >= algebraic_connectivity(g, tol) - 10 * tol


def write_spectrum_csv(rows: list[tuple[str, LaplacianSpectrum]], fh: IO[str]) -> None:
    """Write ``graph_id,index,eigenvalue`` rows (``index`` is 1-based)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["graph_id", "index", "eigenvalue"])
    for graph_id, spec in rows:
        for idx, lam in enumerate(spec.eigenvalues, start=1):
            writer.writerow([graph_id, idx, repr(float(lam))])
