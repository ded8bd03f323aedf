"""Monte Carlo sweeps over random k-partite / interdependent networks.

Asymptotic ("a.a.s.") statements are measured as empirical probabilities or
means over ``trials`` seeded graphs per row; a row is one ``(n, x-or-c)``
point and one metric.  Trial ``t`` of row ``j`` always uses seed
``GenSeed(derive_seed(base_seed, j), t)``, so output does not depend on the
number of workers.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.stats import binomtest

from ._subsets import TooLargeError
from .generators import GenSeed, IntraLayerSpec, derive_seed, gen_interdependent, gen_k_partite
from .graph_core import LayeredGraph, min_max_degree
from .robustness import IndeterminateError, certify_r_robust, robustness_parameter_exact
from .spectral import algebraic_connectivity
from .structural import degree_bound, isoperimetric_exact

__all__ = [
    "ExperimentSpec",
    "SweepRow",
    "SweepResult",
    "threshold_p",
    "growth_p",
    "wilson_interval",
    "run_sweep",
    "run_threshold_sweep",
    "run_growth_sweep",
    "run_boundary_concentration",
    "run_property_sr_check",
    "monotone_within_wilson",
    "PROPORTION_METRICS",
    "MEAN_METRICS",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ["family", "n", "k", "r", "x_or_c", "p", "metric", "value",
               "ci_lo", "ci_hi", "trials", "indeterminate"]

PROPORTION_METRICS = ("min_deg_ge_r", "robust_exact", "robust_certified", "d_max_bound",
                      "property_s_r")
MEAN_METRICS = ("lambda2", "i_exact", "i_bounds", "lambda2_over_np", "i_lower_over_np",
                "d_min_over_np", "d_max_over_np")
GROWTH_METRICS = ("lambda2_over_np", "i_lower_over_np", "d_min_over_np", "d_max_over_np",
                  "d_max_bound")
_SPECTRAL_METRICS = {"robust_certified", "lambda2", "i_bounds", "lambda2_over_np",
                     "i_lower_over_np"}


def threshold_p(n: int, k: int, r: int, x: float = 0.0) -> float:
    """``(ln n + (r-1) ln ln n + x) / ((k-1) n)``, clamped to ``[0, 1]``."""
    if n < 3:
        raise ValueError("threshold_p needs n >= 3 so that ln ln n > 0")
    if k < 2 or r < 1:
        raise ValueError("need k >= 2 and r >= 1")
    p = (math.log(n) + (r - 1) * math.log(math.log(n)) + x) / ((k - 1) * n)
    return min(1.0, max(0.0, p))


def growth_p(n: int, k: int, c: float) -> float:
    """``c ln n / ((k-1) n)``; ``c > 1`` keeps ``ln n / ((k-1) n p) = 1/c`` below 1."""
    if c <= 1:
        raise ValueError("growth sweeps need c > 1")
    return min(1.0, c * math.log(n) / ((k - 1) * n))


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval."""
    if trials == 0:
        return (math.nan, math.nan)
    ci = binomtest(successes, trials).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative sweep description.

    ``p_rule`` selects how each row's ``p`` is set: ``threshold`` uses
    :func:`threshold_p` with each entry of ``x_offsets``; ``c_over_threshold``
    uses :func:`growth_p` with each entry of ``c_values``; ``explicit`` uses
    ``p_values`` directly.  ``intra`` is a layer topology string understood by
    :meth:`IntraLayerSpec.parse`, plus ``er:p`` meaning Erdos-Renyi layers with
    the row's own ``p``.
    """

    n_list: tuple[int, ...]
    k: int = 2
    r: int = 1
    family: str = "k_partite"
    intra: str = "empty"
    p_rule: str = "threshold"
    x_offsets: tuple[float, ...] = (0.0,)
    c_values: tuple[float, ...] = ()
    p_values: tuple[float, ...] = ()
    trials: int = 100
    base_seed: int = 0
    metrics: tuple[str, ...] = ("min_deg_ge_r",)
    epsilon: float = 0.25
    robust_cap: int = 20
    iso_cap: int = 24

    def __post_init__(self):
        for name in ("n_list", "x_offsets", "c_values", "p_values", "metrics"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.n_list or min(self.n_list) < 2:
            raise ValueError("n_list must be nonempty with every n >= 2")
        if self.k < 2 or self.r < 1:
            raise ValueError("need k >= 2 and r >= 1")
        if self.family not in ("k_partite", "interdependent"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.p_rule not in ("threshold", "c_over_threshold", "explicit"):
            raise ValueError(f"unknown p_rule {self.p_rule!r}")
        if not self.params:
            raise ValueError(f"p_rule {self.p_rule!r} has no parameter values")
        if self.p_rule == "c_over_threshold" and min(self.c_values) <= 1:
            raise ValueError("growth sweeps need every c > 1")
        if self.p_rule == "explicit" and not all(0 <= p <= 1 for p in self.p_values):
            raise ValueError("explicit p values must lie in [0, 1]")
        unknown = set(self.metrics) - set(PROPORTION_METRICS) - set(MEAN_METRICS)
        if unknown:
            raise ValueError(f"unknown metrics {sorted(unknown)}")
        if self.family == "interdependent" and self.intra != "er:p":
            IntraLayerSpec.parse(self.intra)

    @property
    def params(self) -> tuple[float, ...]:
        return {"threshold": self.x_offsets, "c_over_threshold": self.c_values,
                "explicit": self.p_values}[self.p_rule]

    def p_for(self, n: int, param: float) -> float:
        if self.p_rule == "threshold":
            return threshold_p(n, self.k, self.r, param)
        if self.p_rule == "c_over_threshold":
            return growth_p(n, self.k, param)
        return float(param)

    def rows(self) -> list[tuple[int, float, float]]:
        return [(n, a, self.p_for(n, a)) for n in self.n_list for a in self.params]

    @property
    def family_label(self) -> str:
        return "k_partite" if self.family == "k_partite" else f"interdependent({self.intra})"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentSpec:
        return cls(**d)

    @classmethod
    def load(cls, path: str | Path) -> ExperimentSpec:
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    k: int
    r: int
    x_or_c: float
    p: float
    metric: str
    value: float
    ci_lo: float
    ci_hi: float
    trials: int
    indeterminate: int

    def as_list(self) -> list:
        out = []
        for name in CSV_COLUMNS:
            v = getattr(self, name)
            out.append(repr(float(v)) if isinstance(v, float) else v)
        return out


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)

    def get(self, metric: str, n: int | None = None, x_or_c: float | None = None) -> list[SweepRow]:
        return [row for row in self.rows if row.metric == metric
                and (n is None or row.n == n) and (x_or_c is None or row.x_or_c == x_or_c)]

    def value(self, metric: str, n: int, x_or_c: float) -> float:
        (row,) = self.get(metric, n, x_or_c)
        return row.value

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.as_list())

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


# ---------------------------------------------------------------------------
# trial evaluation
# ---------------------------------------------------------------------------

def _build(spec: ExperimentSpec, n: int, p: float, seed: GenSeed) -> LayeredGraph:
    if spec.family == "k_partite":
        return gen_k_partite(n, spec.k, p, seed)
    intra = IntraLayerSpec("erdos_renyi", q=p) if spec.intra == "er:p" else IntraLayerSpec.parse(spec.intra)
    return gen_interdependent(n, spec.k, p, intra, seed)


def _trial(args: tuple) -> dict[str, object]:
    """Outcome per metric: bool / float, ``None`` for an undecided certificate,
    or the string ``"cap"`` when exact enumeration was refused."""
    spec, n, p, row_seed, t = args
    lg = _build(spec, n, p, GenSeed(row_seed, t))
    g = lg.graph
    metrics = set(spec.metrics)
    d_min, d_max = min_max_degree(g)
    np_scale = n * p
    out: dict[str, object] = {}
    lam = None
    if metrics & _SPECTRAL_METRICS:
        lam = algebraic_connectivity(g)
    iso = None
    for m in spec.metrics:
        if m == "min_deg_ge_r":
            out[m] = d_min >= spec.r
        elif m == "robust_exact":
            try:
                out[m] = robustness_parameter_exact(g, spec.robust_cap) >= spec.r
            except TooLargeError:
                out[m] = "cap"
        elif m == "robust_certified":
            try:
                out[m] = certify_r_robust(g, spec.r, lam, d_min=d_min).robust
            except IndeterminateError:
                out[m] = None
        elif m in ("i_exact", "property_s_r"):
            try:
                if iso is None:
                    iso = isoperimetric_exact(g, spec.iso_cap).value
                out[m] = float(iso) if m == "i_exact" else iso > spec.r - 1
            except TooLargeError:
                out[m] = "cap"
        elif m == "lambda2":
            out[m] = lam
        elif m == "i_bounds":
            out[m] = (lam / 2.0, float(d_min))
        elif m == "d_max_bound":
            out[m] = d_max <= degree_bound(n, spec.k, p, spec.epsilon) if p > 0 else False
        elif m == "lambda2_over_np":
            out[m] = lam / np_scale if np_scale else math.nan
        elif m == "i_lower_over_np":
            out[m] = lam / 2.0 / np_scale if np_scale else math.nan
        elif m == "d_min_over_np":
            out[m] = d_min / np_scale if np_scale else math.nan
        elif m == "d_max_over_np":
            out[m] = d_max / np_scale if np_scale else math.nan
    return out


def _aggregate(spec: ExperimentSpec, n: int, param: float, p: float, metric: str,
               outcomes: list) -> SweepRow:
    base = dict(family=spec.family_label, n=n, k=spec.k, r=spec.r, x_or_c=float(param),
                p=float(p), metric=metric, trials=len(outcomes))
    if any(o == "cap" for o in outcomes):
        return SweepRow(**base, value=math.nan, ci_lo=math.nan, ci_hi=math.nan,
                        indeterminate=len(outcomes))
    if metric in PROPORTION_METRICS:
        undecided = sum(o is None for o in outcomes)
        hits = sum(o is True for o in outcomes)
        lo, hi = wilson_interval(hits, len(outcomes))
        return SweepRow(**base, value=hits / len(outcomes), ci_lo=lo, ci_hi=hi,
                        indeterminate=undecided)
    if metric == "i_bounds":
        lower = np.array([o[0] for o in outcomes])
        upper = np.array([o[1] for o in outcomes])
        return SweepRow(**base, value=float(lower.mean()), ci_lo=float(lower.mean()),
                        ci_hi=float(upper.mean()), indeterminate=0)
    vals = np.array(outcomes, dtype=float)
    mean = float(vals.mean())
    std = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
    return SweepRow(**base, value=mean, ci_lo=mean - std, ci_hi=mean + std, indeterminate=0)


def run_sweep(spec: ExperimentSpec, workers: int | None = 1,
              progress: Callable[[str], None] | None = None) -> SweepResult:
    """Evaluate every metric of ``spec`` on every row.

    ``workers > 1`` farms trials out to a process pool; results are identical
    to the serial run.  ``None`` means one worker per CPU.
    """
    workers = (os.cpu_count() or 1) if workers is None else workers
    result = SweepResult()
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for j, (n, param, p) in enumerate(spec.rows()):
            row_seed = derive_seed(spec.base_seed, j)
            jobs = [(spec, n, p, row_seed, t) for t in range(spec.trials)]
            if pool is None:
                outcomes = [_trial(a) for a in jobs]
            else:
                outcomes = list(pool.map(_trial, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
            for m in spec.metrics:
                result.rows.append(_aggregate(spec, n, param, p, m, [o[m] for o in outcomes]))
            if progress:
                progress(f"row {j + 1}/{len(spec.rows())}: n={n} param={param} p={p:.6g}")
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def run_threshold_sweep(spec: ExperimentSpec, workers: int | None = 1,
                        progress: Callable[[str], None] | None = None) -> SweepResult:
    """Sweep ``p = threshold_p(n, k, r, x)`` over ``spec.n_list`` x ``spec.x_offsets``."""
    if spec.p_rule != "threshold":
        spec = replace(spec, p_rule="threshold")
    return run_sweep(spec, workers, progress)


def run_growth_sweep(spec: ExperimentSpec, workers: int | None = 1,
                     progress: Callable[[str], None] | None = None) -> SweepResult:
    """Sweep ``p = c ln n / ((k-1) n)`` and report degree/spectral ratios against ``n p``.

    Defaults to the ratio metrics plus the maximum-degree envelope check when
    ``spec.metrics`` is still the threshold-sweep default.
    """
    if spec.p_rule != "c_over_threshold":
        raise ValueError("growth sweeps need p_rule='c_over_threshold'")
    if spec.metrics == ("min_deg_ge_r",):
        spec = replace(spec, metrics=GROWTH_METRICS)
    return run_sweep(spec, workers, progress)


def run_boundary_concentration(n: int, k: int, p: float, trials: int,
                               seed: int = 0) -> SweepResult:
    """Sample the edge boundary of the first layer of a random k-partite graph.

    Rows: ``boundary_mean`` (empirical mean, +/- sample std),
    ``boundary_expected`` (``n^2 (k-1) p``), ``exceedance`` (fraction of
    trials with ``|boundary| >= (1 + delta) * expected`` where
    ``delta = sqrt(3 / ln n)``, Wilson interval) and ``chernoff_bound``
    (``exp(-expected * delta^2 / 3) = exp(-expected / ln n)``).
    """
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    expected = n * n * (k - 1) * p
    delta = math.sqrt(3.0) / math.sqrt(math.log(n))
    row_seed = derive_seed(seed, 0)
    sizes = []
    for t in range(trials):
        lg = gen_k_partite(n, k, p, GenSeed(row_seed, t))
        v1 = lg.layer_mask(0)
        outside = lg.graph.full_mask & ~v1
        sizes.append(sum((lg.graph.adjacency[v] & outside).bit_count() for v in range(n)))
    sizes = np.array(sizes, dtype=float)
    exceed = int((sizes >= (1 + delta) * expected).sum())
    mean = float(sizes.mean())
    std = float(sizes.std(ddof=1)) if trials > 1 else 0.0
    lo, hi = wilson_interval(exceed, trials)
    base = dict(family="k_partite", n=n, k=k, r=1, x_or_c=delta, p=float(p), trials=trials,
                indeterminate=0)
    bound = math.exp(-expected / math.log(n))
    return SweepResult([
        SweepRow(**base, metric="boundary_mean", value=mean, ci_lo=mean - std, ci_hi=mean + std),
        SweepRow(**base, metric="boundary_expected", value=float(expected),
                 ci_lo=float(expected), ci_hi=float(expected)),
        SweepRow(**base, metric="exceedance", value=exceed / trials, ci_lo=lo, ci_hi=hi),
        SweepRow(**base, metric="chernoff_bound", value=bound, ci_lo=bound, ci_hi=bound),
    ])


def run_property_sr_check(n: int, k: int, r: int, x: float | None, trials: int,
                          subset_cap: int = 24, *, p: float | None = None,
                          base_seed: int = 0, workers: int | None = 1) -> SweepResult:
    """Fraction of random k-partite graphs whose every set of at most ``kn/2``
    nodes has more than ``(r-1)|S|`` boundary edges (exact ``i(G) > r - 1``).

    ``p`` defaults to ``threshold_p(n, k, r, x)``.
    """
    if k * n > subset_cap:
        raise TooLargeError(f"k*n = {k * n} exceeds subset_cap={subset_cap}")
    if p is None:
        if x is None:
            raise ValueError("give either x or p")
        spec = ExperimentSpec(n_list=(n,), k=k, r=r, x_offsets=(x,), trials=trials,
                              base_seed=base_seed, metrics=("property_s_r",), iso_cap=subset_cap)
    else:
        spec = ExperimentSpec(n_list=(n,), k=k, r=r, p_rule="explicit", p_values=(p,),
                              trials=trials, base_seed=base_seed, metrics=("property_s_r",),
                              iso_cap=subset_cap)
    return run_sweep(spec, workers)


def monotone_within_wilson(rows: Sequence[SweepRow]) -> bool:
    """Proportions non-decreasing along ``rows`` (ordered by x), allowing each
    drop up to twice the larger of the two Wilson half-widths involved."""
    for a, b in zip(rows, rows[1:]):
        half = max(a.ci_hi - a.ci_lo, b.ci_hi - b.ci_lo) / 2
        if b.value < a.value - 2 * half:
            return False
    return True
