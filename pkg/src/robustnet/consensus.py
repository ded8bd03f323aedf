"""W-MSR resilient consensus on an undirected graph.

Each round, every normal node looks at its neighbors' values, discards up to
``F`` values strictly above its own (the largest ones) and up to ``F``
strictly below (the smallest ones), and moves to the uniform average of what
is left together with its own value.  Adversary nodes broadcast scripted
values instead of updating.
"""
from __future__ import annotations

import csv
import json
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

import numpy as np

from .graph_core import Graph, as_mask, mask_to_nodes

__all__ = [
    "AdversaryScript",
    "ConsensusConfig",
    "ConsensusTrace",
    "is_f_local",
    "wmsr_step",
    "run_consensus",
    "split_scenario",
    "write_trace_csv",
]

# relative slack for the hull test; averaging can round a hair past the endpoints
_HULL_RTOL = 1e-12


@dataclass(frozen=True)
class AdversaryScript:
    """Value an adversary broadcasts in round ``t``.

    ``constant``: ``c``.  ``ramp``: ``c + slope * t``.  ``random_in``: uniform
    on ``[lo, hi]``, drawn from a stream keyed by ``(seed, node, t)``.
    """

    kind: str
    c: float = 0.0
    slope: float = 0.0
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "ramp", "random_in"):
            raise ValueError(f"unknown adversary script {self.kind!r}")
        if self.kind == "random_in" and not self.lo <= self.hi:
            raise ValueError("random_in needs lo <= hi")

    def value(self, t: int, node: int, seed: int) -> float:
        if self.kind == "constant":
            out = self.c
        elif self.kind == "ramp":
            out = self.c + self.slope * t
        else:
            rng = np.random.default_rng([seed & (2**64 - 1), node, t])
            out = float(rng.uniform(self.lo, self.hi))
        if not math.isfinite(out):
            raise ValueError(f"adversary {node} produced non-finite value at round {t}")
        return out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "c": self.c, "slope": self.slope, "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class ConsensusConfig:
    f_param: int
    initial_values: tuple[float, ...]
    adversaries: Mapping[int, AdversaryScript] = field(default_factory=dict)
    rounds_max: int = 500
    convergence_eps: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.f_param < 0:
            raise ValueError("F must be non-negative")
        if self.rounds_max < 0:
            raise ValueError("rounds_max must be non-negative")
        object.__setattr__(self, "initial_values", tuple(float(x) for x in self.initial_values))
        if not all(math.isfinite(x) for x in self.initial_values):
            raise ValueError("initial values must be finite")
        object.__setattr__(self, "adversaries", dict(sorted(self.adversaries.items())))

    @property
    def adversary_mask(self) -> int:
        return as_mask(self.adversaries)

    def normal_nodes(self) -> list[int]:
        return [v for v in range(len(self.initial_values)) if v not in self.adversaries]

    def to_dict(self) -> dict:
        return {
            "f_param": self.f_param,
            "rounds_max": self.rounds_max,
            "convergence_eps": self.convergence_eps,
            "seed": self.seed,
            "initial_values": list(self.initial_values),
            "adversaries": {str(v): s.to_dict() for v, s in self.adversaries.items()},
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> ConsensusConfig:
        return cls(
            f_param=int(d["f_param"]),
            initial_values=tuple(d["initial_values"]),
            adversaries={int(v): AdversaryScript(**s) for v, s in d.get("adversaries", {}).items()},
            rounds_max=int(d.get("rounds_max", 500)),
            convergence_eps=float(d.get("convergence_eps", 1e-6)),
            seed=int(d.get("seed", 0)),
        )

    @classmethod
    def load(cls, path: str | Path) -> ConsensusConfig:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")


@dataclass
class ConsensusTrace:
    values: np.ndarray  # (rounds + 1, N)
    adversary_mask: int
    converged_round: int | None
    final_spread: float
    validity: bool
    f_local: bool

    @property
    def rounds(self) -> int:
        return len(self.values) - 1


def is_f_local(g: Graph, adversaries: Iterable[int] | int, f: int) -> bool:
    """True iff every normal node has at most ``f`` adversarial neighbors."""
    adv = as_mask(adversaries)
    return all((g.adjacency[v] & adv).bit_count() <= f
               for v in range(g.node_count) if not adv >> v & 1)


def _adversary_values(cfg: ConsensusConfig, t: int) -> dict[int, float]:
    return {v: s.value(t, v, cfg.seed) for v, s in cfg.adversaries.items()}


def _filtered_average(own: float, nbr_vals: np.ndarray, f: int) -> float:
    if f:
        above = np.sort(nbr_vals[nbr_vals > own])
        below = np.sort(nbr_vals[nbr_vals < own])
        equal = nbr_vals[nbr_vals == own]
        kept = np.concatenate([below[min(f, len(below)):], equal,
                               above[:len(above) - min(f, len(above))]])
    else:
        kept = nbr_vals
    return (own + float(kept.sum())) / (len(kept) + 1)


def wmsr_step(g: Graph, values, cfg: ConsensusConfig, round_index: int = 0) -> np.ndarray:
    """Values after one synchronous round starting from round ``round_index``.

    Adversaries take their scripted value for round ``round_index + 1``.
    """
    x = np.asarray(values, dtype=float)
    if x.shape != (g.node_count,):
        raise ValueError("values must have one entry per node")
    out = x.copy()
    for v in range(g.node_count):
        if v in cfg.adversaries:
            continue
        nb = mask_to_nodes(g.adjacency[v])
        out[v] = _filtered_average(x[v], x[nb], cfg.f_param)
    for v, val in _adversary_values(cfg, round_index + 1).items():
        out[v] = val
    return out


def run_consensus(g: Graph, cfg: ConsensusConfig) -> ConsensusTrace:
    """Iterate W-MSR until the normal-node spread drops below ``convergence_eps``.

    ``validity`` records whether every normal value stayed inside the hull of
    the initial normal values in every round.
    """
    if len(cfg.initial_values) != g.node_count:
        raise ValueError("initial_values must have one entry per node")
    if any(v >= g.node_count for v in cfg.adversaries):
        raise ValueError("adversary index out of range")
    normal = np.array(cfg.normal_nodes(), dtype=np.int64)
    x = np.array(cfg.initial_values, dtype=float)
    for v, val in _adversary_values(cfg, 0).items():
        x[v] = val
    lo, hi = float(x[normal].min()), float(x[normal].max())
    slack = _HULL_RTOL * max(1.0, abs(lo), abs(hi))
    history = [x]
    validity = True
    converged = None
    for t in range(cfg.rounds_max + 1):
        xn = x[normal]
        if validity and (xn.min() < lo - slack or xn.max() > hi + slack):
            validity = False
        if float(xn.max() - xn.min()) < cfg.convergence_eps:
            converged = t
            break
        if t == cfg.rounds_max:
            break
        x = wmsr_step(g, x, cfg, t)
        history.append(x)
    xn = x[normal]
    return ConsensusTrace(
        values=np.vstack(history),
        adversary_mask=cfg.adversary_mask,
        converged_round=converged,
        final_spread=float(xn.max() - xn.min()),
        validity=validity,
        f_local=is_f_local(g, cfg.adversary_mask, cfg.f_param),
    )


def split_scenario(g: Graph, witness: tuple[int, int], f: int, low: float = 0.0,
                   high: float = 10.0, rounds_max: int = 500) -> ConsensusConfig:
    """Consensus setup built from a non-robustness witness pair.

    Nodes of the first set start at ``low``, everyone else at ``high``; the
    lowest-indexed node of the first set turns adversary and holds ``low``.
    When neither witness set is (F+1)-reachable, each side discards the other
    side's values forever and the two groups never meet.
    """
    s1, _ = witness
    init = [low if s1 >> v & 1 else high for v in range(g.node_count)]
    adversary = mask_to_nodes(s1)[0]
    return ConsensusConfig(
        f_param=f,
        initial_values=tuple(init),
        adversaries={adversary: AdversaryScript("constant", c=low)},
        rounds_max=rounds_max,
    )


def write_trace_csv(trace: ConsensusTrace, fh: IO[str]) -> None:
    """``round,node,value,is_adversary`` rows, one per node per round."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["round", "node", "value", "is_adversary"])
    for t, row in enumerate(trace.values):
        for v, val in enumerate(row):
            writer.writerow([t, v, repr(float(val)), int(trace.adversary_mask >> v & 1)])
