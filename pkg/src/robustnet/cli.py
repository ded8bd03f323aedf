"""Command-line entry point: ``robustnet <subcommand> ...``.

Exit codes: 0 success, 2 usage/config/input error, 3 computation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from ._subsets import TooLargeError
from .consensus import ConsensusConfig, run_consensus, write_trace_csv
from .experiments import ExperimentSpec, run_growth_sweep, run_threshold_sweep, threshold_p
from .generators import GenSeed, IntraLayerSpec, gen_fig1, gen_interdependent
from .graph_core import (GraphFormatError, format_edge_list, mask_to_nodes, min_max_degree,
                         read_edge_list, write_layer_file)
from .robustness import (DEFAULT_NODE_CAP, IndeterminateError, certify_r_robust,
                         is_r_robust_exact, robustness_with_witness)
from .spectral import (SpectrumError, algebraic_connectivity, default_tolerance,
                       laplacian_spectrum, write_spectrum_csv)
from .structural import DEFAULT_ISO_CAP, isoperimetric_exact, vertex_connectivity

EXIT_USAGE = 2
EXIT_COMPUTE = 3


class UsageError(Exception):
    pass


def _warn(msg: str) -> None:
    print(f"robustnet: warning: {msg}", file=sys.stderr)


def _check_caps(args) -> None:
    if getattr(args, "robust_cap", None) is not None and args.robust_cap > DEFAULT_NODE_CAP:
        _warn(f"robustness node cap raised to {args.robust_cap} (default {DEFAULT_NODE_CAP}); "
              "exact enumeration is exponential in the node count")
    if getattr(args, "iso_cap", None) is not None and args.iso_cap > DEFAULT_ISO_CAP:
        _warn(f"isoperimetric node cap raised to {args.iso_cap} (default {DEFAULT_ISO_CAP}); "
              "exact enumeration is exponential in the node count")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def largest_certified_r(g, lambda2: float, tol: float) -> int:
    """Largest r the spectral certificate establishes (0 if none)."""
    r = 0
    while lambda2 / 2 - r > 10 * tol:
        r += 1
    return r


def analyze_graph(g, robust_cap: int = DEFAULT_NODE_CAP, iso_cap: int = DEFAULT_ISO_CAP) -> dict:
    """JSON-ready summary of degree, connectivity, expansion, spectral and robustness metrics."""
    if g.node_count < 2:
        raise UsageError("analyze needs a graph with at least 2 nodes")
    d_min, d_max = min_max_degree(g)
    tol = default_tolerance(g)
    lam = algebraic_connectivity(g, tol)
    report = {
        "n": g.node_count,
        "m": g.edge_count,
        "d_min": d_min,
        "d_max": d_max,
        "kappa": vertex_connectivity(g),
        "lambda2": lam,
        "i_lower": lam / 2.0,
        "i_upper": float(d_min),
        "i_bounds": [lam / 2.0, float(d_min)],
        "robustness_certified": largest_certified_r(g, lam, tol),
    }
    if g.node_count <= iso_cap:
        iso = isoperimetric_exact(g, iso_cap)
        report["i_exact"] = {"num": iso.value.numerator, "den": iso.value.denominator}
        report["i_argmin"] = iso.argmin_nodes
    if g.node_count <= robust_cap:
        value, (s1, s2) = robustness_with_witness(g, robust_cap)
        report["robustness_exact"] = value
        report["robustness_witness"] = [mask_to_nodes(s1), mask_to_nodes(s2)]
    return report


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    if (args.p is None) == (args.x is None):
        raise UsageError("give exactly one of --p or --x")
    p = args.p if args.p is not None else threshold_p(args.n, args.k, args.r, args.x)
    intra = IntraLayerSpec.parse(args.intra)
    lg = gen_interdependent(args.n, args.k, p, intra, GenSeed(args.seed, args.trial))
    _emit(format_edge_list(lg.graph), args.output)
    if args.layers:
        write_layer_file(lg, args.layers)
    return 0


def cmd_fig1(args) -> int:
    lg = gen_fig1(args.n, args.t)
    _emit(format_edge_list(lg.graph), args.output)
    if args.layers:
        write_layer_file(lg, args.layers)
    return 0


def cmd_analyze(args) -> int:
    _check_caps(args)
    g = read_edge_list(args.graph)
    report = analyze_graph(g, args.robust_cap, args.iso_cap)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    return 0


def cmd_robustness(args) -> int:
    _check_caps(args)
    g = read_edge_list(args.graph)
    if args.method == "exact":
        verdict = is_r_robust_exact(g, args.r, args.robust_cap)
    else:
        lam = algebraic_connectivity(g)
        i_exact = None
        if g.node_count <= args.iso_cap and g.node_count >= 2:
            i_exact = isoperimetric_exact(g, args.iso_cap).value
        verdict = certify_r_robust(g, args.r, lam, i_exact)
    _emit(verdict.to_json() + "\n", args.output)
    return 0


def cmd_spectral(args) -> int:
    g = read_edge_list(args.graph)
    spec = laplacian_spectrum(g)
    if args.format == "csv":
        import io
        buf = io.StringIO()
        write_spectrum_csv([(Path(args.graph).stem, spec)], buf)
        _emit(buf.getvalue(), args.output)
    else:
        out = {"eigenvalues": [float(x) for x in spec.eigenvalues], "tolerance": spec.tolerance}
        if g.node_count >= 2:
            out["lambda2"] = algebraic_connectivity(g)
        _emit(json.dumps(out, indent=2) + "\n", args.output)
    return 0


def _sweep_spec(args, growth: bool) -> ExperimentSpec:
    if args.spec:
        spec = ExperimentSpec.load(args.spec)
    else:
        if not args.n_list:
            raise UsageError("give --spec or --n-list")
        fields = dict(n_list=tuple(_ints(args.n_list)), k=args.k, r=args.r, trials=args.trials,
                      base_seed=args.seed, robust_cap=args.robust_cap, iso_cap=args.iso_cap,
                      family="k_partite" if args.intra == "empty" else "interdependent",
                      intra=args.intra)
        if growth:
            fields.update(p_rule="c_over_threshold", c_values=tuple(_floats(args.c)))
        else:
            fields.update(p_rule="threshold", x_offsets=tuple(_floats(args.x)))
        if args.metrics:
            fields["metrics"] = tuple(args.metrics.split(","))
        elif growth:
            fields["metrics"] = ("lambda2_over_np", "i_lower_over_np", "d_min_over_np",
                                 "d_max_over_np", "d_max_bound")
        spec = ExperimentSpec(**fields)
    if growth and spec.p_rule != "c_over_threshold":
        raise UsageError("sweep-growth needs p_rule c_over_threshold")
    return spec


def _cmd_sweep(args, growth: bool) -> int:
    _check_caps(args)
    try:
        spec = _sweep_spec(args, growth)
    except (TypeError, KeyError) as exc:
        raise UsageError(f"bad sweep spec: {exc}") from exc
    run = run_growth_sweep if growth else run_threshold_sweep
    result = run(spec, workers=args.workers,
                 progress=lambda msg: print(msg, file=sys.stderr))
    _emit(result.to_csv(), args.output)
    return 0


def cmd_consensus(args) -> int:
    g = read_edge_list(args.graph)
    cfg = ConsensusConfig.load(args.scenario)
    trace = run_consensus(g, cfg)
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            write_trace_csv(trace, fh)
    summary = {
        "rounds": trace.rounds,
        "converged_round": trace.converged_round,
        "final_spread": trace.final_spread,
        "validity": trace.validity,
        "f_local": trace.f_local,
    }
    _emit(json.dumps(summary, indent=2, sort_keys=True) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--robust-cap", type=int, default=DEFAULT_NODE_CAP,
                   help="largest node count for exact robustness enumeration")
    p.add_argument("--iso-cap", type=int, default=DEFAULT_ISO_CAP,
                   help="largest node count for the exact isoperimetric constant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robustnet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a random interdependent network",
                       description="Sample k layers of n nodes with Bernoulli(p) inter-layer "
                                   "edges and the chosen intra-layer topology. --x sets p from "
                                   "the r-robustness threshold (ln n + (r-1) ln ln n + x)/((k-1) n).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--intra", default="empty",
                   help="empty | complete | ring | er:Q | file:PATH")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--layers", help="also write a node->layer file here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("fig1", help="write the four-block counterexample graph",
                       description="Four blocks of n/4 nodes: V1-V2 and V3-V4 complete "
                                   "bipartite, V2-V3 t-regular circulant. Minimum degree and "
                                   "connectivity are n/4, yet the graph is only t-robust.")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--layers")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("analyze", help="degree, connectivity, i(G), lambda2, robustness report",
                       description="Report the robustness hierarchy of one graph: minimum "
                                   "degree, vertex connectivity, isoperimetric constant (exact "
                                   "under the cap, spectral/degree bounds always), algebraic "
                                   "connectivity and the robustness parameter.")
    p.add_argument("graph")
    _add_caps(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("robustness", help="decide r-robustness of one graph",
                       description="Exact enumeration over disjoint set pairs, or certificates: "
                                   "lambda2/2 > r-1 or exact i(G) > r-1 proves r-robustness, "
                                   "d_min < r refutes it.")
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--method", choices=("exact", "certify"), default="exact")
    _add_caps(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_robustness)

    p = sub.add_parser("spectral", help="Laplacian spectrum and algebraic connectivity",
                       description="Eigenvalues of L = D - A; lambda2 is the algebraic "
                                   "connectivity.")
    p.add_argument("graph")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_spectral)

    for name, growth in (("sweep-threshold", False), ("sweep-growth", True)):
        desc = ("Monte Carlo sweep of p = c ln n/((k-1) n), c > 1: lambda2, i(G) lower bound "
                "and degrees relative to n p." if growth else
                "Monte Carlo sweep across the r-robustness / minimum-degree threshold "
                "p = (ln n + (r-1) ln ln n + x)/((k-1) n).")
        p = sub.add_parser(name, help=desc.split(":")[0], description=desc)
        p.add_argument("--spec", help="JSON file with ExperimentSpec fields")
        p.add_argument("--n-list")
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--r", type=int, default=1)
        if growth:
            p.add_argument("--c", default="2")
        else:
            p.add_argument("--x", default="-2,0,2")
        p.add_argument("--intra", default="empty")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--metrics")
        p.add_argument("--workers", type=int, default=None,
                       help="worker processes (default: all CPUs); output is independent of this")
        _add_caps(p)
        p.add_argument("-o", "--output")
        p.set_defaults(func=lambda a, g=growth: _cmd_sweep(a, g))

    p = sub.add_parser("consensus", help="simulate W-MSR resilient consensus",
                       description="Each normal node drops up to F neighbor values above and "
                                   "below its own and averages the rest; consensus is "
                                   "guaranteed on (2F+1)-robust graphs with F-local adversaries.")
    p.add_argument("graph")
    p.add_argument("--scenario", required=True, help="JSON ConsensusConfig")
    p.add_argument("--trace", help="write the per-round trace CSV here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_consensus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, TooLargeError, FileNotFoundError) as exc:
        print(f"robustnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"robustnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpectrumError, IndeterminateError, ArithmeticError) as exc:
        print(f"robustnet: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
