"""Robustness, expansion and algebraic connectivity of random interdependent networks."""

__version__ = "0.1.0"

from .graph_core import (Graph, LayeredGraph, degree, edge_boundary_size, induced_subgraph,
                         min_max_degree, read_edge_list, write_edge_list)
from .generators import GenSeed, IntraLayerSpec, gen_fig1, gen_interdependent, gen_k_partite
from .robustness import (IndeterminateError, RobustnessVerdict, certify_r_robust,
                         is_r_reachable, is_r_robust_exact, reach, robustness_parameter_exact,
                         robustness_with_witness)
from .structural import isoperimetric_bounds, isoperimetric_exact, vertex_connectivity
from .spectral import algebraic_connectivity, laplacian, laplacian_spectrum
from .consensus import AdversaryScript, ConsensusConfig, run_consensus, split_scenario, wmsr_step
from .experiments import (ExperimentSpec, run_boundary_concentration, run_growth_sweep,
                          run_sweep, run_threshold_sweep, threshold_p)

__all__ = [
    "Graph", "LayeredGraph", "degree", "edge_boundary_size", "induced_subgraph",
    "min_max_degree", "read_edge_list", "write_edge_list",
    "GenSeed", "IntraLayerSpec", "gen_fig1", "gen_interdependent", "gen_k_partite",
    "IndeterminateError", "RobustnessVerdict", "certify_r_robust", "is_r_reachable",
    "is_r_robust_exact", "reach", "robustness_parameter_exact", "robustness_with_witness",
    "isoperimetric_bounds", "isoperimetric_exact", "vertex_connectivity",
    "algebraic_connectivity", "laplacian", "laplacian_spectrum",
    "AdversaryScript", "ConsensusConfig", "run_consensus", "split_scenario", "wmsr_step",
    "ExperimentSpec", "run_boundary_concentration", "run_growth_sweep", "run_sweep",
    "run_threshold_sweep", "threshold_p",
]
