"""Learning sparse binary pairwise Markov (Ising) models.

Node-wise l1-penalized logistic regression with min/max symmetrization,
a global stacked logistic estimator with one shared parameter per edge,
exact and Gibbs samplers, performance metrics, and an experiment harness.
"""

from isinglearn.errors import CapacityError, ConfigError
from isinglearn.model import (
    Dataset,
    EdgeVector,
    IsingModel,
    StateDistribution,
    canonical_pairs,
    conditional_prob_plus,
    enumerate_distribution,
    joint_log_prob,
    model_from_json,
    model_to_json,
    pack_edges,
    unpack_edges,
)
from isinglearn.samplers import GibbsConfig, sample_exact, sample_gibbs
from isinglearn.solver import (
    FitResult,
    LogisticProblem,
    kkt_residual,
    loss_and_gradient,
    soft_threshold,
    solve,
)
from isinglearn.estimators import (
    GlobalFit,
    NodewiseRaw,
    build_global_design,
    default_global_lambda,
    default_nodewise_lambda,
    fit_global,
    fit_nodewise,
    symmetrize_max,
    symmetrize_min,
)
from isinglearn.metrics import (
    ConditionReport,
    ConfusionCounts,
    accuracy,
    err,
    fisher_blocks,
    support_threshold,
)
from isinglearn.harness import (
    ExperimentConfig,
    ExperimentRecord,
    child_seed,
    generate_mixed_coupling,
    records_to_csv,
    run_experiment,
    summarize,
)

__all__ = [
    "CapacityError",
    "ConfigError",
    "ConditionReport",
    "ConfusionCounts",
    "Dataset",
    "EdgeVector",
    "ExperimentConfig",
    "ExperimentRecord",
    "FitResult",
    "GibbsConfig",
    "GlobalFit",
    "IsingModel",
    "LogisticProblem",
    "NodewiseRaw",
    "StateDistribution",
    "accuracy",
    "build_global_design",
    "canonical_pairs",
    "child_seed",
    "conditional_prob_plus",
    "default_global_lambda",
    "default_nodewise_lambda",
    "enumerate_distribution",
    "err",
    "fisher_blocks",
    "fit_global",
    "fit_nodewise",
    "generate_mixed_coupling",
    "joint_log_prob",
    "kkt_residual",
    "loss_and_gradient",
    "model_from_json",
    "model_to_json",
    "pack_edges",
    "records_to_csv",
    "run_experiment",
    "sample_exact",
    "sample_gibbs",
    "soft_threshold",
    "solve",
    "summarize",
    "support_threshold",
    "symmetrize_max",
    "symmetrize_min",
    "unpack_edges",
]
