"""Kernel-based distances between structural causal models.

Estimates SCMD (and its prediction-oriented and expectation variants)
between two environments from observational samples and known causal DAGs,
alongside the MMD and SID baselines and closed-form Gaussian references.
"""

from ._version import __version__
from .cache import GramCache
from .dataset import Dataset
from .distance import (
    DEFAULT_ESCMD_LEVELS,
    DistanceReport,
    InterventionSpec,
    PairwiseMatrix,
    e_scmd,
    mimd,
    mmd_vstat,
    p_scmd,
    pairwise_matrix,
    scmd,
)
from .embedding import (
    EstimatorConfig,
    WeightVector,
    conditional_weights,
    interventional_weights,
    marginal_weights,
    omega,
)
from .errors import NumericalError, ScmdistError, ValidationError
from .graph import Dag, d_separated, parents, reachable, sid
from .io import (
    load_dataset,
    load_graph,
    sachs_expert_graph,
    save_dataset,
    save_graph,
    write_report,
)
from .kernel import KernelConfig, GramMatrix, gaussian_kernel, gram, hadamard_gram, median_heuristic
from .oracle import (
    Gaussian1D,
    embedding_distance_to_gaussian,
    gaussian_embedding_inner,
    mmd_gaussians,
    mmd_joint_bivariate,
    mmd_vstat_binned,
    plugin_scmd,
    scmd_case1,
    scmd_case2,
)
from .synth import LinearGaussianScm, sample_m1, sample_m2, sample_scm

__all__ = [
    "__version__",
    "Dag",
    "Dataset",
    "DistanceReport",
    "EstimatorConfig",
    "Gaussian1D",
    "GramCache",
    "GramMatrix",
    "InterventionSpec",
    "KernelConfig",
    "LinearGaussianScm",
    "NumericalError",
    "PairwiseMatrix",
    "ScmdistError",
    "ValidationError",
    "WeightVector",
    "DEFAULT_ESCMD_LEVELS",
    "conditional_weights",
    "d_separated",
    "e_scmd",
    "embedding_distance_to_gaussian",
    "gaussian_embedding_inner",
    "gaussian_kernel",
    "gram",
    "hadamard_gram",
    "interventional_weights",
    "load_dataset",
    "load_graph",
    "marginal_weights",
    "median_heuristic",
    "mimd",
    "mmd_gaussians",
    "mmd_joint_bivariate",
    "mmd_vstat",
    "mmd_vstat_binned",
    "omega",
    "p_scmd",
    "pairwise_matrix",
    "parents",
    "plugin_scmd",
    "reachable",
    "sachs_expert_graph",
    "sample_m1",
    "sample_m2",
    "sample_scm",
    "save_dataset",
    "save_graph",
    "scmd",
    "scmd_case1",
    "scmd_case2",
    "sid",
    "write_report",
]
