"""Axial symmetry testing for multivariate samples.

Candidate symmetry axes come from covariance eigenvectors; each is
scored by a split-sample projected Kolmogorov-Smirnov statistic and
calibrated with a symmetrized kernel-smoothed bootstrap; the global
decision takes the maximum p-value over candidates.
"""

from .bootstrap import (
    KernelSpec,
    SymmetrizedSample,
    bootstrap_pvalue,
    bootstrap_replicate,
    default_bandwidth,
    draw_smoothed,
    symmetrize,
)
from .datagen import GeneratorSpec, gen
from .empirical import SplitIndices, candidate_statistic, g_hat, ks_sup, split_three
from .geometry import UnitDirection, project, reflect, reflect_affine, sample_unit_direction
from .rng import derive_rng, derive_seed
from .simharness import StudyResult, StudySpec, run_study, wilson_interval
from .spectral import (
    SpectralDecomposition,
    check_simple_spectrum,
    eigendecompose,
    mean_and_covariance,
)
from .testkit import (
    CandidateResult,
    TestConfig,
    TestReport,
    global_pvalue,
    run_axial_symmetry_test,
)

__version__ = "0.1.0"

__all__ = [
    "UnitDirection",
    "reflect",
    "reflect_affine",
    "sample_unit_direction",
    "project",
    "SpectralDecomposition",
    "mean_and_covariance",
    "eigendecompose",
    "check_simple_spectrum",
    "SplitIndices",
    "split_three",
    "ks_sup",
    "g_hat",
    "candidate_statistic",
    "SymmetrizedSample",
    "KernelSpec",
    "symmetrize",
    "default_bandwidth",
    "draw_smoothed",
    "bootstrap_replicate",
    "bootstrap_pvalue",
    "TestConfig",
    "CandidateResult",
    "TestReport",
    "run_axial_symmetry_test",
    "global_pvalue",
    "GeneratorSpec",
    "gen",
    "StudySpec",
    "StudyResult",
    "run_study",
    "wilson_interval",
    "derive_rng",
    "derive_seed",
    "__version__",
]
