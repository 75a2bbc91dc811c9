"""Representative stratified random sampling for large tabular populations."""

from .composition import compose
from .dataset import (
    DEFAULT_MISSING_TOKENS,
    BoundVariable,
    Column,
    Dataset,
    VariableSpec,
    bind_variable,
    load_csv,
    write_csv,
)
from .engine import (
    IterationReport,
    MeanEstimate,
    SampleResult,
    draw_stratified,
    iterate_and_select,
    sample_categorical,
    score_result,
    select_best,
    total_variation,
)
from .exceptions import (
    ConfigError,
    DataFormatError,
    DegenerateInputError,
    DegenerateInputWarning,
    Error,
)
from .kmeans import KMeans1D, KMeansResult, kmeans_1d, select_num_clusters, wcss_curve
from .montecarlo import coverage_report, synthetic_skewed_population
from .sampler import RepresentativeSampler
from .sizing import (
    SamplingPlan,
    SizingParams,
    allocate_proportional,
    build_plan,
    required_n_categorical,
    required_n_numeric,
    z_quantile,
)
from .strata import Stratification, Stratum, stratify_categorical, stratify_numeric
from .variables import (
    MISSING_LABEL,
    CleanCategoricalVariable,
    CleanNumericVariable,
    DescriptiveStats,
    describe,
    preprocess_categorical,
    preprocess_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "BoundVariable",
    "CleanCategoricalVariable",
    "CleanNumericVariable",
    "Column",
    "ConfigError",
    "DEFAULT_MISSING_TOKENS",
    "DataFormatError",
    "Dataset",
    "DegenerateInputError",
    "DegenerateInputWarning",
    "DescriptiveStats",
    "Error",
    "IterationReport",
    "KMeans1D",
    "KMeansResult",
    "MISSING_LABEL",
    "MeanEstimate",
    "RepresentativeSampler",
    "SampleResult",
    "SamplingPlan",
    "SizingParams",
    "Stratification",
    "Stratum",
    "VariableSpec",
    "allocate_proportional",
    "bind_variable",
    "build_plan",
    "compose",
    "coverage_report",
    "describe",
    "draw_stratified",
    "iterate_and_select",
    "kmeans_1d",
    "load_csv",
    "preprocess_categorical",
    "preprocess_numeric",
    "required_n_categorical",
    "required_n_numeric",
    "sample_categorical",
    "score_result",
    "select_best",
    "select_num_clusters",
    "stratify_categorical",
    "stratify_numeric",
    "synthetic_skewed_population",
    "total_variation",
    "wcss_curve",
    "write_csv",
    "z_quantile",
]
