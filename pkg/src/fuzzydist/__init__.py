"""Descriptive-complexity (binary entropy) distance for fuzzy sets, classical
baseline distances, and distance-matrix k-means clustering."""

__version__ = "0.1.0"

from .fuzzy import (  # noqa: E402
    Domain,
    DomainMismatchError,
    FuzzyError,
    FuzzySet,
    MembershipError,
    alpha_cut,
    binary_entropy,
    complement,
    fuzzy_set,
    intersection,
    is_crisp,
    sym_diff_membership,
    union,
)
from .metrics import (  # noqa: E402
    BonissoneFeatures,
    WeightVector,
    bonissone_distance,
    bonissone_features,
    cardinality,
    entropy_distance,
    get_metric,
    hausdorff_crisp,
    hausdorff_fuzzy,
    minkowski_distance,
    s1_distance,
    weighted_entropy_distance,
)
from .cluster import ClusterModel, DistanceMatrix, build_distance_matrix, cluster_report, kmeans  # noqa: E402
from .dataset import Dataset, load_csv, load_table1, normalize_minmax, to_fuzzy_sets, write_csv  # noqa: E402
