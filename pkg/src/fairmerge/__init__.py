"""Closest fair clustering and fair consensus clustering of red/blue point sets."""

from .balance_fractional import CaseTag, balance_pq, detect_case
from .balance_integral import balance_p, cut_merge_costs, subset_cost
from .distance import ConsensusObjective, dist, dist_fast, lmean
from .errors import FairmergeError
from .exact import MonoCluster, find_closest_fair_11, greedy_merge, make_it_fair
from .fairify import make_clusters_fair
from .generators import ReductionInstance, SplitMix64, gen_3partition_reduction, gen_random
from .model import (
    Clustering,
    ClusterStats,
    Color,
    ColoredInstance,
    all_stats,
    cluster_stats,
    is_balanced,
    is_fair,
    normalize,
    validate_feasible,
)
from .oracle import (
    BELL_NUMBERS,
    OracleResult,
    enum_partitions,
    oracle_closest_balanced,
    oracle_closest_fair,
    oracle_consensus,
)
from .pipeline import ConsensusResult, GuaranteeReport, closest_fair, fair_consensus
from .transcript import ClusterState, Move, Transcript

__version__ = "0.1.0"

__all__ = [
    "BELL_NUMBERS",
    "CaseTag",
    "ClusterState",
    "ClusterStats",
    "Clustering",
    "Color",
    "ColoredInstance",
    "ConsensusObjective",
    "ConsensusResult",
    "FairmergeError",
    "GuaranteeReport",
    "MonoCluster",
    "Move",
    "OracleResult",
    "ReductionInstance",
    "SplitMix64",
    "Transcript",
    "all_stats",
    "balance_p",
    "balance_pq",
    "closest_fair",
    "cluster_stats",
    "cut_merge_costs",
    "detect_case",
    "dist",
    "dist_fast",
    "enum_partitions",
    "fair_consensus",
    "find_closest_fair_11",
    "gen_3partition_reduction",
    "gen_random",
    "greedy_merge",
    "is_balanced",
    "is_fair",
    "lmean",
    "make_clusters_fair",
    "make_it_fair",
    "normalize",
    "oracle_closest_balanced",
    "oracle_closest_fair",
    "oracle_consensus",
    "subset_cost",
    "validate_feasible",
]
