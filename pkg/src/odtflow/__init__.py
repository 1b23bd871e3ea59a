"""odtflow: multi-granularity origin-destination-time flow pattern mining.

Mines generalized (origin set, destination set, slot range) patterns from
aggregated trip records over a region neighborhood graph: an exact
level-wise enumerator with switchable pruning optimizations, size-bounded
and domain-constrained variants, per-level top-k mining, and two
randomized approximate miners, all checked against a brute-force
reference on small instances.
"""

from .approx import (
    ApproxResult,
    CandidatePools,
    NodeWeights,
    WeightedResult,
    build_pools,
    mine_approx,
    mine_weighted,
    random_bfs_candidate,
)
from .exact import (
    LevelCache,
    MiningResult,
    MiningStats,
    OptimizationFlags,
    cost_breakdown,
    count_exact,
    mine_all,
)
from .ingest import (
    AggregatedTriple,
    AtomicPatternSet,
    TripsTable,
    extract_atomic_patterns,
    load_graph,
    load_trips,
)
from .model import (
    GenerationLimits,
    MiningParams,
    ODTPattern,
    ODTTriple,
    RegionGraph,
    RegionId,
    TimeDomain,
    card,
    difference,
    minimal_generalizations,
)
from .oracle import OracleConfig, enumerate_all_connected_subsets, oracle_patterns
from .psindex import PrefixSumIndex
from .synth import SynthSpec, generate, write_instance
from .variants import (
    RankedFrontier,
    RankResult,
    lemma1_max_gain,
    lemma2_prunable,
    mine_bounded,
    mine_constrained,
    mine_ranked,
)

__version__ = "0.1.0"

__all__ = [
    "AggregatedTriple",
    "ApproxResult",
    "AtomicPatternSet",
    "CandidatePools",
    "GenerationLimits",
    "LevelCache",
    "MiningParams",
    "MiningResult",
    "MiningStats",
    "NodeWeights",
    "ODTPattern",
    "ODTTriple",
    "OptimizationFlags",
    "OracleConfig",
    "PrefixSumIndex",
    "RankResult",
    "RankedFrontier",
    "RegionGraph",
    "RegionId",
    "SynthSpec",
    "TimeDomain",
    "TripsTable",
    "WeightedResult",
    "build_pools",
    "card",
    "cost_breakdown",
    "count_exact",
    "difference",
    "enumerate_all_connected_subsets",
    "extract_atomic_patterns",
    "generate",
    "lemma1_max_gain",
    "lemma2_prunable",
    "load_graph",
    "load_trips",
    "mine_all",
    "mine_approx",
    "mine_bounded",
    "mine_constrained",
    "mine_ranked",
    "mine_weighted",
    "minimal_generalizations",
    "oracle_patterns",
    "random_bfs_candidate",
    "write_instance",
]
