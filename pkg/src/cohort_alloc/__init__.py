"""Team formation from classroom friendship and preference networks."""

from .allocation import (
    Algorithm,
    ComparisonResult,
    IterationResult,
    SweepResult,
    best_by_similarity,
    pfcfs_allocate,
    pffn_allocate,
    retained_edges,
    rotation_order,
    satisfaction_index,
    seed_nodes,
    sweep,
)
from .dataset_io import (
    ValidationWarning,
    load_dataset,
    load_network,
    load_roster,
    load_teams,
    validate,
    write_dataset,
    write_network,
    write_roster,
    write_teams,
)
from .errors import (
    CohortError,
    DatasetError,
    DegreeBoundExceeded,
    DomainError,
    DuplicateEdge,
    IdOutOfRange,
    InconsistentNodeCount,
    InvalidCapacity,
    InvalidDamping,
    MalformedRow,
    NodeRangeMismatch,
    SelfLoop,
    SemesterOutOfRange,
    StartOutOfRange,
)
from .metrics import (
    Flag,
    FlagTally,
    NetworkStats,
    PageRankResult,
    TopperPreferenceReport,
    flag_tally,
    network_stats,
    pagerank,
    top_indegree,
    topper_preference_report,
)
from .model import (
    Category,
    CohortDataset,
    DEFAULT_CAPACITY,
    DirectedNetwork,
    FRIEND_LIMIT,
    PREF_LIMIT,
    Student,
    TeamAssignment,
    ensure_partition,
)

__version__ = "0.1.0"
