"""Country league tables built from university rankings."""

from importlib import resources

from .compare import (
    EditionDiff,
    SimilarityResult,
    edition_diff,
    extreme_movers,
    kendall_tau_b,
    select_top_countries,
    similarity,
    spearman_rho,
)
from .errors import (
    EmptyInput,
    EmptySnapshot,
    InsufficientOverlap,
    InvalidName,
    InvariantError,
    LeagueLedgerError,
    MethodMismatch,
    SchemaError,
    SnapshotReadError,
    StoreError,
    UndefinedScore,
)
from .ingest import (
    AliasTable,
    IngestReport,
    SnapshotSchema,
    SnapshotStore,
    Unmapped,
    load_store,
    normalize_country,
    parse_snapshot,
)
from .model import (
    Basis,
    CountryCode,
    CountryRanking,
    CountryScore,
    Method,
    RankDiff,
    RankedRow,
    RankingSnapshot,
    UniversityEntry,
    normalize_edition,
)
from .scoring import (
    average_rank,
    max_weight,
    rank_countries,
    rank_snapshot,
    score_all,
    top_n_filter,
    weight,
)

__version__ = "0.1.0"

#: Bundled snapshot store reconstructed from the published country tables.
FIXTURE_STORE = str(resources.files(__name__) / "data" / "store")
