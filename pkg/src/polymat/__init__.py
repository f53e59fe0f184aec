"""Exact computation kernel for integer 2-polymatroids.

Dense rank-table representation, the full set of structural operations
(minors, compactification, duality, compression, sums), connectivity
analysis, minor search with replayable witnesses, and certificate-producing
verifiers for the splitter statements.
"""

from .conn import (
    FanRecord,
    PricklyCertificate,
    Separation,
    ThreeElementClass,
    classify_three_element,
    fans,
    is_2_connected,
    is_3_connected,
    is_k_separating,
    is_prickly,
    is_three_separation,
    lam,
    local_conn,
    local_conn_dual,
    mu,
    prickly_pairs,
    prickly_separators,
    separations,
    triads,
    triangles,
)
from .construct import (
    FlatAssignment,
    Multigraph,
    boolean_from_graph,
    cycle_matroid,
    enumerate_small,
    from_flats,
    mgraph,
    uniform,
    wheel,
    wheel_graph,
    whirl,
)
from .core import (
    ElementKind,
    IsoWitness,
    Polymatroid,
    closure,
    compactness_report,
    element_kind,
    is_compact,
    is_isomorphic,
    norm,
    rank,
    validate,
)
from .errors import (
    AxiomViolation,
    BasepointRankMismatch,
    DegenerateBasepoint,
    DuplicateLabel,
    HypothesisViolated,
    NoTwoSeparation,
    NotAFlat,
    NotAnExact2Separation,
    NotCompact,
    ParseError,
    PolymatroidError,
    PreconditionViolated,
    SizeOutOfRange,
    TooSmall,
    Undefined,
    UnknownElement,
)
from .minors import (
    MinorWitness,
    doubly_labelled,
    is_c_minor,
    is_s_minor,
    replay_witness,
    special_n_minor,
)
from .ops import (
    compactified_delete,
    compactify,
    compactify_element,
    compress,
    compress_by_recipe,
    contract,
    delete,
    direct_sum,
    dual,
    free_add_point,
    natural_matroid,
    parallel_connection,
    relabel,
    two_sum,
    two_sum_decompose,
)
from .splitter import (
    CounterexampleReport,
    IdentityReport,
    OutcomeCompactifiedDelete,
    OutcomeContract,
    OutcomeSeriesCompress,
    OutcomeWheelOrWhirl,
    SplitterCertificate,
    TwoMoveExhibit,
    WwtCertificate,
    identity_suite,
    replay_certificate,
    verify_splitter_c,
    verify_splitter_s,
    verify_wwt,
    wheel_or_whirl_kind,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
