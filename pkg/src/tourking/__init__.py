"""Kings of two-round communication over adversarially chosen tournaments."""

from .algorithms import (
    ProofTrace,
    TraceStep,
    dual_transform,
    find_co_king,
    find_king_inductive,
    find_rainbow_king,
    rainbow_pivots,
)
from .bits import VertexSet
from .reach import (
    KingCertificate,
    NoKingError,
    RainbowKind,
    RainbowWitness,
    ReachWitness,
    WitnessKind,
    blocked,
    co_kings,
    find_king_brute,
    forward_kings,
    rainbow_kings,
    rainbow_reaches,
    reaches,
    validate_certificate,
)
from .sim import KnowledgeState, RoundSchedule, initial_state, kings_after, run, step
from .tournament import (
    InstanceIndex,
    Tournament,
    TournamentError,
    build,
    from_index,
    generate,
    out_neighbors,
    parse,
    restrict,
    reverse,
    serialize,
    to_index,
)
from .verify import (
    ClaimKind,
    VerificationReport,
    check_landau,
    exhaustive_verify,
    random_verify,
    search_order_sensitivity,
)
