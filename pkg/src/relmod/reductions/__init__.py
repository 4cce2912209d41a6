from .gadgets import (
    FLAGGED_MAJORITY_VARIANTS,
    MAJORITY_VARIANTS,
    ReductionOutput,
    build,
    canonical_name,
    reduce_majority,
    reduce_setcover_aae_basic,
    reduce_setcover_ae_undir,
    reduce_setcover_aea_basic,
    reduce_setcover_aee_basic,
    reduce_setcover_eae_basic,
    reduce_vertexcover_aa_undir,
    reduce_vertexcover_eaa_basic,
    reduction_names,
    source_kind,
)
from .sources import (
    MajorityInstance,
    SetCoverInstance,
    SourceError,
    SourceInstance,
    VertexCoverInstance,
    load_source,
    solve_source,
)
from .verify import KindCheck, VerificationReport, summarize, verify_exhaustive, verify_output, verify_reduction

__all__ = [
    "FLAGGED_MAJORITY_VARIANTS", "MAJORITY_VARIANTS", "ReductionOutput", "build", "canonical_name",
    "reduce_majority", "reduce_setcover_aae_basic", "reduce_setcover_ae_undir", "reduce_setcover_aea_basic",
    "reduce_setcover_aee_basic", "reduce_setcover_eae_basic", "reduce_vertexcover_aa_undir",
    "reduce_vertexcover_eaa_basic", "reduction_names", "source_kind", "MajorityInstance", "SetCoverInstance",
    "SourceError", "SourceInstance", "VertexCoverInstance", "load_source", "solve_source", "KindCheck",
    "VerificationReport", "summarize", "verify_exhaustive", "verify_output", "verify_reduction",
]
