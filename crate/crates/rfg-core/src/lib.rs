//! Certified residual finiteness growth computations.
//!
//! The crate builds separating finite covers of Salvetti complexes for
//! right-angled Artin groups — index at most n+1 for an element of word
//! length n — and validates them against exhaustive brute-force oracles, plus
//! both halves of the polynomial divisibility bounds for SL_k(Z) at desk
//! scale. Everything is deterministic and exact; certificates serialize to
//! JSON and re-verify from file contents alone.

pub mod cover;
pub mod graph;
pub mod oracle;
pub mod slk;
pub mod witness;
pub mod word;

// `IntMatrix` entries and table values are BigInt; callers need the type.
pub use num_bigint;

pub use cover::{
    canonical_complete, check_local_isometry, random_square_closed, CornerViolation, CoverError,
    CoverSpec, LocalIsometryReport, PartialCover, PartialCoverSpec, PermutationCover, SplitMix64,
};
pub use graph::{GenId, GraphError, GraphSpec, SimplicialGraph};
pub use oracle::{
    enumerate_covers, exact_divisibility, growth_table, subgroup_inequality_check,
    DivisibilityResult, GrowthRow, GrowthTable, OmegaMode, OracleError, DEFAULT_NORMAL_BUDGET,
};
pub use slk::{
    congruence_witness, elementary, fit_exponent, g_n, h3_divisibility_by_enumeration,
    heisenberg_divisibility, lcm_1_to, size_proxy, slk_bounds_table, CongruenceWitness,
    CongruenceWitnessSpec, HeisenbergBasis, IntMatrix, SlkError, SlkRow, SlkTable,
    CONGRUENCE_KIND,
};
pub use witness::{
    build_partial_cover, divisibility_upper, frame_chain, separating_cover,
    verify_certificate_json, verify_certificate_spec, CertificateError, CertificateSpec,
    FrameBlock, FrameChain, SeparationCertificate, WitnessError, CERTIFICATE_KIND,
};
pub use word::{
    ball, geodesic_length, is_identity, normal_form, GeodesicForm, Letter, Sign, Word, WordError,
};
