//! Exact DP-coloring (correspondence coloring) search and discharging
//! verification for plane graphs.

pub mod cycles;
pub mod discharging;
pub mod dp;
pub mod embedding;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod reducibility;
pub mod solver;
pub mod verify;

pub use cycles::{cycle_spectrum, forbidden_variant, CycleSpectrum, ForbiddenVariant};
pub use discharging::{apply_rules, audit, initial_charges, Charge, ChargeState, DischargeError, RuleVariant};
pub use dp::{
    build_cover, find_coloring, from_list_assignment, gauge_normalize, is_valid_coloring, Color, CoverGraph,
    DpColoring, DpError, ListAssignment, Matching, MatchingAssignment,
};
pub use embedding::{brute_force_embed, trace_faces, EmbeddingError, Face, PlaneEmbedding, Richness, RotationSystem};
pub use graph::{Graph, GraphError, Vertex};
pub use graph6::{encode_graph6, parse_graph6};
pub use reducibility::{
    certify_reducible, check_lemma2_structural, extend_coloring, find_pattern, min_degree_extend, residual_lists,
    ConfigPattern, ReduceError,
};
pub use solver::{
    chi, chi_dp, chi_list, is_dp_k_colorable, is_k_choosable, AdversaryCertificate, SearchOptions, SolverError,
    Verdict,
};
pub use verify::{verify_stream, VerifyOptions, VerifySummary};
