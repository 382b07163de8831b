//! Generation of the recognizing ω-semigroup and the decision procedures
//! built on it.

pub mod certificate;
pub mod decide;
pub mod generate;
pub mod oracle;
pub mod semigroup;

pub use certificate::{
    certify, extract_certificate, verify_certificate, Certificate, Extractor, DEFAULT_SAMPLES,
};
pub use decide::{
    find_idempotent_common, idempotent_pointlike, member, p_contains, pointlike, separate, Outcome,
};
pub use generate::{
    generate, generate_until, size_bound, GenElement, GenOptions, GenSemigroup, Search, DEFAULT_CAP,
};
pub use oracle::{brute_force_separator, Separator};
pub use semigroup::{cayley_digraph, parse_sgp, preimage_automaton, FiniteSemigroup};
