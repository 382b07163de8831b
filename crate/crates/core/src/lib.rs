//! Finite ω-semigroups recognizing the closures of regular languages in the
//! free pro-R semigroup, where R is the pseudovariety of finite R-trivial
//! semigroups.
//!
//! Given a labeled digraph, [`recognize::generate`] builds the ω-semigroup
//! generated by the triples `ν(a)` inside `R^ω(Q, A)`. Closure membership of
//! ω-terms, R-separability of regular languages and R-(idempotent-)pointlike
//! subsets of finite semigroups are decided on top of it, with witness
//! terms and certificates that can be checked against the automata.

pub mod automaton;
pub mod error;
pub mod letters;
pub mod lrb;
mod par;
pub mod recognize;
pub mod relation;
pub mod romega;
pub mod term;

pub use automaton::{disjoint_union, parse_automaton, regex_to_automaton, Automaton, Digraph};
pub use error::{Error, Result};
pub use letters::{Alphabet, Letter, LetterSet};
pub use lrb::{LaPair, LrbWord};
pub use par::PARALLEL_AVAILABLE;
pub use relation::{BinRel, StateId};
pub use romega::RTriple;
pub use term::{parse_term, OmegaTerm};
