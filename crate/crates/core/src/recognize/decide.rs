//! Closure membership, separation and pointlike subsets.
//!
//! A term `t` lies in the closure of the language of an automaton exactly
//! when `ξ(ν_[ω](t))` meets `I×T`. Closures of several languages meet iff
//! some generated element of the ω-semigroup of their disjoint union lies
//! in every such set; its witness term is then a common point.

use crate::automaton::{disjoint_union, Automaton, Digraph};
use crate::error::{Error, Result};
use crate::romega::RTriple;
use crate::term::{eval_nu_bracket, OmegaTerm};

use super::generate::{generate_until, GenElement, GenOptions};
use super::semigroup::{cayley_digraph, cayley_unit, FiniteSemigroup};

/// Whether `ξ(x)` meets `I×T`.
pub fn p_contains(x: &RTriple, initial: u64, terminal: u64) -> bool {
    x.xi().meets(initial, terminal)
}

/// Whether `t` belongs to the closure of the language of `aut`.
pub fn member(t: &OmegaTerm, aut: &Automaton) -> Result<bool> {
    let x = eval_nu_bracket(t, &aut.graph)?;
    Ok(p_contains(&x, aut.initial, aut.terminal))
}

/// Outcome of a search for a common point of several closures.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// First element in canonical order lying in every closure.
    pub common: Option<GenElement>,
    /// Number of elements generated before stopping.
    pub generated: usize,
    /// States and letters of the digraph that was explored.
    pub states: usize,
    pub letters: usize,
}

impl Outcome {
    pub fn witness(&self) -> Option<&OmegaTerm> {
        self.common.as_ref().map(|e| &e.witness)
    }
}

fn search(
    graph: &Digraph,
    targets: &[(u64, u64)],
    idempotent: bool,
    opts: GenOptions,
) -> Result<Outcome> {
    let s = generate_until(graph, opts, |x| {
        (!idempotent || x.cumulative() == x.content())
            && targets.iter().all(|&(i, t)| p_contains(x, i, t))
    })?;
    Ok(Outcome {
        common: s.hit_element().cloned(),
        generated: s.semigroup.len(),
        states: graph.states(),
        letters: graph.alphabet().len(),
    })
}

fn union_search(auts: &[Automaton], idempotent: bool, opts: GenOptions) -> Result<Outcome> {
    if auts.is_empty() {
        return Err(Error::Invalid("at least one automaton is required".into()));
    }
    let (graph, targets) = disjoint_union(auts)?;
    search(&graph, &targets, idempotent, opts)
}

/// Searches for a common point of the closures; the languages are
/// separable by an R-recognizable language iff none exists.
pub fn separate(auts: &[Automaton], opts: GenOptions) -> Result<Outcome> {
    union_search(auts, false, opts)
}

/// A common point of the closures that is idempotent over `R`.
pub fn find_idempotent_common(auts: &[Automaton], opts: GenOptions) -> Result<Outcome> {
    union_search(auts, true, opts)
}

fn subset_targets(s: &FiniteSemigroup, subset: &[usize]) -> Result<Vec<(u64, u64)>> {
    if subset.is_empty() {
        return Err(Error::Invalid("the subset must be nonempty".into()));
    }
    let unit = 1u64 << cayley_unit(s);
    subset
        .iter()
        .map(|&e| {
            if e >= s.size() {
                Err(Error::ElementOutOfRange(e))
            } else {
                Ok((unit, 1u64 << e))
            }
        })
        .collect()
}

/// Whether `subset` is R-pointlike. The preimage automata of the elements
/// share the Cayley digraph of `S¹`, so a single generation serves them all.
pub fn pointlike(s: &FiniteSemigroup, subset: &[usize], opts: GenOptions) -> Result<Outcome> {
    let targets = subset_targets(s, subset)?;
    search(&cayley_digraph(s)?, &targets, false, opts)
}

/// Whether `subset` is R-idempotent pointlike.
pub fn idempotent_pointlike(
    s: &FiniteSemigroup,
    subset: &[usize],
    opts: GenOptions,
) -> Result<Outcome> {
    let targets = subset_targets(s, subset)?;
    search(&cayley_digraph(s)?, &targets, true, opts)
}
