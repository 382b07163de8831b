//! Certificates of closure membership.
//!
//! For a term `α` and a pair `(p, q) ∈ ξ(ν_[ω](α))`, [`extract_certificate`]
//! builds a term `β`, equal to `α` over `R`, such that `(p, q)` lies in
//! `ξ(ν_ω(β))`. Under the natural ω-power every cumulative content is empty,
//! so `ξ ∘ ν_ω` is the plain relational evaluation with `ω` read as the
//! idempotent power; hence the instantiations of `β` at multiples of the
//! global exponent all label paths from `p` to `q`.
//!
//! `ξ ∘ ν_[ω]` is only multiplicative on the left factors whose cumulative
//! content is empty. The extraction therefore rewrites products and powers
//! with identities valid in `R` until the left factor of every split has
//! that property:
//!
//! * `αβ = α` when `c(β) ⊆ v⃗c(α)`;
//! * `(xy)^ω = x(yx)^ω`;
//! * `x^n (x^n)^ω x^n = x^ω` and `x^ω w = x^ω` when `c(w) ⊆ c(x)`.

use std::collections::HashMap;

use crate::automaton::{Automaton, Digraph};
use crate::error::{Error, Result};
use crate::letters::LetterSet;
use crate::relation::StateId;
use crate::romega::RTriple;
use crate::term::{
    eval_nu_bracket, eval_nu_natural, instantiate, instantiate_relation, instantiated_len,
    term_content, OmegaTerm,
};

/// Default number of instantiations checked by [`verify_certificate`].
pub const DEFAULT_SAMPLES: u64 = 3;

/// Words longer than this are checked through relations instead.
const MAX_MATERIALIZED: u64 = 1 << 20;

const MAX_DEPTH: usize = 4096;

/// Certificate extraction over one digraph, caching `ν_[ω]` of subterms.
pub struct Extractor<'g> {
    graph: &'g Digraph,
    memo: HashMap<OmegaTerm, RTriple>,
}

impl<'g> Extractor<'g> {
    pub fn new(graph: &'g Digraph) -> Self {
        Extractor {
            graph,
            memo: HashMap::new(),
        }
    }

    /// `ν_[ω](t)`, memoized.
    pub fn nu(&mut self, t: &OmegaTerm) -> Result<RTriple> {
        if let Some(x) = self.memo.get(t) {
            return Ok(x.clone());
        }
        let x = match t {
            OmegaTerm::Letter(_) => eval_nu_bracket(t, self.graph)?,
            OmegaTerm::Concat(s, r) => self.nu(s)?.mul(&self.nu(r)?),
            OmegaTerm::Omega(s) => self.nu(s)?.bracket_omega(self.graph),
        };
        self.memo.insert(t.clone(), x.clone());
        Ok(x)
    }

    /// Builds `β` with `(p, q) ∈ ξ(ν_ω(β))`; requires `(p, q) ∈ ξ(ν_[ω](t))`.
    pub fn extract(&mut self, t: &OmegaTerm, p: StateId, q: StateId) -> Result<OmegaTerm> {
        if !self.nu(t)?.xi().contains(p, q) {
            return Err(Error::PairNotPresent(p, q));
        }
        self.go(t, p, q, 0)
    }

    fn go(&mut self, t: &OmegaTerm, p: StateId, q: StateId, depth: usize) -> Result<OmegaTerm> {
        if depth > MAX_DEPTH {
            return Err(Error::DecompositionFailed("recursion limit reached".into()));
        }
        match t {
            OmegaTerm::Letter(_) => Ok(t.clone()),
            OmegaTerm::Concat(s, r) => self.go_concat(s, r, p, q, depth),
            OmegaTerm::Omega(s) => self.go_omega(s, p, q, depth),
        }
    }

    fn go_concat(
        &mut self,
        left: &OmegaTerm,
        right: &OmegaTerm,
        p: StateId,
        q: StateId,
        depth: usize,
    ) -> Result<OmegaTerm> {
        let x = self.nu(left)?;
        let y = self.nu(right)?;
        let Some(b) = y.word().first_outside(x.cumulative()) else {
            // the right factor is absorbed
            return self.go(left, p, q, depth + 1);
        };
        // letters of `right` before its first b lie in the cumulative content
        // of `left` and are absorbed as well
        let b = self.graph.alphabet().symbol(b);
        let suffix = split(right, b).1;
        let s = self.nu(&suffix)?;
        let r = intermediate(x.xi().rows(), s.xi().rows(), p, q).ok_or_else(|| {
            Error::DecompositionFailed(format!("no intermediate state for ({p}, {q})"))
        })?;
        let l = self.go(left, p, r, depth + 1)?;
        let rr = self.go(&suffix, r, q, depth + 1)?;
        Ok(l.concat(rr))
    }

    fn go_omega(
        &mut self,
        base: &OmegaTerm,
        p: StateId,
        q: StateId,
        depth: usize,
    ) -> Result<OmegaTerm> {
        let x = self.nu(base)?;
        let content = x.content();
        if content.is_subset(x.cumulative()) {
            // `base` is already idempotent over R
            return self.go(base, p, q, depth + 1);
        }
        let first = x.word().first().expect("nonempty word");
        if x.cumulative().contains(first) {
            let b = x
                .word()
                .first_outside(x.cumulative())
                .expect("content exceeds cumulative content");
            let (prefix, suffix) = split(base, self.graph.alphabet().symbol(b));
            let prefix =
                prefix.ok_or_else(|| Error::DecompositionFailed("empty rotation prefix".into()))?;
            let rotated = suffix.concat(prefix.clone()).omega();
            return self.go_concat(&prefix, &rotated, p, q, depth + 1);
        }
        self.go_power(base, &x, content, p, q, depth)
    }

    /// The power case when the first letter of `base` is outside its
    /// cumulative content, so that `ξ(ν(base)^n) = ξ(ν(base))^n`.
    fn go_power(
        &mut self,
        base: &OmegaTerm,
        x: &RTriple,
        content: LetterSet,
        p: StateId,
        q: StateId,
        depth: usize,
    ) -> Result<OmegaTerm> {
        let n = x.idempotent_exponent();
        let power = base.power(n);
        let e = self.nu(&power)?.xi().clone();
        let eps = self.graph.epsilon(content);
        let fail = |what: &str| Error::DecompositionFailed(format!("{what} for ({p}, {q})"));
        let r = intermediate(e.rows(), eps.rows(), p, q).ok_or_else(|| fail("no exit state"))?;
        let word = self
            .graph
            .path_word(content, r, q)
            .ok_or_else(|| fail("no path"))?;
        let loop_state = (0..e.dim())
            .find(|&s| e.contains(p, s) && e.contains(s, s) && e.contains(s, r))
            .ok_or_else(|| fail("no loop state"))?;
        let b1 = self.go(&power, p, loop_state, depth + 1)?;
        let b2 = self.go(&power, loop_state, loop_state, depth + 1)?;
        let b3 = self.go(&power, loop_state, r, depth + 1)?;
        let mut out = b1.concat(b2.omega()).concat(b3);
        if let Some(w) = OmegaTerm::from_word(&self.graph.alphabet().spell(&word)) {
            out = out.concat(w);
        }
        Ok(out)
    }
}

/// Least `r` with `(p, r) ∈ left` and `(r, q) ∈ right`, given as rows.
fn intermediate(left: &[u64], right: &[u64], p: StateId, q: StateId) -> Option<StateId> {
    let row = left[p];
    (0..right.len()).find(|&r| row >> r & 1 == 1 && right[r] >> q & 1 == 1)
}

/// Splits `t` before the first occurrence of `b`: returns `(prefix, suffix)`
/// with `t = prefix · suffix` over `R`, `b` absent from the prefix and first
/// in the suffix. `b` must occur in `t`.
pub fn split(t: &OmegaTerm, b: char) -> (Option<OmegaTerm>, OmegaTerm) {
    if t.first_symbol() == b {
        return (None, t.clone());
    }
    match t {
        OmegaTerm::Letter(_) => unreachable!("split letter must occur in the term"),
        OmegaTerm::Concat(s, r) => {
            if s.symbols().contains(&b) {
                let (pre, suf) = split(s, b);
                (pre, suf.concat((**r).clone()))
            } else {
                let (pre, suf) = split(r, b);
                let pre = match pre {
                    Some(pre) => (**s).clone().concat(pre),
                    None => (**s).clone(),
                };
                (Some(pre), suf)
            }
        }
        OmegaTerm::Omega(s) => {
            // (xy)^ω = x(yx)^ω
            let (pre, suf) = split(s, b);
            let pre = pre.expect("first symbol differs from b");
            (Some(pre.clone()), suf.concat(pre).omega())
        }
    }
}

/// Extracts a certificate for `pair` and checks that it evaluates as
/// required and has the same content and `ν_[ω]`-value as `t`.
pub fn extract_certificate(
    t: &OmegaTerm,
    pair: (StateId, StateId),
    graph: &Digraph,
) -> Result<OmegaTerm> {
    let mut ex = Extractor::new(graph);
    let beta = ex.extract(t, pair.0, pair.1)?;
    let al = graph.alphabet();
    if !eval_nu_natural(&beta, graph)?.xi().contains(pair.0, pair.1) {
        return Err(Error::DecompositionFailed(format!(
            "{beta} misses the pair"
        )));
    }
    if term_content(&beta, al)? != term_content(t, al)? {
        return Err(Error::DecompositionFailed(format!(
            "{beta} changes the content"
        )));
    }
    if ex.nu(&beta)? != ex.nu(t)? {
        return Err(Error::DecompositionFailed(format!(
            "{beta} changes the value"
        )));
    }
    Ok(beta)
}

/// Checks that `ξ(ν_ω(β))` meets `I×T` and that the instantiations of `β`
/// at `k·m₀`, `k = 1..samples`, are accepted.
pub fn verify_certificate(beta: &OmegaTerm, aut: &Automaton, samples: u64) -> Result<bool> {
    let graph = &aut.graph;
    if !eval_nu_natural(beta, graph)?
        .xi()
        .meets(aut.initial, aut.terminal)
    {
        return Ok(false);
    }
    let m0 = graph.global_exponent();
    for k in 1..=samples.max(1) {
        let m = k * m0;
        let accepted = if instantiated_len(beta, m) <= MAX_MATERIALIZED {
            aut.accepts(&instantiate(beta, m))?
        } else {
            instantiate_relation(beta, m, graph)?.meets(aut.initial, aut.terminal)
        };
        if !accepted {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub term: OmegaTerm,
    pub pair: (StateId, StateId),
    pub verified: bool,
}

/// Certificate for the least pair of `ξ(ν_[ω](t)) ∩ I×T`, or `None` when
/// `t` is not in the closure.
pub fn certify(t: &OmegaTerm, aut: &Automaton, samples: u64) -> Result<Option<Certificate>> {
    let xi = eval_nu_bracket(t, &aut.graph)?.xi().clone();
    let Some(pair) = xi
        .pairs()
        .find(|&(p, q)| aut.initial >> p & 1 == 1 && aut.terminal >> q & 1 == 1)
    else {
        return Ok(None);
    };
    let term = extract_certificate(t, pair, &aut.graph)?;
    let verified = verify_certificate(&term, aut, samples)?;
    Ok(Some(Certificate {
        term,
        pair,
        verified,
    }))
}
