//! Closure of the generators `ν(a)` under the product and the `[ω]`-power.
//!
//! Elements are produced level by level: level `k` holds the triples whose
//! shortest witness term has `k` nodes. A candidate of size `k` is either
//! `t^w` with `|t| = k-1` or `s t` with `|s| + |t| = k-1`, where `s` and `t`
//! are witnesses already found. Once every level in `(M, 2M+1]` is empty
//! (`M` the largest witness size so far), all products and powers of known
//! elements have been tried and the set is closed.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::automaton::Digraph;
use crate::error::{Error, Result};
use crate::par::map_collect;
use crate::romega::RTriple;
use crate::term::OmegaTerm;

/// Default bound on the number of generated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOptions {
    pub cap: usize,
    /// Evaluate products on the rayon pool (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            cap: DEFAULT_CAP,
            parallel: crate::par::PARALLEL_AVAILABLE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenElement {
    pub triple: RTriple,
    /// A smallest term evaluating to `triple` under `ν_[ω]`.
    pub witness: OmegaTerm,
}

impl GenElement {
    pub fn size(&self) -> usize {
        self.witness.size()
    }
}

#[derive(Debug, Clone)]
pub struct GenSemigroup {
    graph: Digraph,
    elements: Vec<GenElement>,
    index: HashMap<RTriple, usize>,
    // levels[k] = range of indices with witness size k
    levels: Vec<std::ops::Range<usize>>,
    complete: bool,
}

/// Result of a generation that may stop at the first element satisfying a
/// predicate.
#[derive(Debug, Clone)]
pub struct Search {
    pub semigroup: GenSemigroup,
    /// Index of the first hit in canonical order.
    pub hit: Option<usize>,
}

impl Search {
    pub fn hit_element(&self) -> Option<&GenElement> {
        self.hit.map(|i| &self.semigroup.elements[i])
    }
}

impl GenSemigroup {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Elements in canonical order: by witness size, then by triple.
    pub fn elements(&self) -> &[GenElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, x: &RTriple) -> Option<&GenElement> {
        self.index.get(x).map(|&i| &self.elements[i])
    }

    pub fn contains(&self, x: &RTriple) -> bool {
        self.index.contains_key(x)
    }

    /// False when generation stopped early at a predicate hit.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Checks closure under the product and the `[ω]`-power by brute force.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|x| {
            self.contains(&x.triple.bracket_omega(&self.graph))
                && self
                    .elements
                    .iter()
                    .all(|y| self.contains(&x.triple.mul(&y.triple)))
        })
    }
}

/// Generates the whole ω-semigroup.
pub fn generate(graph: &Digraph, opts: GenOptions) -> Result<GenSemigroup> {
    Ok(generate_until(graph, opts, |_| false)?.semigroup)
}

enum Origin {
    Omega(usize),
    Product(usize, usize),
}

/// Generates elements in canonical order and stops after the first one
/// (in that order) satisfying `hit`.
pub fn generate_until<P>(graph: &Digraph, opts: GenOptions, hit: P) -> Result<Search>
where
    P: Fn(&RTriple) -> bool,
{
    let mut g = GenSemigroup {
        graph: graph.clone(),
        elements: Vec::new(),
        index: HashMap::new(),
        levels: std::iter::once(0..0).collect(),
        complete: false,
    };

    let mut gens: Vec<GenElement> = graph
        .alphabet()
        .letters()
        .map(|a| {
            Ok(GenElement {
                triple: RTriple::generator(a, graph)?,
                witness: OmegaTerm::Letter(graph.alphabet().symbol(a)),
            })
        })
        .collect::<Result<_>>()?;
    gens.sort_by(|x, y| x.triple.cmp(&y.triple));
    if let Some(i) = push_level(&mut g, gens, opts.cap, &hit)? {
        return Ok(Search {
            semigroup: g,
            hit: Some(i),
        });
    }

    let mut max_size = 1;
    let mut k = 2;
    while k <= 2 * max_size + 1 {
        let new = level(&g, k, opts.parallel);
        if !new.is_empty() {
            max_size = k;
        }
        if let Some(i) = push_level(&mut g, new, opts.cap, &hit)? {
            return Ok(Search {
                semigroup: g,
                hit: Some(i),
            });
        }
        k += 1;
    }
    g.complete = true;
    Ok(Search {
        semigroup: g,
        hit: None,
    })
}

fn push_level<P>(
    g: &mut GenSemigroup,
    new: Vec<GenElement>,
    cap: usize,
    hit: &P,
) -> Result<Option<usize>>
where
    P: Fn(&RTriple) -> bool,
{
    let start = g.elements.len();
    if start + new.len() > cap {
        return Err(Error::CapacityExceeded(cap));
    }
    let mut found = None;
    for e in new {
        let i = g.elements.len();
        if found.is_none() && hit(&e.triple) {
            found = Some(i);
        }
        g.index.insert(e.triple.clone(), i);
        g.elements.push(e);
    }
    g.levels.push(start..g.elements.len());
    Ok(found)
}

/// New elements of witness size `k`, sorted by triple.
fn level(g: &GenSemigroup, k: usize, parallel: bool) -> Vec<GenElement> {
    let mut origins: Vec<Origin> = g.levels[k - 1].clone().map(Origin::Omega).collect();
    for s in 1..k - 1 {
        let t = k - 1 - s;
        for i in g.levels[s].clone() {
            for j in g.levels[t].clone() {
                origins.push(Origin::Product(i, j));
            }
        }
    }

    let graph = &g.graph;
    let elements = &g.elements;
    let index = &g.index;
    let results: Vec<Option<RTriple>> = map_collect(&origins, parallel, |o| {
        let x = match *o {
            Origin::Omega(i) => elements[i].triple.bracket_omega(graph),
            Origin::Product(i, j) => elements[i].triple.mul(&elements[j].triple),
        };
        (!index.contains_key(&x)).then_some(x)
    });

    let witness = |o: &Origin| match *o {
        Origin::Omega(i) => elements[i].witness.clone().omega(),
        Origin::Product(i, j) => elements[i]
            .witness
            .clone()
            .concat(elements[j].witness.clone()),
    };
    let mut best: HashMap<RTriple, (OmegaTerm, Option<String>)> = HashMap::new();
    for (o, x) in origins.iter().zip(results) {
        let Some(x) = x else { continue };
        match best.get_mut(&x) {
            None => {
                best.insert(x, (witness(o), None));
            }
            Some((term, rendered)) => {
                let cand = witness(o);
                let cand_str = cand.to_string();
                let cur = rendered.get_or_insert_with(|| term.to_string());
                if cand_str < *cur {
                    *term = cand;
                    *cur = cand_str;
                }
            }
        }
    }
    let mut out: Vec<GenElement> = best
        .into_iter()
        .map(|(triple, (witness, _))| GenElement { triple, witness })
        .collect();
    out.sort_by(|x, y| x.triple.cmp(&y.triple));
    out
}

/// The upper bound `2^((m²+1)n) · 3 · n!` on the size of the ω-semigroup of
/// a digraph with `m` states over `n` letters.
pub fn size_bound(states: usize, letters: usize) -> BigUint {
    let exp = (states * states + 1) * letters;
    let mut b = BigUint::from(1u8) << exp;
    b *= 3u8;
    for i in 2..=letters {
        b *= i;
    }
    b
}
