//! Brute-force search for an R-trivial separator: a finite R-trivial
//! semigroup `S`, a letter map `φ` and `F ⊆ S` with `φ(L₁) ⊆ F` and
//! `φ(L₂) ∩ F = ∅`. Exponential by design; meant as an independent check of
//! [`separate`](super::decide::separate) on small inputs.

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::letters::Letter;

use super::semigroup::FiniteSemigroup;

#[derive(Debug, Clone)]
pub struct Separator {
    pub semigroup: FiniteSemigroup,
    /// `F = φ(L₁)`.
    pub accepting: Vec<usize>,
}

/// All associative tables on `{0, .., n-1}`.
pub fn associative_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut cells = vec![None; n * n];
    fill(n, 0, &mut cells, &mut out);
    out
}

fn fill(n: usize, pos: usize, cells: &mut [Option<usize>], out: &mut Vec<Vec<Vec<usize>>>) {
    if pos == n * n {
        out.push(
            cells
                .chunks(n)
                .map(|row| row.iter().map(|c| c.unwrap()).collect())
                .collect(),
        );
        return;
    }
    for v in 0..n {
        cells[pos] = Some(v);
        if consistent(n, cells) {
            fill(n, pos + 1, cells, out);
        }
    }
    cells[pos] = None;
}

fn consistent(n: usize, cells: &[Option<usize>]) -> bool {
    let get = |x: usize, y: usize| cells[x * n + y];
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = get(x, y) else { continue };
            for z in 0..n {
                let (Some(yz), Some(l)) = (get(y, z), get(xy, z)) else {
                    continue;
                };
                if let Some(r) = get(x, yz) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Elements `φ(w)` for the words `w` accepted by `aut`.
fn image(aut: &Automaton, s: &FiniteSemigroup) -> Vec<bool> {
    let n = s.size();
    let states = aut.graph.states();
    let mut seen = vec![false; states * n];
    let mut stack = Vec::new();
    for a in aut.alphabet().letters() {
        let img = s.image(a);
        for q in aut.initial_states() {
            for q2 in crate::automaton::bits(aut.graph.delta(a).row(q)) {
                push(&mut seen, &mut stack, q2 * n + img);
            }
        }
    }
    while let Some(node) = stack.pop() {
        let (q, e) = (node / n, node % n);
        for a in aut.alphabet().letters() {
            let e2 = s.mul(e, s.image(a));
            for q2 in crate::automaton::bits(aut.graph.delta(a).row(q)) {
                push(&mut seen, &mut stack, q2 * n + e2);
            }
        }
    }
    let mut out = vec![false; n];
    for q in aut.terminal_states() {
        for (e, hit) in out.iter_mut().enumerate() {
            *hit |= seen[q * n + e];
        }
    }
    out
}

fn push(seen: &mut [bool], stack: &mut Vec<usize>, node: usize) {
    if !seen[node] {
        seen[node] = true;
        stack.push(node);
    }
}

/// Searches R-trivial semigroups with at most `max_size` elements.
pub fn brute_force_separator(
    l1: &Automaton,
    l2: &Automaton,
    max_size: usize,
) -> Result<Option<Separator>> {
    if l1.alphabet() != l2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let alphabet = l1.alphabet();
    let k = alphabet.len();
    for n in 1..=max_size {
        for table in associative_tables(n) {
            let base = FiniteSemigroup::from_table(table, alphabet.clone(), vec![0; k])?;
            if !base.is_r_trivial() {
                continue;
            }
            let mut map = vec![0usize; k];
            loop {
                let s = FiniteSemigroup::from_table(
                    base.table().to_vec(),
                    alphabet.clone(),
                    map.clone(),
                )?;
                let i1 = image(l1, &s);
                let i2 = image(l2, &s);
                if i1.iter().zip(&i2).all(|(&x, &y)| !(x && y)) {
                    let accepting = (0..n).filter(|&e| i1[e]).collect();
                    return Ok(Some(Separator {
                        semigroup: s,
                        accepting,
                    }));
                }
                if !next_map(&mut map, n) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

fn next_map(map: &mut [usize], n: usize) -> bool {
    for m in map.iter_mut() {
        *m += 1;
        if *m < n {
            return true;
        }
        *m = 0;
    }
    false
}

impl Separator {
    /// Whether `w` is recognized, i.e. `φ(w) ∈ F`.
    pub fn accepts_word(&self, w: &[Letter]) -> bool {
        self.semigroup
            .eval_word(w)
            .is_some_and(|e| self.accepting.contains(&e))
    }
}
