//! Random instances and reference implementations shared by the
//! integration tests.
#![allow(dead_code)]

pub mod suites;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rsep_core::letters::{Alphabet, Letter, LetterSet};
use rsep_core::lrb::{LaPair, LrbWord};
use rsep_core::relation::BinRel;
use rsep_core::romega::{chi, RTriple};
use rsep_core::term::OmegaTerm;
use rsep_core::{Automaton, Digraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::new("abcdefgh".chars().take(n)).unwrap()
}

pub fn random_rel(rng: &mut impl Rng, dim: usize, density: f64) -> BinRel {
    let mut r = BinRel::empty(dim);
    for p in 0..dim {
        for q in 0..dim {
            if rng.gen_bool(density) {
                r.insert(p, q);
            }
        }
    }
    r
}

pub fn random_digraph(rng: &mut impl Rng, states: usize, letters: usize) -> Digraph {
    let density = rng.gen_range(0.2..0.6);
    let delta = (0..letters)
        .map(|_| random_rel(rng, states, density))
        .collect();
    Digraph::new(alphabet(letters), states, delta).unwrap()
}

pub fn random_automaton(rng: &mut impl Rng, states: usize, letters: usize) -> Automaton {
    let graph = random_digraph(rng, states, letters);
    let pick = |rng: &mut dyn rand::RngCore| {
        let v: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.4)).collect();
        if v.is_empty() {
            vec![rng.gen_range(0..states)]
        } else {
            v
        }
    };
    let i = pick(rng);
    let t = pick(rng);
    Automaton::new(graph, &i, &t).unwrap()
}

/// A uniformly shuffled nonempty repetition-free word.
pub fn random_word(rng: &mut impl Rng, letters: usize) -> LrbWord {
    let mut all: Vec<Letter> = (0..letters as u8).map(Letter).collect();
    all.shuffle(rng);
    let len = rng.gen_range(1..=letters);
    LrbWord::reduce(all.into_iter().take(len))
}

pub fn random_subset(rng: &mut impl Rng, of: LetterSet) -> LetterSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random element of `R^ω(Q, A)`, with no constraint on `F`.
pub fn random_triple(rng: &mut impl Rng, states: usize, letters: usize) -> RTriple {
    let u = random_word(rng, letters);
    let b = random_subset(rng, u.content());
    let density = rng.gen_range(0.1..0.7);
    RTriple::from_fn(u, b, |_| random_rel(rng, states, density)).unwrap()
}

/// All words without repeated letters over `n` letters, the empty word
/// included.
pub fn all_words(n: u8) -> Vec<LrbWord> {
    let mut out = vec![LrbWord::empty()];
    let mut frontier = vec![LrbWord::empty()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            for a in (0..n).map(Letter) {
                if !u.content().contains(a) {
                    next.push(u.mul(&LrbWord::letter(a)));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All pairs `(B, u)` with `B ⊆ c(u)`.
pub fn all_la_pairs(n: u8) -> Vec<LaPair> {
    let mut out = Vec::new();
    for u in all_words(n) {
        let c = u.content().0;
        let mut sub = c;
        loop {
            out.push(LaPair::new(LetterSet(sub), u.clone()).unwrap());
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & c;
        }
    }
    out
}

pub fn random_la_pair(rng: &mut impl Rng, letters: usize) -> LaPair {
    let u = if rng.gen_bool(0.1) {
        LrbWord::empty()
    } else {
        random_word(rng, letters)
    };
    let b = random_subset(rng, u.content());
    LaPair::new(b, u).unwrap()
}

/// Both sides of the compatibility of `χ` with associativity, evaluated
/// at `a ∈ A¹`, as triples of letters of `A¹`.
#[allow(clippy::type_complexity)]
pub fn chi_sides(
    x: &LaPair,
    y: &LaPair,
    z: &LaPair,
    a: Option<Letter>,
) -> (
    (Option<Letter>, Option<Letter>, Option<Letter>),
    (Option<Letter>, Option<Letter>, Option<Letter>),
) {
    let xy = x.mul(y);
    let (l12, l3) = chi(xy.cumulative, &xy.word, &z.word, a);
    let (l1, l2) = chi(x.cumulative, &x.word, &y.word, l12);
    let yz = y.word.mul(&z.word);
    let (r1, r23) = chi(x.cumulative, &x.word, &yz, a);
    let (r2, r3) = chi(y.cumulative, &y.word, &z.word, r23);
    ((l1, l2, l3), (r1, r2, r3))
}

/// `(F, B, u) ∈ S^ω(G)` checked over every pair `X ⊆ Y ⊆ A`.
pub fn naive_prefix_condition(x: &RTriple, g: &Digraph) -> bool {
    let n = g.alphabet().len();
    let full = (1u64 << n) - 1;
    for y in 0..=full {
        let eps_y = g.epsilon(LetterSet(y));
        let fy = x.value_owned(x.word().first_outside(LetterSet(y)));
        let rhs = eps_y.then(&fy);
        let mut sub = y;
        loop {
            let fx = x.value_owned(x.word().first_outside(LetterSet(sub)));
            if !fx.le(&rhs) {
                return false;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & y;
        }
    }
    true
}

/// Random ω-term with `leaves` letter occurrences.
pub fn random_term(rng: &mut impl Rng, letters: usize, leaves: usize, omega_p: f64) -> OmegaTerm {
    let mut t = if leaves <= 1 {
        OmegaTerm::Letter((b'a' + rng.gen_range(0..letters) as u8) as char)
    } else {
        let k = rng.gen_range(1..leaves);
        random_term(rng, letters, k, omega_p).concat(random_term(rng, letters, leaves - k, omega_p))
    };
    if rng.gen_bool(omega_p) {
        t = t.omega();
    }
    t
}
