//! Randomized and exhaustive checks of the algebraic laws, counting
//! violations. Shared by the acceptance runner and the property tests.

use rand::Rng;

use rsep_core::letters::{Letter, LetterSet};
use rsep_core::romega::{product_omega_formula, RTriple};
use rsep_core::term::{
    eval_nu_bracket, eval_nu_natural, term_content, term_cumulative_content, term_is_r_idempotent,
};
use rsep_core::Digraph;

use super::*;

#[derive(Debug, Default)]
pub struct Tally {
    pub checks: u64,
    pub violations: u64,
    pub first: Option<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

fn letters_with_one(n: u8) -> Vec<Option<Letter>> {
    std::iter::once(None)
        .chain((0..n).map(|i| Some(Letter(i))))
        .collect()
}

/// Free left regular band and `L_A` laws, and the compatibility of `χ` with
/// associativity: exhaustive over two letters, `random` samples over three.
pub fn algebra(random: usize, seed: u64) -> Tally {
    let mut t = Tally::default();
    let words = all_words(2);
    for x in &words {
        t.check(x.mul(x) == *x, || format!("{x:?} not idempotent"));
        for y in &words {
            t.check(x.mul(y).mul(x) == x.mul(y), || {
                format!("xyx != xy at {x:?} {y:?}")
            });
            for z in &words {
                t.check(x.mul(y).mul(z) == x.mul(&y.mul(z)), || {
                    format!("lrb assoc {x:?} {y:?} {z:?}")
                });
            }
        }
    }
    let pairs = all_la_pairs(2);
    for x in &pairs {
        t.check(x.mul(x) == *x, || format!("{x:?} not idempotent in L_A"));
        for y in &pairs {
            for z in &pairs {
                t.check(x.mul(y).mul(z) == x.mul(&y.mul(z)), || {
                    format!("L_A assoc {x:?} {y:?} {z:?}")
                });
                for a in letters_with_one(2) {
                    let (l, r) = chi_sides(x, y, z, a);
                    t.check(l == r, || {
                        format!("chi at {a:?}: {x:?} {y:?} {z:?}: {l:?} vs {r:?}")
                    });
                }
            }
        }
    }
    let mut rng = rng(seed);
    for _ in 0..random {
        let x = random_la_pair(&mut rng, 3);
        let y = random_la_pair(&mut rng, 3);
        let z = random_la_pair(&mut rng, 3);
        let (u, v, w) = (&x.word, &y.word, &z.word);
        t.check(u.mul(v).mul(u) == u.mul(v), || {
            format!("xyx != xy at {u:?} {v:?}")
        });
        t.check(u.mul(v).mul(w) == u.mul(&v.mul(w)), || {
            format!("lrb assoc {u:?} {v:?} {w:?}")
        });
        t.check(x.mul(&x) == x, || format!("{x:?} not idempotent in L_A"));
        t.check(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), || {
            format!("L_A assoc {x:?} {y:?} {z:?}")
        });
        for a in letters_with_one(3) {
            let (l, r) = chi_sides(&x, &y, &z, a);
            t.check(l == r, || format!("chi at {a:?}: {x:?} {y:?} {z:?}"));
        }
    }
    t
}

/// Associativity of the product in `R^ω(Q, A)`, agreement with the
/// definition through `χ`, and the closed forms of powers against powering.
pub fn romega(samples: usize, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = rng(seed);
    for i in 0..samples {
        let q = 2 + i % 2;
        let x = random_triple(&mut rng, q, 2);
        let y = random_triple(&mut rng, q, 2);
        let z = random_triple(&mut rng, q, 2);
        t.check(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), || {
            format!("assoc {x:?} {y:?} {z:?}")
        });
        t.check(x.mul(&y) == x.mul_by_chi(&y), || {
            format!("chi product {x:?} {y:?}")
        });
        let w = x.natural_omega();
        t.check(w.mul(&w) == w, || {
            format!("natural omega of {x:?} not idempotent")
        });
        t.check(w == x.natural_omega_formula(), || {
            format!("omega closed form at {x:?}")
        });
        let n = rng.gen_range(1..8);
        t.check(x.pow(n) == x.pow_formula(n), || {
            format!("power {n} closed form at {x:?}")
        });
        t.check(
            x.mul(&y).natural_omega() == product_omega_formula(&x, &y),
            || format!("product omega closed form at {x:?} {y:?}"),
        );
        let g = random_digraph(&mut rng, q, 2);
        let small = random_triple_sparse(&mut rng, q, 2);
        t.check(
            small.satisfies_prefix_condition(&g) == naive_prefix_condition(&small, &g),
            || format!("reduced prefix check disagrees at {small:?}"),
        );
    }
    t
}

fn random_triple_sparse(rng: &mut impl Rng, states: usize, letters: usize) -> RTriple {
    let u = random_word(rng, letters);
    let b = random_subset(rng, u.content());
    RTriple::from_fn(u, b, |_| random_rel(rng, states, 0.15)).unwrap()
}

/// Elements of the ω-subsemigroup generated in `R^ω(Q, A)` by the `ν(a)`,
/// obtained as values of random terms.
pub fn random_s_element(rng: &mut impl Rng, g: &Digraph) -> RTriple {
    let leaves = rng.gen_range(1..6);
    let t = random_term(rng, g.alphabet().len(), leaves, 0.3);
    eval_nu_bracket(&t, g).unwrap()
}

/// Predicates preserved by products and `[ω]`, the identities of `R` and
/// the rotation identity, on random pairs of generated elements.
pub fn subsemigroup(pairs: usize, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = rng(seed);
    for i in 0..pairs {
        let g = random_digraph(&mut rng, 2 + i % 2, 2);
        let x = random_s_element(&mut rng, &g);
        let y = random_s_element(&mut rng, &g);
        for (name, z) in [("x", &x), ("y", &y)] {
            t.check(z.is_tilde(&g), || format!("{name} = {z:?} not tilde"));
            t.check(z.satisfies_prefix_condition(&g), || {
                format!("{name} = {z:?} fails the prefix condition")
            });
            t.check(
                z.satisfies_prefix_condition(&g) == naive_prefix_condition(z, &g),
                || format!("reduced prefix check disagrees at {z:?}"),
            );
        }
        let xy = x.mul(&y);
        let xw = x.bracket_omega(&g);
        let xyw = xy.bracket_omega(&g);
        for (name, z) in [("xy", &xy), ("x^[w]", &xw), ("(xy)^[w]", &xyw)] {
            t.check(z.in_s_omega(&g), || format!("{name} left S at {x:?} {y:?}"));
        }
        t.check(xw.bracket_omega(&g) == xw, || {
            format!("(x^[w])^[w] at {x:?}")
        });
        t.check(x.pow(2).bracket_omega(&g) == xw, || {
            format!("(x^2)^[w] at {x:?}")
        });
        t.check(x.pow(3).bracket_omega(&g) == xw, || {
            format!("(x^3)^[w] at {x:?}")
        });
        t.check(xyw.mul(&x) == xyw, || format!("(xy)^[w] x at {x:?} {y:?}"));
        t.check(xyw.mul(&xw) == xyw, || {
            format!("(xy)^[w] x^[w] at {x:?} {y:?}")
        });
        let rot = x.mul(&y.mul(&x).bracket_omega(&g));
        t.check(rot == xyw, || {
            format!("(xy)^[w] = x(yx)^[w] at {x:?} {y:?}")
        });
    }
    t
}

/// Removes some pairs from every value and some letters from `B`.
fn shrink(rng: &mut impl Rng, x: &RTriple) -> RTriple {
    let b: LetterSet = x
        .cumulative()
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .collect();
    let fun = x
        .values()
        .iter()
        .map(|r| {
            let mut s = r.clone();
            for (p, q) in r.pairs() {
                if rng.gen_bool(0.3) {
                    s = BinRel::from_pairs(r.dim(), s.pairs().filter(|&e| e != (p, q))).unwrap();
                }
            }
            s
        })
        .collect();
    RTriple::new(x.word().clone(), b, fun).unwrap()
}

/// Order axioms and the compatibility of the order with the operations.
pub fn order(samples: usize, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = rng(seed);
    for i in 0..samples {
        let q = 2 + i % 2;
        let y = random_triple(&mut rng, q, 2);
        let x = shrink(&mut rng, &y);
        let w = shrink(&mut rng, &x);
        let z = random_triple(&mut rng, q, 2);
        t.check(x.leq(&x), || format!("not reflexive at {x:?}"));
        t.check(x.leq(&y), || {
            format!("shrinking does not give a smaller element at {y:?}")
        });
        t.check(w.leq(&y), || format!("not transitive at {w:?} {x:?} {y:?}"));
        t.check(!(y.leq(&x)) || x == y, || {
            format!("not antisymmetric at {x:?} {y:?}")
        });
        t.check(z.mul(&x).leq(&z.mul(&y)), || {
            format!("left stability at {z:?} {x:?} {y:?}")
        });

        let g = random_digraph(&mut rng, q, 2);
        let s = random_s_element(&mut rng, &g);
        let sx = shrink(&mut rng, &s);
        let zs = random_s_element(&mut rng, &g);
        t.check(s.natural_omega().leq(&s.bracket_omega(&g)), || {
            format!("x^w <= x^[w] at {s:?}")
        });
        t.check(sx.bracket_omega(&g).leq(&s.bracket_omega(&g)), || {
            format!("[w] not monotone at {sx:?} {s:?}")
        });
        if sx.in_s_omega(&g) {
            t.check(sx.mul(&zs).leq(&s.mul(&zs)), || {
                format!("right stability at {sx:?} {s:?} {zs:?}")
            });
        }
        let leaves = rng.gen_range(1..6);
        let term = random_term(&mut rng, 2, leaves, 0.3);
        let nat = eval_nu_natural(&term, &g).unwrap();
        let br = eval_nu_bracket(&term, &g).unwrap();
        t.check(nat.leq(&br), || format!("nu_w <= nu_[w] fails at {term}"));
    }
    t
}

/// Content and cumulative content of terms against their values, and the
/// idempotency criterion on the reference terms.
pub fn content(terms: usize, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = rng(seed);
    for i in 0..terms {
        let letters = 2 + i % 2;
        let g = random_digraph(&mut rng, 2, letters);
        let al = g.alphabet().clone();
        let leaves = rng.gen_range(1..8);
        let term = random_term(&mut rng, letters, leaves, 0.3);
        let x = eval_nu_bracket(&term, &g).unwrap();
        let vc = term_cumulative_content(&term, &al).unwrap();
        t.check(x.cumulative() == vc, || {
            format!("cumulative content of {term}")
        });
        t.check(x.content() == term_content(&term, &al).unwrap(), || {
            format!("content of {term}")
        });
        let idem = term_is_r_idempotent(&term, &al).unwrap();
        t.check(idem == (x.cumulative() == x.content()), || {
            format!("idempotency of {term}")
        });
        if idem {
            t.check(x.mul(&x) == x, || format!("{term} claimed idempotent"));
        }
    }
    let al = alphabet(2);
    t.check(
        term_is_r_idempotent(&"(ab)^w".parse().unwrap(), &al).unwrap(),
        || "(ab)^w".into(),
    );
    t.check(
        !term_is_r_idempotent(&"a".parse().unwrap(), &al).unwrap(),
        || "a".into(),
    );
    t
}
