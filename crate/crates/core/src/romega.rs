//! The semigroup `R^ω(Q, A)` of triples `(F, B, u)`.
//!
//! `F` maps each letter of `A¹` to a relation on `Q`, `B ⊆ c(u)` is a
//! cumulative-content set and `u` a repetition-free word. `F` is the identity
//! outside `c(u)`, so only the values on the letters of `u` are stored, in
//! the order of `u`. Equality and hashing are therefore canonical.
//!
//! Besides the product, this module carries the natural ω-power, the
//! digraph-dependent `[ω]`-power, the membership predicates for the
//! subsemigroups `R̃^ω(G)` and `S^ω(G)`, the partial order, the generators
//! `ν(a)` and the map `ξ`.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::Digraph;
use crate::error::{Error, Result};
use crate::letters::{Alphabet, Letter, LetterSet};
use crate::lrb::{product_cumulative, LaPair, LrbWord};
use crate::relation::{omega_exponent, BinRel};

/// An element `(F, B, u)` of `R^ω(Q, A)` with nonempty `u`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RTriple {
    word: LrbWord,
    cumulative: LetterSet,
    // fun[j] = F(word[j])
    fun: Vec<BinRel>,
}

/// Relation of `F` at a letter of `A¹`; `None` stands for the identity.
type Value<'a> = Option<&'a BinRel>;

fn compose_values(dim: usize, x: Value<'_>, y: Value<'_>) -> BinRel {
    match (x, y) {
        (Some(x), Some(y)) => x.then(y),
        (Some(x), None) => x.clone(),
        (None, Some(y)) => y.clone(),
        (None, None) => BinRel::identity(dim),
    }
}

/// `χ^B_{u,v}(a)`; `None` is the letter `1` of `A¹`.
pub fn chi(
    b: LetterSet,
    u: &LrbWord,
    v: &LrbWord,
    a: Option<Letter>,
) -> (Option<Letter>, Option<Letter>) {
    let in_u = a.is_some_and(|a| u.content().contains(a));
    if in_u || v.content().is_subset(b) {
        (a, v.first_outside(b))
    } else {
        (None, a)
    }
}

impl RTriple {
    /// Builds a triple from the values of `F` on the letters of `word`.
    pub fn new(word: LrbWord, cumulative: LetterSet, fun: Vec<BinRel>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWordComponent);
        }
        if fun.len() != word.len() {
            return Err(Error::Invalid(format!(
                "{} relations for a word of length {}",
                fun.len(),
                word.len()
            )));
        }
        if !cumulative.is_subset(word.content()) {
            return Err(Error::Invalid(
                "cumulative content is not contained in the content".into(),
            ));
        }
        let dim = fun[0].dim();
        if let Some(r) = fun.iter().find(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, r.dim()));
        }
        Ok(RTriple {
            word,
            cumulative,
            fun,
        })
    }

    /// Builds a triple from a total function on `A¹`, given as a closure.
    /// Values outside `c(word)` are ignored (they are the identity).
    pub fn from_fn(
        word: LrbWord,
        cumulative: LetterSet,
        mut f: impl FnMut(Letter) -> BinRel,
    ) -> Result<Self> {
        let fun = word.letters().iter().map(|&a| f(a)).collect();
        RTriple::new(word, cumulative, fun)
    }

    /// The generator `ν(a) = (F_a, ∅, a)` with `F_a(a) = δ(a)`.
    pub fn generator(a: Letter, graph: &Digraph) -> Result<Self> {
        if a.index() >= graph.alphabet().len() {
            return Err(Error::Invalid(format!(
                "letter index {} outside the alphabet",
                a.0
            )));
        }
        Ok(RTriple {
            word: LrbWord::letter(a),
            cumulative: LetterSet::EMPTY,
            fun: vec![graph.delta(a).clone()],
        })
    }

    pub fn word(&self) -> &LrbWord {
        &self.word
    }

    pub fn cumulative(&self) -> LetterSet {
        self.cumulative
    }

    pub fn content(&self) -> LetterSet {
        self.word.content()
    }

    pub fn dim(&self) -> usize {
        self.fun[0].dim()
    }

    pub fn la_pair(&self) -> LaPair {
        LaPair {
            cumulative: self.cumulative,
            word: self.word.clone(),
        }
    }

    /// `F(a)`, or `None` for the identity (off `c(u)` and at `1`).
    pub fn value(&self, a: Option<Letter>) -> Value<'_> {
        let a = a?;
        self.word.position(a).map(|j| &self.fun[j])
    }

    /// `F(a)` as an owned relation.
    pub fn value_owned(&self, a: Option<Letter>) -> BinRel {
        self.value(a)
            .cloned()
            .unwrap_or_else(|| BinRel::identity(self.dim()))
    }

    /// Values of `F` along `u`.
    pub fn values(&self) -> &[BinRel] {
        &self.fun
    }

    /// `ξ(x) = F(i_∅(u))`, the value at the first letter of `u`.
    pub fn xi(&self) -> &BinRel {
        &self.fun[0]
    }

    /// Product in `R^ω(Q, A)`; dimensions must agree.
    pub fn mul(&self, other: &RTriple) -> RTriple {
        debug_assert_eq!(self.dim(), other.dim());
        let b = self.cumulative;
        let right = other.value(other.word.first_outside(b));
        let word = self.word.mul(&other.word);
        let mut fun = Vec::with_capacity(word.len());
        for f in &self.fun {
            fun.push(match right {
                Some(g) => f.then(g),
                None => f.clone(),
            });
        }
        // letters of v outside c(u): the χ-value is (1, a)
        let cu = self.word.content();
        for (j, &a) in other.word.letters().iter().enumerate() {
            if !cu.contains(a) {
                fun.push(other.fun[j].clone());
            }
        }
        RTriple {
            word,
            cumulative: product_cumulative(b, &other.la_pair()),
            fun,
        }
    }

    pub fn try_mul(&self, other: &RTriple) -> Result<RTriple> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.mul(other))
    }

    /// The product computed literally as `((F × G) ∘ χ^B_{u,v}, D, uv)`.
    pub fn mul_by_chi(&self, other: &RTriple) -> RTriple {
        let dim = self.dim();
        let word = self.word.mul(&other.word);
        let fun = word
            .letters()
            .iter()
            .map(|&a| {
                let (a1, a2) = chi(self.cumulative, &self.word, &other.word, Some(a));
                compose_values(dim, self.value(a1), other.value(a2))
            })
            .collect();
        RTriple {
            word,
            cumulative: self.la_pair().mul(&other.la_pair()).cumulative,
            fun,
        }
    }

    /// `x^n` for `n ≥ 1` by repeated multiplication.
    pub fn pow(&self, n: u64) -> RTriple {
        assert!(n >= 1, "natural powers start at 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Index and period of `x` in the cyclic subsemigroup it generates,
    /// together with the powers `x^1 .. x^(index+period-1)`.
    fn power_cycle(&self) -> (u64, u64, Vec<RTriple>) {
        let mut seen: HashMap<RTriple, u64> = HashMap::new();
        let mut powers = Vec::new();
        let mut cur = self.clone();
        let mut k = 1u64;
        loop {
            if let Some(&i) = seen.get(&cur) {
                return (i, k - i, powers);
            }
            seen.insert(cur.clone(), k);
            let next = cur.mul(self);
            powers.push(cur);
            cur = next;
            k += 1;
        }
    }

    /// Least `n ≥ 1` such that `x^n` is idempotent.
    pub fn idempotent_exponent(&self) -> u64 {
        let (index, period, _) = self.power_cycle();
        omega_exponent(index, period, 0)
    }

    /// The natural ω-power: the idempotent power of `x`, found by powering.
    pub fn natural_omega(&self) -> RTriple {
        let (index, period, mut powers) = self.power_cycle();
        let m = omega_exponent(index, period, 0);
        powers.swap_remove((m - 1) as usize)
    }

    /// Closed form of the natural ω-power:
    /// `F_ω(a) = F(a) F(i_B(u))^(ω-1)` on `c(u)`.
    pub fn natural_omega_formula(&self) -> RTriple {
        let tail = self
            .value(self.word.first_outside(self.cumulative))
            .map(|r| r.omega_plus(-1));
        let fun = self
            .fun
            .iter()
            .map(|f| match &tail {
                Some(t) => f.then(t),
                None => f.clone(),
            })
            .collect();
        RTriple {
            word: self.word.clone(),
            cumulative: self.cumulative,
            fun,
        }
    }

    /// Closed form of `x^n`: `F_n(a) = F(a) F(i_B(u))^(n-1)` on `c(u)`.
    pub fn pow_formula(&self, n: u64) -> RTriple {
        assert!(n >= 1);
        let tail = self
            .value(self.word.first_outside(self.cumulative))
            .map(|r| r.pow(n - 1));
        let fun = self
            .fun
            .iter()
            .map(|f| match &tail {
                Some(t) => f.then(t),
                None => f.clone(),
            })
            .collect();
        RTriple {
            word: self.word.clone(),
            cumulative: self.cumulative,
            fun,
        }
    }

    /// The alternative ω-power `x^[ω] = (G, c(u), u)` with
    /// `G(a) = F_ω(a) ε(u)` on `c(u)`.
    pub fn bracket_omega(&self, graph: &Digraph) -> RTriple {
        let eps = graph.epsilon_ref(self.content());
        let omega = self.natural_omega();
        let fun = omega.fun.iter().map(|f| f.then(&eps)).collect();
        RTriple {
            word: self.word.clone(),
            cumulative: self.content(),
            fun,
        }
    }

    /// Conditions defining `R̃^ω(G)`: for every `a ∈ c(u)`,
    /// `F(a) ⊆ ε(u)` and `F(a) ε(B) = F(a)`.
    pub fn is_tilde(&self, graph: &Digraph) -> bool {
        let eps_u = graph.epsilon_ref(self.content());
        let eps_b = graph.epsilon_ref(self.cumulative);
        self.fun
            .iter()
            .all(|f| f.le(&eps_u) && f.then(&eps_b) == *f)
    }

    /// `X ⊆ Y ⊆ A ⇒ F(i_X(u)) ⊆ ε(Y) F(i_Y(u))`, checked on positions.
    ///
    /// `i_X(u)` only depends on the longest prefix of `u` inside `X`. For
    /// positions `j < k` (with `k = |u|` standing for the value `1`), the
    /// smallest admissible `Y` is the set of letters before position `k`,
    /// and `ε` is monotone, so it suffices to test
    /// `F(u_j) ⊆ ε(u_0 .. u_(k-1)) F(u_k)`.
    pub fn satisfies_prefix_condition(&self, graph: &Digraph) -> bool {
        let m = self.word.len();
        let letters = self.word.letters();
        let mut prefix = LetterSet::EMPTY;
        for k in 0..=m {
            if k > 0 {
                prefix.insert(letters[k - 1]);
            }
            let eps = graph.epsilon_ref(prefix);
            let rhs = match self.fun.get(k) {
                Some(f) => eps.then(f),
                None => eps.into_owned(),
            };
            if self.fun[..k.min(m)].iter().any(|f| !f.le(&rhs)) {
                return false;
            }
        }
        true
    }

    /// Membership in `S^ω(G)`: both tilde conditions and the prefix condition.
    pub fn in_s_omega(&self, graph: &Digraph) -> bool {
        self.is_tilde(graph) && self.satisfies_prefix_condition(graph)
    }

    /// `x ≤ y`: pointwise inclusion of `F`, `B ⊆ C`, equal words.
    pub fn leq(&self, other: &RTriple) -> bool {
        self.word == other.word
            && self.cumulative.is_subset(other.cumulative)
            && self.fun.iter().zip(&other.fun).all(|(f, g)| f.le(g))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayTriple(self, alphabet)
    }
}

/// Closed form of the natural ω-power of a product `xy`, by case analysis
/// on the letters of `uv`. Used to cross-check [`RTriple::natural_omega`].
pub fn product_omega_formula(x: &RTriple, y: &RTriple) -> RTriple {
    let dim = x.dim();
    let (b, u) = (x.cumulative, &x.word);
    let (c, v) = (y.cumulative, &y.word);
    let cu = u.content();
    let cv = v.content();
    let v_in_b = cv.is_subset(b);
    let d = if v_in_b { b } else { c };
    let uv = u.mul(v);

    let f = |a: Option<Letter>| x.value(a);
    let g = |a: Option<Letter>| y.value(a);
    let in_u = |a: Option<Letter>| a.is_some_and(|a| cu.contains(a));
    let omega_minus = |r: BinRel| r.omega_plus(-1);

    let g_ib_v = g(v.first_outside(b));
    let i_d_u = u.first_outside(d);
    let i_c_u = u.first_outside(c);
    let i_c_uv = uv.first_outside(c);
    let i_c_v = v.first_outside(c);

    let fun = uv
        .letters()
        .iter()
        .map(|&a| {
            let fa = Some(a);
            if cu.contains(a) {
                let head = compose_values(dim, f(fa), g_ib_v);
                if v_in_b || in_u(i_d_u) {
                    let base = compose_values(dim, f(i_d_u), g_ib_v);
                    head.then(&omega_minus(base))
                } else {
                    debug_assert!(!in_u(i_c_uv));
                    head.then(&omega_minus(compose_values(dim, g(i_c_v), None)))
                }
            } else if in_u(i_c_u) {
                let base = compose_values(dim, f(i_c_u), g_ib_v);
                compose_values(dim, g(fa), None).then(&omega_minus(base))
            } else {
                debug_assert!(!in_u(i_c_uv));
                compose_values(dim, g(fa), None).then(&omega_minus(compose_values(
                    dim,
                    g(i_c_v),
                    None,
                )))
            }
        })
        .collect();
    RTriple {
        word: uv,
        cumulative: d,
        fun,
    }
}

struct DisplayTriple<'a>(&'a RTriple, &'a Alphabet);

impl fmt::Display for DisplayTriple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, al) = (self.0, self.1);
        write!(
            f,
            "u={} B={}",
            x.word.display(al),
            al.format_set(x.cumulative)
        )?;
        for (&a, r) in x.word.letters().iter().zip(&x.fun) {
            write!(f, " F({})={}", al.symbol(a), r)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RTriple")
            .field("u", &self.word)
            .field("B", &self.cumulative)
            .field("F", &self.fun)
            .finish()
    }
}
