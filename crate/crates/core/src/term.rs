//! ω-terms: syntax, printing, and their evaluations in `R^ω(Q, A)`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! Term   := Factor+            juxtaposition, left-associated
//! Factor := letter | '(' Term ')' | Factor '^w'
//! ```
//!
//! `^ω` and a bare `ω` are accepted for `^w`.

use std::fmt;
use std::str::FromStr;

use crate::automaton::Digraph;
use crate::error::{Error, Result};
use crate::letters::{is_letter_symbol, Alphabet, Letter, LetterSet};
use crate::lrb::{LaPair, LrbWord};
use crate::relation::BinRel;
use crate::romega::RTriple;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OmegaTerm {
    Letter(char),
    Concat(Box<OmegaTerm>, Box<OmegaTerm>),
    Omega(Box<OmegaTerm>),
}

impl OmegaTerm {
    pub fn letter(c: char) -> Self {
        OmegaTerm::Letter(c)
    }

    pub fn concat(self, right: OmegaTerm) -> Self {
        OmegaTerm::Concat(Box::new(self), Box::new(right))
    }

    pub fn omega(self) -> Self {
        OmegaTerm::Omega(Box::new(self))
    }

    /// The term `t t ... t` (`n ≥ 1` copies, left-nested).
    pub fn power(&self, n: u64) -> Self {
        assert!(n >= 1);
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.concat(self.clone());
        }
        acc
    }

    /// A plain word as a left-nested product of letters.
    pub fn from_word(w: &str) -> Option<Self> {
        let mut chars = w.chars();
        let mut acc = OmegaTerm::Letter(chars.next()?);
        for c in chars {
            acc = acc.concat(OmegaTerm::Letter(c));
        }
        Some(acc)
    }

    /// Number of nodes of the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            OmegaTerm::Letter(_) => 1,
            OmegaTerm::Concat(s, t) => s.size() + t.size() + 1,
            OmegaTerm::Omega(s) => s.size() + 1,
        }
    }

    /// The symbols of the term, left to right, with repetitions.
    pub fn symbols(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<char>) {
        match self {
            OmegaTerm::Letter(c) => out.push(*c),
            OmegaTerm::Concat(s, t) => {
                s.collect_symbols(out);
                t.collect_symbols(out);
            }
            OmegaTerm::Omega(s) => s.collect_symbols(out),
        }
    }

    /// First symbol of the term.
    pub fn first_symbol(&self) -> char {
        match self {
            OmegaTerm::Letter(c) => *c,
            OmegaTerm::Concat(s, _) | OmegaTerm::Omega(s) => s.first_symbol(),
        }
    }

    /// Checks that every symbol belongs to `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for c in self.symbols() {
            alphabet.letter(c)?;
        }
        Ok(())
    }

    fn renders_with_power_last(&self) -> bool {
        match self {
            OmegaTerm::Letter(_) => false,
            OmegaTerm::Omega(_) => true,
            OmegaTerm::Concat(_, t) => matches!(**t, OmegaTerm::Omega(_)),
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Letter(c) => write!(f, "{c}"),
            OmegaTerm::Concat(s, t) => {
                write!(f, "{s}")?;
                if s.renders_with_power_last() {
                    f.write_str(" ")?;
                }
                if matches!(**t, OmegaTerm::Concat(..)) {
                    write!(f, "({t})")
                } else {
                    write!(f, "{t}")
                }
            }
            OmegaTerm::Omega(s) => match **s {
                OmegaTerm::Letter(_) | OmegaTerm::Omega(_) => write!(f, "{s}^w"),
                OmegaTerm::Concat(..) => write!(f, "({s})^w"),
            },
        }
    }
}

impl FromStr for OmegaTerm {
    type Err = Error;

    /// Parses a term over any ASCII alphanumeric symbols.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(t)
    }
}

/// Parses a term and checks its letters against `alphabet`.
pub fn parse_term(s: &str, alphabet: &Alphabet) -> Result<OmegaTerm> {
    let t: OmegaTerm = s.parse()?;
    t.check_alphabet(alphabet)?;
    Ok(t)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Error::Syntax {
            pos: self.pos,
            msg: format!("{msg}, found {found}"),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<OmegaTerm> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            // 'w' is a power marker only right after '^'
            if c == '(' || is_letter_symbol(c) {
                let next = self.factor()?;
                acc = acc.concat(next);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OmegaTerm> {
        let mut base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                t
            }
            Some(c) if is_letter_symbol(c) => {
                self.pos += 1;
                OmegaTerm::Letter(c)
            }
            _ => return Err(self.error("expected a letter or '('")),
        };
        loop {
            match self.peek() {
                Some('^') => {
                    self.pos += 1;
                    match self.peek() {
                        Some('w') | Some('ω') => self.pos += 1,
                        _ => return Err(self.error("expected 'w' after '^'")),
                    }
                    base = base.omega();
                }
                Some('ω') => {
                    self.pos += 1;
                    base = base.omega();
                }
                _ => return Ok(base),
            }
        }
    }
}

/// Letters occurring in `t`.
pub fn term_content(t: &OmegaTerm, alphabet: &Alphabet) -> Result<LetterSet> {
    t.symbols()
        .into_iter()
        .map(|c| alphabet.letter(c))
        .collect()
}

/// Cumulative content by structural recursion.
pub fn term_cumulative_content(t: &OmegaTerm, alphabet: &Alphabet) -> Result<LetterSet> {
    Ok(match t {
        OmegaTerm::Letter(c) => {
            alphabet.letter(*c)?;
            LetterSet::EMPTY
        }
        OmegaTerm::Concat(s, r) => {
            let left = term_cumulative_content(s, alphabet)?;
            let right = term_cumulative_content(r, alphabet)?;
            if term_content(r, alphabet)?.is_subset(left) {
                left
            } else {
                right
            }
        }
        OmegaTerm::Omega(s) => term_content(s, alphabet)?,
    })
}

/// Image of `t` in `L_A`, with the ω-power sending `(B, u)` to `(c(u), u)`.
pub fn term_la_pair(t: &OmegaTerm, alphabet: &Alphabet) -> Result<LaPair> {
    Ok(match t {
        OmegaTerm::Letter(c) => LaPair {
            cumulative: LetterSet::EMPTY,
            word: LrbWord::letter(alphabet.letter(*c)?),
        },
        OmegaTerm::Concat(s, r) => term_la_pair(s, alphabet)?.mul(&term_la_pair(r, alphabet)?),
        OmegaTerm::Omega(s) => {
            let word = term_la_pair(s, alphabet)?.word;
            LaPair {
                cumulative: word.content(),
                word,
            }
        }
    })
}

/// Whether `t` is idempotent over `R`: its cumulative content is its content.
pub fn term_is_r_idempotent(t: &OmegaTerm, alphabet: &Alphabet) -> Result<bool> {
    let p = term_la_pair(t, alphabet)?;
    Ok(p.cumulative == p.word.content())
}

fn eval(t: &OmegaTerm, graph: &Digraph, bracket: bool) -> Result<RTriple> {
    Ok(match t {
        OmegaTerm::Letter(c) => RTriple::generator(graph.alphabet().letter(*c)?, graph)?,
        OmegaTerm::Concat(s, r) => eval(s, graph, bracket)?.mul(&eval(r, graph, bracket)?),
        OmegaTerm::Omega(s) => {
            let x = eval(s, graph, bracket)?;
            if bracket {
                x.bracket_omega(graph)
            } else {
                x.natural_omega()
            }
        }
    })
}

/// `ν_[ω](t)`: evaluation with the bracket ω-power.
pub fn eval_nu_bracket(t: &OmegaTerm, graph: &Digraph) -> Result<RTriple> {
    eval(t, graph, true)
}

/// `ν_ω(t)`: evaluation with the natural ω-power.
pub fn eval_nu_natural(t: &OmegaTerm, graph: &Digraph) -> Result<RTriple> {
    eval(t, graph, false)
}

/// Length of `instantiate(t, m)`, saturating.
pub fn instantiated_len(t: &OmegaTerm, m: u64) -> u64 {
    match t {
        OmegaTerm::Letter(_) => 1,
        OmegaTerm::Concat(s, r) => instantiated_len(s, m).saturating_add(instantiated_len(r, m)),
        OmegaTerm::Omega(s) => instantiated_len(s, m).saturating_mul(m),
    }
}

/// The word obtained by replacing every ω-power by the `m`-th power.
pub fn instantiate(t: &OmegaTerm, m: u64) -> String {
    assert!(m >= 1);
    let mut out = String::new();
    push_instance(t, m, &mut out);
    out
}

fn push_instance(t: &OmegaTerm, m: u64, out: &mut String) {
    match t {
        OmegaTerm::Letter(c) => out.push(*c),
        OmegaTerm::Concat(s, r) => {
            push_instance(s, m, out);
            push_instance(r, m, out);
        }
        OmegaTerm::Omega(s) => {
            let start = out.len();
            push_instance(s, m, out);
            let end = out.len();
            for _ in 1..m {
                out.extend_from_within(start..end);
            }
        }
    }
}

/// `δ(instantiate(t, m))`, computed without materializing the word.
pub fn instantiate_relation(t: &OmegaTerm, m: u64, graph: &Digraph) -> Result<BinRel> {
    Ok(match t {
        OmegaTerm::Letter(c) => graph.delta(graph.alphabet().letter(*c)?).clone(),
        OmegaTerm::Concat(s, r) => {
            instantiate_relation(s, m, graph)?.then(&instantiate_relation(r, m, graph)?)
        }
        OmegaTerm::Omega(s) => instantiate_relation(s, m, graph)?.pow(m),
    })
}

/// Letters of `instantiate(t, m)` over `alphabet`.
pub fn instantiate_letters(t: &OmegaTerm, m: u64, alphabet: &Alphabet) -> Result<Vec<Letter>> {
    alphabet.word(&instantiate(t, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::parse_automaton;

    fn p(s: &str) -> OmegaTerm {
        s.parse().unwrap()
    }

    fn l(c: char) -> OmegaTerm {
        OmegaTerm::Letter(c)
    }

    fn abc() -> Alphabet {
        Alphabet::new("abc".chars()).unwrap()
    }

    fn set(s: &str) -> LetterSet {
        abc().word(s).unwrap().into_iter().collect()
    }

    fn a_plus() -> Digraph {
        parse_automaton("alphabet a b\nstates 2\ninitial 0\nfinal 1\n0 a 1\n1 a 1\n")
            .unwrap()
            .graph
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("(ab)^w a"), l('a').concat(l('b')).omega().concat(l('a')));
        assert_eq!(p("a^w^w"), l('a').omega().omega());
        assert_eq!(p("aω"), l('a').omega());
        assert_eq!(p("a^ω"), l('a').omega());
        assert_eq!(p(" a b c "), l('a').concat(l('b')).concat(l('c')));
        assert_eq!(p("a(bc)"), l('a').concat(l('b').concat(l('c'))));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "a)".parse::<OmegaTerm>(),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            "".parse::<OmegaTerm>(),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!("(ab".parse::<OmegaTerm>().is_err());
        assert!("a^".parse::<OmegaTerm>().is_err());
        assert!("^w".parse::<OmegaTerm>().is_err());
        assert_eq!(parse_term("ad", &abc()), Err(Error::UnknownLetter('d')));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "(ab)^w a",
            "a^w^w",
            "a(bc)",
            "((ab)^w c)^w",
            "a b^w c",
            "(a(bc)^w)^w b",
            "ab^w c",
        ] {
            let t = p(s);
            assert_eq!(p(&t.to_string()), t, "{s} printed as {t}");
        }
        assert_eq!(p("(ab)^w a").to_string(), "(ab)^w a");
        assert_eq!(p("a^w^w").to_string(), "a^w^w");
        assert_eq!(p("ab^wc").to_string(), "ab^w c");
    }

    #[test]
    fn sizes() {
        assert_eq!(p("a").size(), 1);
        assert_eq!(p("(ab)^w a").size(), 6);
    }

    #[test]
    fn content_examples() {
        let al = abc();
        assert_eq!(term_content(&p("(ab)^w a"), &al).unwrap(), set("ab"));
        assert_eq!(term_content(&p("a"), &al).unwrap(), set("a"));
        assert_eq!(
            term_cumulative_content(&p("a"), &al).unwrap(),
            LetterSet::EMPTY
        );
        assert_eq!(
            term_cumulative_content(&p("(ab)^w"), &al).unwrap(),
            set("ab")
        );
        assert_eq!(
            term_cumulative_content(&p("(ab)^w c"), &al).unwrap(),
            LetterSet::EMPTY
        );
        assert_eq!(
            term_cumulative_content(&p("c(ab)^w"), &al).unwrap(),
            set("ab")
        );
    }

    #[test]
    fn idempotency_examples() {
        let al = abc();
        assert!(term_is_r_idempotent(&p("(ab)^w"), &al).unwrap());
        assert!(!term_is_r_idempotent(&p("a"), &al).unwrap());
        assert!(term_is_r_idempotent(&p("(ab)^w a"), &al).unwrap());
        assert!(!term_is_r_idempotent(&p("(ab)^w c"), &al).unwrap());
    }

    #[test]
    fn instantiate_examples() {
        assert_eq!(instantiate(&p("(ab)^w"), 3), "ababab");
        assert_eq!(instantiate(&p("a^w^w"), 2), "aaaa");
        assert_eq!(instantiate(&p("a"), 7), "a");
        assert_eq!(instantiated_len(&p("(ab)^w c"), 5), 11);
    }

    #[test]
    fn evaluations_on_a_plus() {
        let g = a_plus();
        let a = RTriple::generator(Letter(0), &g).unwrap();
        assert_eq!(eval_nu_bracket(&p("a"), &g).unwrap(), a);
        assert_eq!(eval_nu_bracket(&p("a^w"), &g).unwrap(), a.bracket_omega(&g));
        let nat = eval_nu_natural(&p("a^w"), &g).unwrap();
        assert!(nat.cumulative().is_empty());
        assert_eq!(nat.xi(), g.delta(Letter(0)));
        assert_eq!(
            eval_nu_natural(&p("ab"), &g).unwrap(),
            eval_nu_bracket(&p("ab"), &g).unwrap()
        );
        assert_eq!(eval_nu_bracket(&p("c"), &g), Err(Error::UnknownLetter('c')));
        assert_eq!(
            instantiate_relation(&p("a^w b"), 4, &g).unwrap(),
            g.delta_str("aaaab").unwrap()
        );
    }
}
