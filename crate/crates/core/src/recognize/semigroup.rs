//! Finite semigroups given by a multiplication table and a letter map,
//! the `.sgp` text format, and the automaton recognizing `φ⁻¹(s)`.
//!
//! ```text
//! elements x y
//! letters a:x b:y
//! table
//! x: x y
//! y: x y
//! ```
//!
//! Row `s: p1 .. pn` lists `s·e_j` in the order of the `elements` line.

use std::fmt::Write as _;

use crate::automaton::{Automaton, Digraph};
use crate::error::{Error, Result};
use crate::letters::{is_letter_symbol, Alphabet, Letter};
use crate::relation::{BinRel, MAX_STATES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    // table[s][t] = s·t
    table: Vec<Vec<usize>>,
    alphabet: Alphabet,
    letter_map: Vec<usize>,
}

impl FiniteSemigroup {
    /// Validates sizes and associativity.
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        alphabet: Alphabet,
        letter_map: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid(
                "a semigroup needs at least one element".into(),
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::Invalid(format!(
                    "element '{name}' is declared twice"
                )));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("the table must be {n}×{n}")));
        }
        if let Some(&e) = table.iter().flatten().find(|&&e| e >= n) {
            return Err(Error::ElementOutOfRange(e));
        }
        if letter_map.len() != alphabet.len() {
            return Err(Error::Invalid("every letter needs an image".into()));
        }
        if let Some(&e) = letter_map.iter().find(|&&e| e >= n) {
            return Err(Error::ElementOutOfRange(e));
        }
        let s = FiniteSemigroup {
            names,
            table,
            alphabet,
            letter_map,
        };
        if let Some((x, y, z)) = s.associativity_violation() {
            return Err(Error::NotAssociative(
                s.names[x].clone(),
                s.names[y].clone(),
                s.names[z].clone(),
            ));
        }
        Ok(s)
    }

    /// Elements named `s0, s1, ..`.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        alphabet: Alphabet,
        letter_map: Vec<usize>,
    ) -> Result<Self> {
        let names = (0..table.len()).map(|i| format!("s{i}")).collect();
        FiniteSemigroup::new(names, table, alphabet, letter_map)
    }

    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                let xy = self.table[x][y];
                for z in 0..n {
                    if self.table[xy][z] != self.table[x][self.table[y][z]] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// `φ(a)`.
    pub fn image(&self, a: Letter) -> usize {
        self.letter_map[a.index()]
    }

    /// `φ(w)` for a nonempty word.
    pub fn eval_word(&self, w: &[Letter]) -> Option<usize> {
        let (&first, rest) = w.split_first()?;
        Some(
            rest.iter()
                .fold(self.image(first), |s, &a| self.mul(s, self.image(a))),
        )
    }

    /// Whether distinct elements generate distinct principal right ideals.
    pub fn is_r_trivial(&self) -> bool {
        let n = self.size();
        let ideals: Vec<Vec<bool>> = (0..n)
            .map(|s| {
                let mut ideal = vec![false; n];
                ideal[s] = true;
                for t in 0..n {
                    ideal[self.mul(s, t)] = true;
                }
                ideal
            })
            .collect();
        (0..n).all(|s| (0..s).all(|t| ideals[s] != ideals[t]))
    }

    pub fn to_sgp_string(&self) -> String {
        let mut out = format!("elements {}\nletters", self.names.join(" "));
        for a in self.alphabet.letters() {
            write!(
                out,
                " {}:{}",
                self.alphabet.symbol(a),
                self.names[self.image(a)]
            )
            .unwrap();
        }
        out.push_str("\ntable\n");
        for (s, row) in self.table.iter().enumerate() {
            let cells: Vec<&str> = row.iter().map(|&t| self.names[t].as_str()).collect();
            writeln!(out, "{}: {}", self.names[s], cells.join(" ")).unwrap();
        }
        out
    }
}

/// Parses the `.sgp` format. Blank lines and `#` comments are ignored.
pub fn parse_sgp(text: &str) -> Result<FiniteSemigroup> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut names: Option<Vec<String>> = None;
    let mut letters: Option<(usize, Vec<(char, String)>)> = None;
    let mut rows: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut in_table = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        if in_table {
            let Some((name, rest)) = line.split_once(':') else {
                return Err(perr(
                    lineno,
                    "expected a table row 'element: products'".into(),
                ));
            };
            rows.push((
                lineno,
                name.trim().to_string(),
                rest.split_whitespace().map(str::to_string).collect(),
            ));
            continue;
        }
        match head {
            "elements" => {
                if names.is_some() {
                    return Err(perr(lineno, "duplicate 'elements' line".into()));
                }
                let list: Vec<String> = words.map(str::to_string).collect();
                if list.is_empty() {
                    return Err(perr(lineno, "no elements declared".into()));
                }
                names = Some(list);
            }
            "letters" => {
                if letters.is_some() {
                    return Err(perr(lineno, "duplicate 'letters' line".into()));
                }
                let mut list = Vec::new();
                for w in words {
                    let Some((l, e)) = w.split_once(':') else {
                        return Err(perr(
                            lineno,
                            format!("expected 'letter:element', found '{w}'"),
                        ));
                    };
                    let mut cs = l.chars();
                    let (Some(c), None) = (cs.next(), cs.next()) else {
                        return Err(perr(lineno, format!("'{l}' is not a single-symbol letter")));
                    };
                    if !is_letter_symbol(c) {
                        return Err(perr(lineno, format!("'{l}' is not a valid letter")));
                    }
                    list.push((c, e.to_string()));
                }
                letters = Some((lineno, list));
            }
            "table" => {
                if words.next().is_some() {
                    return Err(perr(lineno, "unexpected text after 'table'".into()));
                }
                in_table = true;
            }
            other => return Err(perr(lineno, format!("unknown directive '{other}'"))),
        }
    }

    let names = names.ok_or_else(|| perr(0, "missing 'elements' line".into()))?;
    let (letters_line, letters) =
        letters.ok_or_else(|| perr(0, "missing 'letters' line".into()))?;
    if !in_table {
        return Err(perr(0, "missing 'table' section".into()));
    }
    let lookup = |line: usize, name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| perr(line, format!("unknown element '{name}'")))
    };
    let alphabet = Alphabet::new(letters.iter().map(|(c, _)| *c))
        .map_err(|e| perr(letters_line, e.to_string()))?;
    let letter_map = letters
        .iter()
        .map(|(_, e)| lookup(letters_line, e))
        .collect::<Result<Vec<_>>>()?;

    let n = names.len();
    let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, name, cells) in rows {
        let s = lookup(line, &name)?;
        if table[s].is_some() {
            return Err(perr(line, format!("row for '{name}' given twice")));
        }
        if cells.len() != n {
            return Err(perr(
                line,
                format!("expected {n} entries, found {}", cells.len()),
            ));
        }
        table[s] = Some(
            cells
                .iter()
                .map(|c| lookup(line, c))
                .collect::<Result<_>>()?,
        );
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(s, row)| row.ok_or_else(|| perr(0, format!("missing row for '{}'", names[s]))))
        .collect::<Result<Vec<_>>>()?;
    FiniteSemigroup::new(names, table, alphabet, letter_map)
}

/// The right Cayley graph of `S¹` over the letters: states are the elements
/// of `S` followed by the unit, with edges `t -a-> t·φ(a)`.
pub fn cayley_digraph(s: &FiniteSemigroup) -> Result<Digraph> {
    let n = s.size();
    if n + 1 > MAX_STATES {
        return Err(Error::DimensionTooLarge(n + 1));
    }
    let unit = n;
    let delta = s
        .alphabet()
        .letters()
        .map(|a| {
            let img = s.image(a);
            let mut r = BinRel::empty(n + 1);
            for t in 0..n {
                r.insert(t, s.mul(t, img));
            }
            r.insert(unit, img);
            r
        })
        .collect();
    Digraph::new(s.alphabet().clone(), n + 1, delta)
}

/// State of the unit in [`cayley_digraph`].
pub fn cayley_unit(s: &FiniteSemigroup) -> usize {
    s.size()
}

/// Automaton accepting `{w ∈ A⁺ : φ(w) = target}`.
pub fn preimage_automaton(s: &FiniteSemigroup, target: usize) -> Result<Automaton> {
    if target >= s.size() {
        return Err(Error::ElementOutOfRange(target));
    }
    Automaton::new(cayley_digraph(s)?, &[cayley_unit(s)], &[target])
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEFT_ZERO: &str = "elements x y\nletters a:x b:y\ntable\nx: x x\ny: y y\n";
    const RIGHT_ZERO: &str = "elements x y\nletters a:x b:y\ntable\nx: x y\ny: x y\n";

    #[test]
    fn parse_and_print() {
        let s = parse_sgp(RIGHT_ZERO).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.mul(0, 1), 1);
        assert_eq!(s.mul(1, 0), 0);
        assert_eq!(parse_sgp(&s.to_sgp_string()).unwrap(), s);
        // xS¹ = yS¹ in a right-zero semigroup
        assert!(!s.is_r_trivial());
        assert!(parse_sgp(LEFT_ZERO).unwrap().is_r_trivial());
    }

    #[test]
    fn rejects_non_associative() {
        // x·x = y, everything else x
        let bad = "elements x y\nletters a:x\ntable\nx: y x\ny: x x\n";
        assert!(matches!(parse_sgp(bad), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn parse_errors_have_lines() {
        let e = parse_sgp("elements x\nletters a:z\ntable\nx: x\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                msg: "unknown element 'z'".into()
            }
        );
        let e = parse_sgp("elements x y\nletters a:x\ntable\nx: x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        assert!(parse_sgp("elements x\nletters a:x\n").is_err());
        assert_eq!(
            parse_sgp(LEFT_ZERO).unwrap().element("q"),
            Err(Error::UnknownElement("q".into()))
        );
    }

    #[test]
    fn left_zero_preimage_is_words_starting_with_a() {
        let s = parse_sgp(LEFT_ZERO).unwrap();
        let aut = preimage_automaton(&s, 0).unwrap();
        for (w, expected) in [
            ("a", true),
            ("ab", true),
            ("ba", false),
            ("b", false),
            ("", false),
        ] {
            assert_eq!(aut.accepts(w).unwrap(), expected, "{w}");
        }
        assert_eq!(
            preimage_automaton(&s, 2).unwrap_err(),
            Error::ElementOutOfRange(2)
        );
    }

    #[test]
    fn groups_are_not_r_trivial() {
        let z2 = "elements e g\nletters a:g\ntable\ne: e g\ng: g e\n";
        assert!(!parse_sgp(z2).unwrap().is_r_trivial());
    }
}
