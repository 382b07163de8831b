//! Letters, letter sets and alphabets.
//!
//! Letters are small indices into an [`Alphabet`]. The adjoined identity
//! `1` of `A¹` is represented as `None` wherever an `Option<Letter>` is used.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of letters in an alphabet.
pub const MAX_LETTERS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u8);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of the alphabet as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn singleton(a: Letter) -> Self {
        LetterSet(1 << a.0)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            LetterSet(u64::MAX)
        } else {
            LetterSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, a: Letter) -> bool {
        self.0 >> a.0 & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1 << a.0;
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        LetterSet(self.0 | other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..64u8).filter(move |&i| self.0 >> i & 1 == 1).map(Letter)
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

/// An ordered alphabet of single ASCII symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > MAX_LETTERS {
            return Err(Error::InvalidAlphabet(format!(
                "at most {MAX_LETTERS} letters are supported"
            )));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if !is_letter_symbol(c) {
                return Err(Error::InvalidAlphabet(format!(
                    "'{c}' is not an ASCII letter or digit"
                )));
            }
            if symbols[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("'{c}' is declared twice")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses an alphabet written as a string of symbols, e.g. `"ab"`.
    pub fn from_str_symbols(s: &str) -> Result<Self> {
        Alphabet::new(s.chars().filter(|c| !c.is_whitespace()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.symbols.len() as u8).map(Letter)
    }

    pub fn full_set(&self) -> LetterSet {
        LetterSet::full(self.len())
    }

    pub fn letter(&self, c: char) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .map(|i| Letter(i as u8))
            .ok_or(Error::UnknownLetter(c))
    }

    pub fn symbol(&self, a: Letter) -> char {
        self.symbols[a.index()]
    }

    pub fn word(&self, w: &str) -> Result<Vec<Letter>> {
        w.chars().map(|c| self.letter(c)).collect()
    }

    pub fn spell(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.symbol(a)).collect()
    }

    pub fn format_set(&self, s: LetterSet) -> String {
        let inner: String = s.iter().map(|a| self.symbol(a)).collect();
        format!("{{{inner}}}")
    }
}

pub(crate) fn is_letter_symbol(c: char) -> bool {
    c.is_ascii_alphanumeric()
}
