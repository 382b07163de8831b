//! The free left regular band: repetition-free words under
//! leftmost-occurrence reduction, and the band of pairs `(B, u)` with
//! `B ⊆ c(u)` that tracks cumulative content.

use std::fmt;

use smallvec::SmallVec;

use crate::letters::{Alphabet, Letter, LetterSet};

/// A repetition-free word, the canonical form of an element of the free
/// left regular band. The empty word is the adjoined identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LrbWord {
    letters: SmallVec<[Letter; 8]>,
}

impl LrbWord {
    pub fn empty() -> Self {
        LrbWord::default()
    }

    pub fn letter(a: Letter) -> Self {
        let mut letters = SmallVec::new();
        letters.push(a);
        LrbWord { letters }
    }

    /// Keeps the leftmost occurrence of each letter of `w`.
    pub fn reduce<I: IntoIterator<Item = Letter>>(w: I) -> Self {
        let mut seen = LetterSet::EMPTY;
        let mut letters = SmallVec::new();
        for a in w {
            if !seen.contains(a) {
                seen.insert(a);
                letters.push(a);
            }
        }
        LrbWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn content(&self) -> LetterSet {
        self.letters.iter().copied().collect()
    }

    pub fn position(&self, a: Letter) -> Option<usize> {
        self.letters.iter().position(|&b| b == a)
    }

    /// Product in the free left regular band.
    pub fn mul(&self, other: &LrbWord) -> LrbWord {
        let seen = self.content();
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied().filter(|&a| !seen.contains(a)));
        LrbWord { letters }
    }

    /// `i_B(v)`: the leftmost letter not in `b`, or `None` (the empty word)
    /// when every letter lies in `b`.
    pub fn first_outside(&self, b: LetterSet) -> Option<Letter> {
        self.letters.iter().copied().find(|&a| !b.contains(a))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayWord(self, alphabet)
    }
}

struct DisplayWord<'a>(&'a LrbWord, &'a Alphabet);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in self.0.letters() {
            write!(f, "{}", self.1.symbol(a))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LrbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.letters.iter().map(|a| a.0))
            .finish()
    }
}

/// An element `(B, u)` of the band `L_A`, with `B ⊆ c(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaPair {
    pub cumulative: LetterSet,
    pub word: LrbWord,
}

impl LaPair {
    pub fn new(cumulative: LetterSet, word: LrbWord) -> Option<Self> {
        cumulative
            .is_subset(word.content())
            .then_some(LaPair { cumulative, word })
    }

    /// `(B,u)(C,v) = (D, uv)` with `D = B` if `c(v) ⊆ B`, else `D = C`.
    pub fn mul(&self, other: &LaPair) -> LaPair {
        LaPair {
            cumulative: product_cumulative(self.cumulative, other),
            word: self.word.mul(&other.word),
        }
    }
}

pub(crate) fn product_cumulative(left: LetterSet, right: &LaPair) -> LetterSet {
    if right.word.content().is_subset(left) {
        left
    } else {
        right.cumulative
    }
}
