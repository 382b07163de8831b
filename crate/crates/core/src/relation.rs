//! Binary relations on a finite state set, stored as boolean matrices.

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::letters::LetterSet;

/// Index of a vertex of a digraph.
pub type StateId = usize;

/// Largest supported state count.
pub const MAX_STATES: usize = 64;

/// A binary relation on `{0, .., dim-1}`, one `u64` bit row per state.
///
/// Bit `q` of row `p` is set iff `(p, q)` belongs to the relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinRel {
    dim: u8,
    rows: SmallVec<[u64; 8]>,
}

impl BinRel {
    fn check_dim(dim: usize) -> Result<()> {
        if dim == 0 || dim > MAX_STATES {
            return Err(Error::DimensionTooLarge(dim));
        }
        Ok(())
    }

    pub fn empty(dim: usize) -> Self {
        assert!(dim > 0 && dim <= MAX_STATES, "unsupported dimension {dim}");
        BinRel {
            dim: dim as u8,
            rows: SmallVec::from_elem(0, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut r = BinRel::empty(dim);
        for p in 0..dim {
            r.rows[p] = 1 << p;
        }
        r
    }

    pub fn full(dim: usize) -> Self {
        let mask = row_mask(dim);
        let mut r = BinRel::empty(dim);
        for row in r.rows.iter_mut() {
            *row = mask;
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (StateId, StateId)>>(
        dim: usize,
        pairs: I,
    ) -> Result<Self> {
        Self::check_dim(dim)?;
        let mut r = BinRel::empty(dim);
        for (p, q) in pairs {
            if p >= dim || q >= dim {
                return Err(Error::Invalid(format!("pair ({p}, {q}) outside 0..{dim}")));
            }
            r.insert(p, q);
        }
        Ok(r)
    }

    /// Builds a relation from raw bit rows; bits at or above `dim` are dropped.
    pub fn from_rows(rows: &[u64]) -> Self {
        let dim = rows.len();
        let mask = row_mask(dim);
        let mut r = BinRel::empty(dim);
        for (dst, &src) in r.rows.iter_mut().zip(rows) {
            *dst = src & mask;
        }
        r
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn row(&self, p: StateId) -> u64 {
        self.rows[p]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn contains(&self, p: StateId, q: StateId) -> bool {
        self.rows[p] >> q & 1 == 1
    }

    pub fn insert(&mut self, p: StateId, q: StateId) {
        self.rows[p] |= 1 << q;
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        (0..self.dim()).flat_map(move |p| {
            let row = self.rows[p];
            (0..self.dim())
                .filter(move |&q| row >> q & 1 == 1)
                .map(move |q| (p, q))
        })
    }

    fn same_dim(&self, other: &BinRel) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Relational product `self ∘ other`: first `self`, then `other`.
    pub fn compose(&self, other: &BinRel) -> Result<BinRel> {
        self.same_dim(other)?;
        Ok(self.then(other))
    }

    /// Unchecked [`compose`](Self::compose); dimensions must agree.
    #[inline]
    pub fn then(&self, other: &BinRel) -> BinRel {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = BinRel::empty(self.dim());
        for (dst, &row) in out.rows.iter_mut().zip(self.rows.iter()) {
            let mut bits = row;
            let mut acc = 0u64;
            while bits != 0 {
                let t = bits.trailing_zeros() as usize;
                acc |= other.rows[t];
                bits &= bits - 1;
            }
            *dst = acc;
        }
        out
    }

    pub fn union(&self, other: &BinRel) -> Result<BinRel> {
        self.same_dim(other)?;
        Ok(self.join(other))
    }

    #[inline]
    pub fn join(&self, other: &BinRel) -> BinRel {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (dst, &row) in out.rows.iter_mut().zip(other.rows.iter()) {
            *dst |= row;
        }
        out
    }

    pub fn is_subset(&self, other: &BinRel) -> Result<bool> {
        self.same_dim(other)?;
        Ok(self.le(other))
    }

    /// Unchecked [`is_subset`](Self::is_subset).
    #[inline]
    pub fn le(&self, other: &BinRel) -> bool {
        self.rows
            .iter()
            .zip(other.rows.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Whether the relation meets `from × to`, both given as state bitmasks.
    pub fn meets(&self, from: u64, to: u64) -> bool {
        (0..self.dim()).any(|p| from >> p & 1 == 1 && self.rows[p] & to != 0)
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    /// `self^n` for `n ≥ 0` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> BinRel {
        let mut result = BinRel::identity(self.dim());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.then(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.then(&base);
            }
        }
        result
    }

    /// Index and period of the cyclic subsemigroup generated by `self`:
    /// the least `i ≥ 1` and `p ≥ 1` with `self^i = self^(i+p)`.
    pub fn index_period(&self) -> (u64, u64) {
        let (i, p, _) = self.power_cycle();
        (i, p)
    }

    fn power_cycle(&self) -> (u64, u64, Vec<BinRel>) {
        let mut seen: HashMap<BinRel, u64> = HashMap::new();
        let mut powers = Vec::new();
        let mut cur = self.clone();
        let mut k = 1u64;
        loop {
            if let Some(&i) = seen.get(&cur) {
                return (i, k - i, powers);
            }
            seen.insert(cur.clone(), k);
            let next = cur.then(self);
            powers.push(cur);
            cur = next;
            k += 1;
        }
    }

    /// `self^(ω+k)`: the power `self^m` with `m ≥ max(index, 1)` and
    /// `m ≡ k (mod period)`. For `k = 0` this is the idempotent power.
    pub fn omega_plus(&self, k: i64) -> BinRel {
        let (index, period, powers) = self.power_cycle();
        let m = omega_exponent(index, period, k);
        powers[(m - 1) as usize].clone()
    }

    pub fn omega(&self) -> BinRel {
        self.omega_plus(0)
    }

    /// Reflexive-transitive closure (Warshall on bit rows).
    pub fn star(&self) -> BinRel {
        let n = self.dim();
        let mut out = self.join(&BinRel::identity(n));
        for k in 0..n {
            let rk = out.rows[k];
            for i in 0..n {
                if out.rows[i] >> k & 1 == 1 {
                    out.rows[i] |= rk;
                }
            }
        }
        out
    }
}

/// Smallest `m ≥ max(index, 1)` with `m ≡ k (mod period)`.
pub fn omega_exponent(index: u64, period: u64, k: i64) -> u64 {
    let base = index.max(1);
    let p = period as i64;
    let shift = (k - base as i64).rem_euclid(p) as u64;
    base + shift
}

fn row_mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// `ε(B)`: pairs `(p, q)` joined by a path labelled by a word over `B`,
/// including the empty path. `delta` is indexed by letter.
pub fn epsilon(letters: LetterSet, delta: &[BinRel], dim: usize) -> BinRel {
    let mut step = BinRel::empty(dim);
    for a in letters.iter() {
        if let Some(r) = delta.get(a.index()) {
            step = step.join(r);
        }
    }
    step.star()
}

impl fmt::Display for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, q)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({p},{q})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRel[{}]{}", self.dim, self)
    }
}
