//! Fixed-length bit vectors over `n` Boolean variables.
//!
//! An [`Assignment`] is the query alphabet of the whole crate: variable
//! `x_{i+1}` of the usual 1-indexed notation lives at bit index `i`.
//! Storage is word-packed so that comparisons and bulk edits cost
//! `O(n/64)` while single-bit access stays `O(1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

const WORD_BITS: usize = 64;

/// A total assignment to `n` Boolean variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

impl Assignment {
    /// The all-zeros assignment.
    pub fn zeros(n: usize) -> Self {
        Assignment {
            n,
            words: vec![0; word_count(n)],
        }
    }

    /// The all-ones assignment `1^n`.
    pub fn ones(n: usize) -> Self {
        let mut a = Assignment {
            n,
            words: vec![!0u64; word_count(n)],
        };
        a.mask_tail();
        a
    }

    /// Assignment that is 1 exactly on `indices`.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut a = Assignment::zeros(n);
        for i in indices {
            a.set(i, true);
        }
        a
    }

    /// Assignment over `n <= 64` variables taken from the low bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask supports at most 64 variables");
        let mut a = Assignment::zeros(n);
        if n > 0 {
            a.words[0] = mask & ones_mask(n);
        }
        a
    }

    fn mask_tail(&mut self) {
        let tail = self.n % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= ones_mask(tail);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "variable index {i} out of range (n = {})", self.n);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "variable index {i} out of range (n = {})", self.n);
        let w = &mut self.words[i / WORD_BITS];
        if value {
            *w |= 1 << (i % WORD_BITS);
        } else {
            *w &= !(1 << (i % WORD_BITS));
        }
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coordinatewise partial order: `a <= b` iff `a_i <= b_i` for all `i`.
    pub fn le(&self, other: &Assignment) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch in partial order");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Indices of the 1-bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// Backing words; bits at positions `>= n` are always zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

fn ones_mask(bits: usize) -> u64 {
    if bits >= 64 {
        !0
    } else {
        (1u64 << bits) - 1
    }
}

impl PartialOrd for Assignment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.n != other.n {
            return None;
        }
        match (self.le(other), other.le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut a = Assignment::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => a.set(i, true),
                other => {
                    return Err(Error::InvalidDocument(format!(
                        "invalid bit character {other:?} in assignment string"
                    )))
                }
            }
        }
        Ok(a)
    }
}
