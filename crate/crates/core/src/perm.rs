//! Permutations of digit positions, stored as image lists.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::{Error, Result};

/// A bijection on `{0, ..., n}`; `images[j]` is `sigma(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &i in &images {
            if i >= len || core::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation { len });
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            images: (0..len).collect(),
        }
    }

    pub fn reversal(len: usize) -> Self {
        Permutation {
            images: (0..len).rev().collect(),
        }
    }

    /// `j -> j + shift (mod len)`, the `shift`-th power of the full cycle.
    pub fn rotation(len: usize, shift: usize) -> Self {
        Permutation {
            images: (0..len).map(|j| (j + shift) % len).collect(),
        }
    }

    /// Swaps positions `2i` and `2i+1`; `len` must be even.
    pub fn adjacent_swaps(len: usize) -> Self {
        Permutation {
            images: (0..len).map(|j| j ^ 1).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j)
    }

    pub fn is_reversal(&self) -> bool {
        let n = self.images.len();
        self.images.iter().enumerate().all(|(j, &i)| i == n - 1 - j)
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i != j)
    }

    /// Cycles in order of their smallest element, each starting there and
    /// following `j -> sigma(j)`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1usize, |acc, c| acc.lcm(&c.len()))
    }

    /// `sigma^e` as a new permutation.
    pub fn pow(&self, e: usize) -> Permutation {
        let images = (0..self.images.len())
            .map(|j| (0..e).fold(j, |x, _| self.images[x]))
            .collect();
        Permutation { images }
    }

    /// Block sum: `self` on the first positions, `other` shifted after them.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let off = self.images.len();
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|&i| i + off))
            .collect();
        Permutation { images }
    }

    /// Rearranges `items` so that position `j` holds `items[sigma(j)]`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.images.len() {
            return Err(Error::LengthMismatch {
                expected: self.images.len(),
                found: items.len(),
            });
        }
        Ok(self.images.iter().map(|&i| items[i].clone()).collect())
    }
}

/// Steps `items` to the next lexicographic arrangement in place. Returns
/// `false` (leaving `items` sorted ascending) after the last one. Starting
/// from sorted input this visits every distinct arrangement once.
pub fn next_arrangement<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, i) in self.images.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated image list, e.g. `2,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .trim()
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<core::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse {
                what: "permutation",
                input: s.to_string(),
            })?;
        Permutation::new(images)
    }
}
