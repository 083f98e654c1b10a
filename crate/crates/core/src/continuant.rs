//! Continuant polynomials and the convergents they produce.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `K_m(x_0, ..., x_{m-1})` via `K_m = x_{m-1} K_{m-1} + K_{m-2}`,
/// `K_0 = 1`, `K_{-1} = 0`.
pub fn continuant(xs: &[BigUint]) -> BigUint {
    let mut prev = BigUint::zero();
    let mut cur = BigUint::one();
    for x in xs {
        let next = x * &cur + &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// Convergent numerators and denominators `(p_j, q_j)` for `j = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentList {
    pairs: Vec<(BigUint, BigUint)>,
}

impl ConvergentList {
    pub fn pairs(&self) -> &[(BigUint, BigUint)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn last(&self) -> &(BigUint, BigUint) {
        self.pairs
            .last()
            .expect("a continued fraction has at least one digit")
    }
}

/// Convergents of a digit string. Seeds are `p_{-1}=1, p_{-2}=0,
/// q_{-1}=0, q_{-2}=1`.
pub fn convergents_of(digits: &[BigUint]) -> ConvergentList {
    let (mut p2, mut p1) = (BigUint::zero(), BigUint::one());
    let (mut q2, mut q1) = (BigUint::one(), BigUint::zero());
    let mut pairs = Vec::with_capacity(digits.len());
    for a in digits {
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        p2 = core::mem::replace(&mut p1, p.clone());
        q2 = core::mem::replace(&mut q1, q.clone());
        pairs.push((p, q));
    }
    ConvergentList { pairs }
}

/// The four bracket continuants of a digit string `r = a_0 ... a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketViews {
    /// `<r> = K(a_0..a_n)`
    pub full: BigUint,
    /// `<_r> = K(a_1..a_n)`
    pub drop_first: BigUint,
    /// `<r_> = K(a_0..a_{n-1})`
    pub drop_last: BigUint,
    /// `<_r_> = K(a_1..a_{n-1})`, zero for a single digit.
    pub drop_both: BigUint,
}

impl BracketViews {
    /// The empty string gives `<>=1`, `<_>=0`, `<_>=0`; this makes it the
    /// identity for the concatenation identity.
    pub fn of(digits: &[BigUint]) -> Self {
        match digits.len() {
            0 => BracketViews {
                full: BigUint::one(),
                drop_first: BigUint::zero(),
                drop_last: BigUint::zero(),
                drop_both: BigUint::zero(),
            },
            1 => BracketViews {
                full: digits[0].clone(),
                drop_first: BigUint::one(),
                drop_last: BigUint::one(),
                drop_both: BigUint::zero(),
            },
            n => BracketViews {
                full: continuant(digits),
                drop_first: continuant(&digits[1..]),
                drop_last: continuant(&digits[..n - 1]),
                drop_both: continuant(&digits[1..n - 1]),
            },
        }
    }
}
