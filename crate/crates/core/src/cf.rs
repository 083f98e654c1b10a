//! Finite simple continued fractions `[a0; a1, ..., an]` with positive digits.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::continuant::{continuant, convergents_of, ConvergentList};
use crate::{Error, Rational, Result};

/// A digit string of length at least one with every digit at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContinuedFraction {
    digits: Vec<BigUint>,
}

impl ContinuedFraction {
    pub fn new(digits: Vec<BigUint>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyFraction);
        }
        if let Some(index) = digits.iter().position(Zero::is_zero) {
            return Err(Error::ZeroDigit { index });
        }
        Ok(ContinuedFraction { digits })
    }

    pub fn from_u64s(digits: &[u64]) -> Result<Self> {
        Self::new(digits.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<BigUint> {
        self.digits
    }

    /// Number of digits, `n + 1`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Length-1 fractions are canonical whatever the digit; otherwise the
    /// last digit must be at least 2.
    pub fn is_canonical(&self) -> bool {
        self.digits.len() == 1 || !self.digits[self.digits.len() - 1].is_one()
    }

    pub fn reversed(&self) -> ContinuedFraction {
        let mut digits = self.digits.clone();
        digits.reverse();
        ContinuedFraction { digits }
    }

    /// Exact value `K(a0..an) / K(a1..an)`.
    pub fn evaluate(&self) -> Rational {
        let p = continuant(&self.digits);
        let q = continuant(&self.digits[1..]);
        Rational::new(BigInt::from(p), BigInt::from(q)).expect("continuant is positive")
    }

    pub fn convergents(&self) -> ConvergentList {
        convergents_of(&self.digits)
    }

    /// Tails `gamma_j = K(a_{j+2}..a_n) / K(a_{j+1}..a_n)` for `j < n`. For a
    /// canonical string this is the Gauss-map orbit of the fractional part;
    /// a trailing 1 gives a last tail of exactly 1, which the map never hits.
    pub fn tails(&self) -> TailList {
        let n = self.digits.len() - 1;
        let mut tails = Vec::with_capacity(n);
        let (mut num, mut den) = (BigUint::one(), self.digits[n].clone());
        for j in (0..n).rev() {
            tails.push(
                Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
                    .expect("continuant is positive"),
            );
            let next = &self.digits[j] * &den + &num;
            num = core::mem::replace(&mut den, next);
        }
        tails.reverse();
        TailList { tails }
    }

    /// Folds a trailing 1 into its predecessor.
    pub fn canonicalize(&self) -> ContinuedFraction {
        if self.is_canonical() {
            return self.clone();
        }
        let mut digits = self.digits.clone();
        digits.pop();
        *digits.last_mut().expect("length was at least 2") += 1u32;
        ContinuedFraction { digits }
    }

    /// Euclidean expansion of a rational value at least 1. The result is
    /// canonical.
    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r < &Rational::one() {
            return Err(Error::ValueBelowOne(r.to_string()));
        }
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        let mut digits = Vec::new();
        while !den.is_zero() {
            let (q, rem) = num.div_mod_floor(&den);
            digits.push(
                q.to_biguint()
                    .expect("quotients of positive values are nonnegative"),
            );
            num = core::mem::replace(&mut den, rem);
        }
        ContinuedFraction::new(digits)
    }
}

/// One application of the Gauss map `x -> 1/x - floor(1/x)`, with `G(0) = 0`.
pub fn gauss_step(x: &Rational) -> Result<Rational> {
    if x.numer().sign() == Sign::Minus || x >= &Rational::one() {
        return Err(Error::OutsideUnitInterval(x.to_string()));
    }
    if x.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(x.recip()?.fract())
}

/// Tails `gamma_j = [0; a_{j+1}, ..., a_n]` of a finite continued fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailList {
    tails: Vec<Rational>,
}

impl TailList {
    pub fn tails(&self) -> &[Rational] {
        &self.tails
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    /// `gamma_0 * ... * gamma_{n-1}`; the empty product is 1.
    pub fn product(&self) -> Rational {
        self.tails.iter().fold(Rational::one(), |acc, g| &acc * g)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits[0])?;
        for (i, d) in self.digits[1..].iter().enumerate() {
            let sep = if i == 0 { ';' } else { ',' };
            write!(f, "{sep}{d}")?;
        }
        Ok(())
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `a0;a1,a2,...`. Surrounding brackets and spaces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "continued fraction",
            input: s.to_string(),
        };
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (head, rest) = match body.split_once(';') {
            Some((h, r)) => (h, Some(r)),
            None => (body, None),
        };
        let mut digits = Vec::new();
        digits.push(head.trim().parse::<BigUint>().map_err(|_| bad())?);
        if let Some(rest) = rest {
            for part in rest.split(',') {
                digits.push(part.trim().parse::<BigUint>().map_err(|_| bad())?);
            }
        }
        ContinuedFraction::new(digits)
    }
}
