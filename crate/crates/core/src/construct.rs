//! Closed-form generators for the permutiple families: two-digit,
//! three-digit reverse multiples, and perfect permutiples (general,
//! reverse and cyclic).
//!
//! Every constructor returns a [`Witness`] that has been re-checked by exact
//! evaluation. Non-canonical outputs (last digit 1) are returned as they are;
//! `Witness::is_canonical` reports them.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::cf::ContinuedFraction;
use crate::classify::{classify_relaxed, Witness};
use crate::perm::Permutation;
use crate::{Error, Result};

fn two() -> BigUint {
    BigUint::from(2u32)
}

/// `[k s; s]` with the swap permutation. Requires `k >= 2`, `s >= 2`.
pub fn two_digit(k: &BigUint, s: &BigUint) -> Result<Witness> {
    if k < &two() {
        return Err(Error::MultiplierTooSmall);
    }
    if s < &two() {
        return Err(Error::ParameterTooSmall { min: 2 });
    }
    let cf = ContinuedFraction::new(alloc::vec![k * s, s.clone()])?;
    classify_relaxed(&cf, &Permutation::reversal(2), k)
}

/// Least positive residue of `x^{-1} mod m`, by the extended Euclidean
/// algorithm. `None` when `x` is not invertible.
pub fn mod_inverse(x: &BigUint, m: &BigUint) -> Option<BigUint> {
    let m = BigInt::from(m.clone());
    let e = BigInt::from(x.clone()).extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_biguint()
}

/// Intermediate quantities of the three-digit reverse-multiple method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDigitSteps {
    /// `a0^{-1} mod k`, in `(0, k)`.
    pub alpha: BigUint,
    pub a1: BigUint,
    /// `(a0 a1 + 1) / k`.
    pub q: BigUint,
    /// `a1^{-1} mod q`, in `(0, q)`.
    pub beta: BigUint,
    pub a2: BigUint,
}

pub fn three_digit_steps(k: &BigUint, a0: &BigUint) -> Result<ThreeDigitSteps> {
    if k < &two() {
        return Err(Error::MultiplierTooSmall);
    }
    if a0 <= k {
        return Err(Error::LeadingDigitTooSmall);
    }
    let alpha = mod_inverse(a0, k).ok_or(Error::NotCoprime)?;
    let a1 = k - &alpha;
    let (q, rem) = (a0 * &a1 + 1u32).div_rem(k);
    debug_assert!(rem.is_zero());
    let beta =
        mod_inverse(&a1, &q).ok_or(Error::VerificationFailed("a1 not invertible modulo q"))?;
    let a2 = &q - &beta;
    Ok(ThreeDigitSteps {
        alpha,
        a1,
        q,
        beta,
        a2,
    })
}

/// The three-digit `k`-reverse multiple with leading digit `a0` (requires
/// `a0 > k`, `gcd(a0, k) = 1`). `a1` is forced, and `a2 = q - beta` only
/// solves `a1 a2 + 1 = 0 (mod q)`; when `a1 a2 + 1 != q` no three-digit
/// reverse multiple starts with `a0` and the result is `None`.
pub fn three_digit_reverse(k: &BigUint, a0: &BigUint) -> Result<Option<Witness>> {
    let ThreeDigitSteps { a1, a2, q, .. } = three_digit_steps(k, a0)?;
    if &a1 * &a2 + 1u32 != q {
        return Ok(None);
    }
    if a0 * &a1 + 1u32 != k * (&a1 * &a2 + 1u32) {
        return Err(Error::VerificationFailed("a0 a1 + 1 = k (a1 a2 + 1)"));
    }
    let cf = ContinuedFraction::new(alloc::vec![a0.clone(), a1, a2])?;
    classify_relaxed(&cf, &Permutation::reversal(3), k).map(Some)
}

/// All outputs of [`three_digit_reverse`] for `k < a0 <= a0_max` coprime to
/// `k`, in increasing `a0`. Includes non-canonical outputs.
pub fn enumerate_three_digit_reverse(k: &BigUint, a0_max: &BigUint) -> Vec<Witness> {
    let mut out = Vec::new();
    if k < &two() {
        return out;
    }
    let mut a0 = k + 1u32;
    while &a0 <= a0_max {
        if a0.gcd(k).is_one() {
            out.extend(three_digit_reverse(k, &a0).expect("a0 > k and coprime"));
        }
        a0 += 1u32;
    }
    out
}

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum_{l < |sigma|} (-1)^{sigma^l(j)}` for position `j`.
pub fn orbit_parity_sum(sigma: &Permutation, j: usize) -> i64 {
    let order = sigma.order();
    let mut x = j;
    let mut total = 0;
    for _ in 0..order {
        total += sign(x);
        x = sigma.apply(x);
    }
    total
}

/// Whether `sigma` admits perfect permutiples: a derangement of even order
/// on an even number of symbols whose every cycle holds as many even as odd
/// positions.
pub fn validate_perfect_permutation(sigma: &Permutation) -> bool {
    let n1 = sigma.len();
    if n1 == 0
        || !n1.is_multiple_of(2)
        || !sigma.is_derangement()
        || !sigma.order().is_multiple_of(2)
    {
        return false;
    }
    let balanced = sigma
        .cycles()
        .iter()
        .all(|c| c.iter().map(|&j| sign(j)).sum::<i64>() == 0);
    let orbits = (0..n1).all(|j| orbit_parity_sum(sigma, j) == 0);
    debug_assert_eq!(balanced, orbits);
    balanced && orbits
}

/// Input to [`perfect_from_parameters`]: one free parameter per cycle of
/// `sigma`, cycles ordered by their smallest position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectParameters {
    pub sigma: Permutation,
    pub k: BigUint,
    pub orbit_params: Vec<BigUint>,
}

/// Solves the perfect relations `a_j = k a_{sigma(j)}` (even `j`) and
/// `a_{sigma(j)} = k a_j` (odd `j`).
///
/// Writing `a_j = k s_j` at even `j` and `a_j = s_j` at odd `j`, the relations
/// become `s_j = k^{((-1)^j + (-1)^{sigma(j)})/2} s_{sigma(j)}`. Around each
/// cycle the exponents are shifted so the smallest is 0, so the cycle's
/// parameter is the smallest `s` in that cycle.
pub fn perfect_from_parameters(params: &PerfectParameters) -> Result<Witness> {
    let PerfectParameters {
        sigma,
        k,
        orbit_params,
    } = params;
    if k < &two() {
        return Err(Error::MultiplierTooSmall);
    }
    if !validate_perfect_permutation(sigma) {
        return Err(Error::NotPerfectPermutation);
    }
    let cycles = sigma.cycles();
    if cycles.len() != orbit_params.len() {
        return Err(Error::ParameterCount {
            expected: cycles.len(),
            found: orbit_params.len(),
        });
    }
    if orbit_params.iter().any(Zero::is_zero) {
        return Err(Error::ParameterTooSmall { min: 1 });
    }
    let mut s = alloc::vec![BigUint::zero(); sigma.len()];
    for (cycle, param) in cycles.iter().zip(orbit_params) {
        // exponent of k in s_j relative to the cycle start
        let mut exps = Vec::with_capacity(cycle.len());
        let mut e: i64 = 0;
        for &j in cycle {
            exps.push(e);
            e -= (sign(j) + sign(sigma.apply(j))) / 2;
        }
        debug_assert_eq!(e, 0, "balanced cycles close up");
        let min = *exps.iter().min().expect("cycles are nonempty");
        for (&j, &ej) in cycle.iter().zip(&exps) {
            s[j] = param * Pow::pow(k, (ej - min) as u64);
        }
    }
    let digits = s
        .into_iter()
        .enumerate()
        .map(|(j, sj)| if j % 2 == 0 { k * sj } else { sj })
        .collect();
    let cf = ContinuedFraction::new(digits)?;
    let w = classify_relaxed(&cf, sigma, k)?;
    if !w.flags().perfect {
        return Err(Error::VerificationFailed(
            "constructed digits are not perfect",
        ));
    }
    Ok(w)
}

/// Perfect `k`-reverse multiples `[k s_0; s_1, k s_2, ..., k s_1, s_0]` on
/// `2 * half_params.len()` digits, with `s_j = s_{n-j}`.
pub fn perfect_reverse(k: &BigUint, half_params: &[BigUint]) -> Result<Witness> {
    if half_params.is_empty() {
        return Err(Error::ParameterCount {
            expected: 1,
            found: 0,
        });
    }
    perfect_from_parameters(&PerfectParameters {
        sigma: Permutation::reversal(2 * half_params.len()),
        k: k.clone(),
        orbit_params: half_params.to_vec(),
    })
}

/// Perfect cyclic permutiples for `sigma = psi^ell`, `psi = (0 1 ... n)`.
/// `ell` must be odd; even shifts admit no perfect permutiples. One
/// parameter per orbit, `gcd(ell, len)` in all.
pub fn perfect_cyclic(k: &BigUint, len: usize, ell: usize, params: &[BigUint]) -> Result<Witness> {
    if ell == 0 || ell >= len || ell.is_multiple_of(2) || !len.is_multiple_of(2) {
        return Err(Error::InvalidShift);
    }
    perfect_from_parameters(&PerfectParameters {
        sigma: Permutation::rotation(len, ell),
        k: k.clone(),
        orbit_params: params.to_vec(),
    })
}
