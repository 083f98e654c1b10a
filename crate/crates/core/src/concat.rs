//! Digit-string concatenation `c1 ∘ c2` and the permutiples it preserves.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::cf::ContinuedFraction;
use crate::classify::{classify_relaxed, Witness};
use crate::continuant::BracketViews;
use crate::perm::Permutation;
use crate::{Error, Result};

/// Digits of `c1` followed by digits of `c2`. Canonical iff `c2` is.
pub fn concat(c1: &ContinuedFraction, c2: &ContinuedFraction) -> ContinuedFraction {
    let digits = concat_strings(c1.digits(), c2.digits());
    ContinuedFraction::new(digits).expect("both inputs are valid")
}

/// Concatenation on raw digit strings, where the empty string is allowed
/// and acts as the identity.
pub fn concat_strings(left: &[BigUint], right: &[BigUint]) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(left.len() + right.len());
    out.extend_from_slice(left);
    out.extend_from_slice(right);
    out
}

pub fn bracket_views(cf: &ContinuedFraction) -> BracketViews {
    BracketViews::of(cf.digits())
}

/// `<c1∘c2>` computed from the brackets of the parts:
/// `<c1><c2> + <c1_><_c2>`.
pub fn concatenated_continuant(left: &[BigUint], right: &[BigUint]) -> BigUint {
    let l = BracketViews::of(left);
    let r = BracketViews::of(right);
    l.full * r.full + l.drop_last * r.drop_first
}

fn same_k(a: &BigUint, b: &BigUint) -> Result<()> {
    if a != b {
        return Err(Error::MultiplierMismatch(a.to_string(), b.to_string()));
    }
    Ok(())
}

/// `r ∘ s = k (r' ∘ s')` for a Landess `r` and a continuant-preserving `s`
/// sharing the multiplier `k`. The block permutation acts as `sigma` on the
/// first digits and as the shifted `tau` on the rest. The result is
/// re-verified by exact evaluation.
pub fn concat_witness(w1: &Witness, w2: &Witness) -> Result<Witness> {
    if !w1.flags().landess {
        return Err(Error::MissingFlag("Landess"));
    }
    if !w2.flags().continuant_preserving {
        return Err(Error::MissingFlag("continuant-preserving"));
    }
    same_k(w1.k(), w2.k())?;
    let cf = concat(w1.cf(), w2.cf());
    let rho = w1.sigma().block_sum(w2.sigma());
    let w = classify_relaxed(&cf, &rho, w1.k()).map_err(|e| match e {
        Error::NotPermutiple => Error::VerificationFailed("r∘s = k (r'∘s')"),
        other => other,
    })?;
    if !w.flags().continuant_preserving {
        return Err(Error::VerificationFailed(
            "concatenation is continuant-preserving",
        ));
    }
    Ok(w)
}

/// `w_0 ∘ w_1 ∘ ... ∘ w_m` for a palindromic list of `k`-reverse multiples,
/// returned as a `k`-reverse multiple under the reversal permutation.
pub fn palindromic_concat(ws: &[Witness], k: &BigUint) -> Result<Witness> {
    if ws.is_empty() {
        return Err(Error::EmptyList);
    }
    let m = ws.len() - 1;
    if (0..=m).any(|j| ws[j].cf() != ws[m - j].cf()) {
        return Err(Error::NotPalindromic);
    }
    for w in ws {
        same_k(k, w.k())?;
        if !w.flags().reverse_multiple {
            return Err(Error::NotReverseMultiple);
        }
    }
    let digits = ws
        .iter()
        .fold(Vec::new(), |acc, w| concat_strings(&acc, w.cf().digits()));
    let cf = ContinuedFraction::new(digits)?;
    let w = classify_relaxed(&cf, &Permutation::reversal(cf.len()), k).map_err(|e| match e {
        Error::NotPermutiple => {
            Error::VerificationFailed("palindromic concatenation is a reverse multiple")
        }
        other => other,
    })?;
    Ok(w)
}
