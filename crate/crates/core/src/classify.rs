//! Permutiple detection and the classification lattice.
//!
//! Given digits `a = (a_0, ..., a_n)` and a permutation `sigma`, write
//! `b_j = a_{sigma(j)}` for the permuted string. Every predicate here
//! depends on `sigma` only through `b`, so callers that already hold the
//! permuted string can use the `*_strings` variants directly.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::cf::ContinuedFraction;
use crate::continuant::continuant;
use crate::perm::{next_arrangement, Permutation};
use crate::{Error, Rational, Result};

/// Which properties a `(sigma, k)`-permutiple has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassificationFlags {
    pub is_permutiple: bool,
    pub continuant_preserving: bool,
    pub perfect: bool,
    pub symmetric: bool,
    pub landess: bool,
    pub reverse_multiple: bool,
}

impl ClassificationFlags {
    /// Implications the flags must respect: perfect implies symmetric and
    /// Landess, Landess implies continuant-preserving.
    pub fn satisfies_lattice(&self) -> bool {
        (!self.perfect || self.symmetric)
            && (!self.perfect || self.landess)
            && (!self.landess || self.continuant_preserving)
            && (!self.perfect || self.continuant_preserving)
    }
}

/// A verified `(sigma, k)`-permutiple together with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    cf: ContinuedFraction,
    sigma: Permutation,
    k: BigUint,
    value: Rational,
    permuted_value: Rational,
    flags: ClassificationFlags,
}

impl Witness {
    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn k(&self) -> &BigUint {
        &self.k
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn permuted_value(&self) -> &Rational {
        &self.permuted_value
    }

    pub fn flags(&self) -> &ClassificationFlags {
        &self.flags
    }

    pub fn is_canonical(&self) -> bool {
        self.cf.is_canonical()
    }

    pub fn len(&self) -> usize {
        self.cf.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The permuted digit string `r'`, evaluated as written.
    pub fn permuted(&self) -> ContinuedFraction {
        permute_digits(&self.cf, &self.sigma).expect("witness lengths agree")
    }

    /// Re-evaluates both sides from the digits and checks `r == k * r'`.
    pub fn verify(&self) -> bool {
        let r = self.cf.evaluate();
        let rp = self.permuted().evaluate();
        r == self.value && rp == self.permuted_value && r == rp.scale(&BigInt::from(self.k.clone()))
    }
}

fn check_len(cf: &ContinuedFraction, sigma: &Permutation) -> Result<()> {
    if cf.len() != sigma.len() {
        return Err(Error::LengthMismatch {
            expected: cf.len(),
            found: sigma.len(),
        });
    }
    Ok(())
}

/// `[a_{sigma(0)}; a_{sigma(1)}, ..., a_{sigma(n)}]`, possibly non-canonical.
pub fn permute_digits(cf: &ContinuedFraction, sigma: &Permutation) -> Result<ContinuedFraction> {
    let digits = sigma.permute(cf.digits())?;
    ContinuedFraction::new(digits)
}

/// Exact multiplier `k = (p q') / (q p')` when it is an integer `>= 2`.
pub fn multiplier_of_strings(a: &[BigUint], b: &[BigUint]) -> Option<BigUint> {
    let p = continuant(a);
    let q = continuant(&a[1..]);
    let pp = continuant(b);
    let qp = continuant(&b[1..]);
    let (k, rem) = (p * qp).div_rem(&(q * pp));
    (rem.is_zero() && k >= BigUint::from(2u32)).then_some(k)
}

/// The multiplier `k >= 2` with `r = k r'`, or `None` when there is none
/// (including the `k = 1` case).
pub fn permutiple_multiplier(
    cf: &ContinuedFraction,
    sigma: &Permutation,
) -> Result<Option<BigUint>> {
    let b = sigma.permute(cf.digits())?;
    Ok(multiplier_of_strings(cf.digits(), &b))
}

pub fn continuant_preserving_strings(a: &[BigUint], b: &[BigUint]) -> bool {
    continuant(a) == continuant(b)
}

pub fn is_continuant_preserving(cf: &ContinuedFraction, sigma: &Permutation) -> Result<bool> {
    let b = sigma.permute(cf.digits())?;
    Ok(continuant_preserving_strings(cf.digits(), &b))
}

/// `a_j = k b_j` at even `j` and `b_j = k a_j` at odd `j`.
pub fn perfect_strings(a: &[BigUint], b: &[BigUint], k: &BigUint) -> bool {
    a.iter().zip(b).enumerate().all(
        |(j, (x, y))| {
            if j % 2 == 0 {
                *x == k * y
            } else {
                *y == k * x
            }
        },
    )
}

pub fn is_perfect(cf: &ContinuedFraction, sigma: &Permutation, k: &BigUint) -> Result<bool> {
    let b = sigma.permute(cf.digits())?;
    Ok(perfect_strings(cf.digits(), &b, k))
}

/// `a_j a_{n-j} = b_j b_{n-j}` for every `j`.
pub fn symmetric_strings(a: &[BigUint], b: &[BigUint]) -> bool {
    let n = a.len() - 1;
    (0..=n / 2).all(|j| &a[j] * &a[n - j] == &b[j] * &b[n - j])
}

pub fn is_symmetric(cf: &ContinuedFraction, sigma: &Permutation) -> Result<bool> {
    let b = sigma.permute(cf.digits())?;
    Ok(symmetric_strings(cf.digits(), &b))
}

/// Continuant-preserving with `p_{n-1} = k p'_{n-1}` and `q_{n-1} = q'_{n-1}`.
pub fn landess_strings(a: &[BigUint], b: &[BigUint], k: &BigUint) -> bool {
    let n = a.len() - 1;
    if n == 0 {
        return false;
    }
    continuant_preserving_strings(a, b)
        && continuant(&a[..n]) == k * continuant(&b[..n])
        && continuant(&a[1..n]) == continuant(&b[1..n])
}

pub fn is_landess(cf: &ContinuedFraction, sigma: &Permutation, k: &BigUint) -> Result<bool> {
    let b = sigma.permute(cf.digits())?;
    Ok(landess_strings(cf.digits(), &b, k))
}

/// Value-level test `r == k * reverse(r)`, independent of any `sigma`.
pub fn is_reverse_multiple(cf: &ContinuedFraction, k: &BigUint) -> bool {
    cf.evaluate() == cf.reversed().evaluate().scale(&BigInt::from(k.clone()))
}

fn flags_for(cf: &ContinuedFraction, b: &[BigUint], k: &BigUint) -> ClassificationFlags {
    let a = cf.digits();
    ClassificationFlags {
        is_permutiple: true,
        continuant_preserving: continuant_preserving_strings(a, b),
        perfect: perfect_strings(a, b, k),
        symmetric: symmetric_strings(a, b),
        landess: landess_strings(a, b, k),
        reverse_multiple: is_reverse_multiple(cf, k),
    }
}

fn build_witness(
    cf: &ContinuedFraction,
    sigma: &Permutation,
    k: &BigUint,
    relaxed: bool,
) -> Result<Witness> {
    check_len(cf, sigma)?;
    if !relaxed && !cf.is_canonical() {
        return Err(Error::NonCanonical);
    }
    let b = sigma.permute(cf.digits())?;
    match multiplier_of_strings(cf.digits(), &b) {
        Some(found) if &found == k => {}
        _ => return Err(Error::NotPermutiple),
    }
    let flags = flags_for(cf, &b, k);
    Ok(Witness {
        value: cf.evaluate(),
        permuted_value: ContinuedFraction::new(b)?.evaluate(),
        cf: cf.clone(),
        sigma: sigma.clone(),
        k: k.clone(),
        flags,
    })
}

/// Builds a classified witness for a canonical base; fails with
/// [`Error::NotPermutiple`] unless `r = k r'` holds exactly.
pub fn classify(cf: &ContinuedFraction, sigma: &Permutation, k: &BigUint) -> Result<Witness> {
    build_witness(cf, sigma, k, false)
}

/// Like [`classify`] but admits a non-canonical base.
pub fn classify_relaxed(
    cf: &ContinuedFraction,
    sigma: &Permutation,
    k: &BigUint,
) -> Result<Witness> {
    build_witness(cf, sigma, k, true)
}

/// Lexicographically smallest `sigma` with `a_{sigma(j)} = b_j`, or `None`
/// when `b` is not a rearrangement of `a`.
pub fn representative_sigma<T: Eq>(a: &[T], b: &[T]) -> Option<Permutation> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = alloc::vec![false; a.len()];
    let mut images = Vec::with_capacity(a.len());
    for y in b {
        let i = (0..a.len()).find(|&i| !used[i] && a[i] == *y)?;
        used[i] = true;
        images.push(i);
    }
    Some(Permutation::new(images).expect("greedy matching is a bijection"))
}

/// Every `sigma` realizing the permuted string `b` from `a`, in
/// lexicographic order of image lists.
pub fn sigmas_realizing(a: &ContinuedFraction, b: &ContinuedFraction) -> Vec<Permutation> {
    fn extend(
        a: &[BigUint],
        b: &[BigUint],
        used: &mut [bool],
        acc: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        let j = acc.len();
        if j == b.len() {
            out.push(Permutation::new(acc.clone()).expect("built as a bijection"));
            return;
        }
        for i in 0..a.len() {
            if !used[i] && a[i] == b[j] {
                used[i] = true;
                acc.push(i);
                extend(a, b, used, acc, out);
                acc.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        let mut used = alloc::vec![false; a.len()];
        extend(a.digits(), b.digits(), &mut used, &mut Vec::new(), &mut out);
    }
    out
}

fn witnesses_impl(cf: &ContinuedFraction, relaxed: bool) -> Result<Vec<Witness>> {
    if !relaxed && !cf.is_canonical() {
        return Err(Error::NonCanonical);
    }
    let a = cf.digits();
    let mut arrangement: Vec<BigUint> = a.to_vec();
    arrangement.sort();
    let mut out = Vec::new();
    loop {
        if let Some(k) = multiplier_of_strings(a, &arrangement) {
            let sigma =
                representative_sigma(a, &arrangement).expect("arrangement of the same digits");
            out.push(build_witness(cf, &sigma, &k, relaxed)?);
        }
        if !next_arrangement(&mut arrangement) {
            break;
        }
    }
    Ok(out)
}

/// Every `(sigma, k)` making `cf` a permutiple, one witness per distinct
/// permuted digit string (ordered lexicographically by that string), each
/// carrying the lexicographically smallest realizing `sigma`.
pub fn find_witnesses(cf: &ContinuedFraction) -> Result<Vec<Witness>> {
    witnesses_impl(cf, false)
}

pub fn find_witnesses_relaxed(cf: &ContinuedFraction) -> Result<Vec<Witness>> {
    witnesses_impl(cf, true)
}

/// Checks the three equivalent forms of continuant preservation for a
/// witness: `p_n = p'_n`, `q'_n = k q_n`, and the tail products
/// `gamma_0...gamma_{n-1} = k gamma'_0...gamma'_{n-1}`. Returns the three
/// truth values in that order.
pub fn continuant_preservation_routes(w: &Witness) -> [bool; 3] {
    let a = w.cf.digits();
    let b = w.permuted();
    let k = BigInt::from(w.k.clone());
    let by_numerators = continuant(a) == continuant(b.digits());
    let by_denominators = continuant(&b.digits()[1..]) == &w.k * continuant(&a[1..]);
    let by_tails = w.cf.tails().product() == b.tails().product().scale(&k);
    [by_numerators, by_denominators, by_tails]
}

/// Alternating tail-ratio pattern: `gamma_j = k gamma'_j` at even `j` and
/// `gamma'_j = k gamma_j` at odd `j`.
pub fn tail_ratio_pattern(w: &Witness) -> bool {
    let k = BigInt::from(w.k.clone());
    let t = w.cf.tails();
    let tp = w.permuted().tails();
    t.tails()
        .iter()
        .zip(tp.tails())
        .enumerate()
        .all(|(j, (g, gp))| {
            if j % 2 == 0 {
                *g == gp.scale(&k)
            } else {
                *gp == g.scale(&k)
            }
        })
}

/// `p_n < 2 p'_n` for the witness.
pub fn numerator_ratio_below_two(w: &Witness) -> bool {
    let p = continuant(w.cf.digits());
    let pp = continuant(w.permuted().digits());
    p < pp * 2u32
}

/// `true` when `sigma` maps the digit string to itself, which would force
/// `k = 1`.
pub fn is_fixed_by_sigma(w: &Witness) -> bool {
    w.permuted() == w.cf
}
