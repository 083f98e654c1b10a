//! Infinite permutiples: reduced quadratic surds `(a + √b)/c`, their
//! periodic expansions, and the non-periodic perfect streams
//! `[k s_0; s_0, k s_1, s_1, ...]` under the adjacent-swap permutation.
//!
//! Nothing here claims a proof about an infinite expansion. Probes look at a
//! finite window and say so in their verdicts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Pow, Signed, Zero};

use crate::cf::ContinuedFraction;
use crate::continuant::continuant;
use crate::{Error, Rational, Result};

/// `(a + √b) / c` with `b` a positive non-square and `c != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Sign of `x + y√d` for a positive non-square `d`.
fn sign_of(x: &BigInt, y: &BigInt, d: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    match (x.cmp(&zero), y.cmp(&zero)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (xs, ys) if xs != Ordering::Less && ys != Ordering::Less => Ordering::Greater,
        (xs, ys) if xs != Ordering::Greater && ys != Ordering::Greater => Ordering::Less,
        (Ordering::Greater, _) => (x * x).cmp(&(y * y * d)),
        _ => (y * y * d).cmp(&(x * x)),
    }
}

impl QuadraticSurd {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if !b.is_positive() || Roots::sqrt(&b).pow(2u32) == b {
            return Err(Error::InvalidRadicand);
        }
        if c.is_zero() {
            return Err(Error::ZeroSurdDenominator);
        }
        Ok(QuadraticSurd { a, b, c })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// `(b - a^2) / c` when it is an integer of at least 2.
    pub fn multiplier(&self) -> Option<BigInt> {
        let (k, rem) = (&self.b - &self.a * &self.a).div_rem(&self.c);
        (rem.is_zero() && k >= BigInt::from(2)).then_some(k)
    }

    /// Value greater than 1 and conjugate `(a - √b)/c` in `(-1, 0)`,
    /// decided with integer comparisons only.
    pub fn is_reduced(&self) -> bool {
        let s = BigInt::from(if self.c.is_negative() { -1 } else { 1 });
        let above_one = sign_of(&(&s * (&self.a - &self.c)), &s, &self.b) == Ordering::Greater;
        let conj_negative = sign_of(&(&s * &self.a), &-&s, &self.b) == Ordering::Less;
        let conj_above_minus_one =
            sign_of(&(&s * (&self.a + &self.c)), &-&s, &self.b) == Ordering::Greater;
        above_one && conj_negative && conj_above_minus_one
    }

    /// The surd divided by `k`: `(a + √b) / (c k)`.
    pub fn divided_by(&self, k: &BigInt) -> Result<QuadraticSurd> {
        QuadraticSurd::new(self.a.clone(), self.b.clone(), &self.c * k)
    }

    /// Continued fraction expansion split into preperiod and period, found by
    /// running the integer `(P, Q)` recurrence until a state repeats.
    pub fn periodic_expansion(&self, max_states: usize) -> Result<PeriodicExpansion> {
        let (mut p, mut q, d) = if (&self.b - &self.a * &self.a).is_multiple_of(&self.c) {
            (self.a.clone(), self.c.clone(), self.b.clone())
        } else {
            let abs_c = self.c.abs();
            (
                &self.a * &abs_c,
                &self.c * &abs_c,
                &self.b * &self.c * &self.c,
            )
        };
        let root = Roots::sqrt(&d);
        let mut seen: BTreeMap<(BigInt, BigInt), usize> = BTreeMap::new();
        let mut digits = Vec::new();
        loop {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = digits.split_off(start);
                return Ok(PeriodicExpansion {
                    preperiod: digits,
                    period,
                });
            }
            if seen.len() >= max_states {
                return Err(Error::StateLimit(max_states));
            }
            seen.insert((p.clone(), q.clone()), digits.len());
            let digit = if q.is_positive() {
                (&p + &root).div_floor(&q)
            } else {
                -((&p + &root).div_floor(&-&q) + BigInt::one())
            };
            let next_p = &digit * &q - &p;
            let next_q = (&d - &next_p * &next_p) / &q;
            digits.push(digit);
            p = next_p;
            q = next_q;
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+√{})/{}", self.a, self.b, self.c)
    }
}

/// An eventually periodic digit sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl PeriodicExpansion {
    pub fn digit(&self, j: usize) -> &BigInt {
        if j < self.preperiod.len() {
            &self.preperiod[j]
        } else {
            &self.period[(j - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<BigInt> {
        (0..len).map(|j| self.digit(j).clone()).collect()
    }

    /// Every digit value that ever occurs.
    pub fn digit_set(&self) -> BTreeSet<BigInt> {
        self.preperiod.iter().chain(&self.period).cloned().collect()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }
}

/// A position map `j -> sigma(j)` on the infinite digit sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alignment {
    /// `sigma(j) = j + (-1)^j`.
    PairSwap,
    /// Rotation by `shift` inside consecutive blocks of length `block`.
    BlockRotation { block: usize, shift: usize },
}

impl Alignment {
    pub fn apply(&self, j: usize) -> usize {
        match *self {
            Alignment::PairSwap => j ^ 1,
            Alignment::BlockRotation { block, shift } => {
                (j / block) * block + (j % block + shift) % block
            }
        }
    }
}

/// Outcome of a finite-window permutation probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// The alignment matches every position inside the window.
    Consistent(Alignment),
    /// The scaled expansion shows, at `position`, a digit the original
    /// expansion never produces (or a non-positive one).
    Inconsistent { position: usize },
    /// No digit obstruction and no candidate alignment inside the window.
    Undetermined,
}

/// Result of [`verify_surd_permutiple`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdProbe {
    pub k: BigInt,
    pub depth: usize,
    pub expansion: PeriodicExpansion,
    pub scaled_expansion: PeriodicExpansion,
    /// Whether the first `depth` digits of both expansions agree as multisets.
    pub window_multisets_agree: bool,
    pub verdict: ProbeVerdict,
}

fn multiset(xs: &[BigInt]) -> BTreeMap<&BigInt, usize> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Default bound on expansion states for probes.
pub const DEFAULT_MAX_STATES: usize = 100_000;

/// Expands `r` and `r/k` (with `k = (b - a^2)/c`) and looks for evidence
/// that the digits of `r/k` rearrange those of `r` within `depth` digits.
pub fn verify_surd_permutiple(s: &QuadraticSurd, depth: usize) -> Result<SurdProbe> {
    let k = s.multiplier().ok_or(Error::NoSurdMultiplier)?;
    let expansion = s.periodic_expansion(DEFAULT_MAX_STATES)?;
    let scaled_expansion = s.divided_by(&k)?.periodic_expansion(DEFAULT_MAX_STATES)?;

    let window = expansion.prefix(depth);
    let scaled_window = scaled_expansion.prefix(depth);
    let window_multisets_agree = multiset(&window) == multiset(&scaled_window);

    let available = expansion.digit_set();
    let obstruction = scaled_window
        .iter()
        .position(|d| !d.is_positive() || !available.contains(d));

    let mut candidates = alloc::vec![Alignment::PairSwap];
    if expansion.is_purely_periodic() {
        let block = expansion.period.len();
        candidates.extend((1..block).map(|shift| Alignment::BlockRotation { block, shift }));
    }
    let matches = |al: &Alignment| {
        (0..depth).all(|j| scaled_expansion.digit(j) == expansion.digit(al.apply(j)))
    };

    let verdict = if let Some(position) = obstruction {
        ProbeVerdict::Inconsistent { position }
    } else if let Some(al) = candidates.iter().find(|al| matches(al)) {
        ProbeVerdict::Consistent(*al)
    } else {
        ProbeVerdict::Undetermined
    };
    Ok(SurdProbe {
        k,
        depth,
        expansion,
        scaled_expansion,
        window_multisets_agree,
        verdict,
    })
}

/// The free parameters `s_0, s_1, ...` of a perfect stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSequence {
    /// `s_i = v`
    Constant(BigUint),
    /// `s_i = base^i`
    Powers(BigUint),
    /// The listed values, repeated.
    Cycle(Vec<BigUint>),
}

impl ParamSequence {
    pub fn get(&self, i: usize) -> BigUint {
        match self {
            ParamSequence::Constant(v) => v.clone(),
            ParamSequence::Powers(base) => Pow::pow(base, i as u64),
            ParamSequence::Cycle(vs) => vs[i % vs.len()].clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            ParamSequence::Constant(v) | ParamSequence::Powers(v) => !v.is_zero(),
            ParamSequence::Cycle(vs) => !vs.is_empty() && vs.iter().all(|v| !v.is_zero()),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParameterTooSmall { min: 1 })
        }
    }
}

impl FromStr for ParamSequence {
    type Err = Error;

    /// `const:<v>`, `pow:<base>`, or an explicit comma list.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "parameter sequence",
            input: s.to_string(),
        };
        let s = s.trim();
        let seq = if let Some(v) = s.strip_prefix("const:") {
            ParamSequence::Constant(v.trim().parse().map_err(|_| bad())?)
        } else if let Some(v) = s.strip_prefix("pow:") {
            ParamSequence::Powers(v.trim().parse().map_err(|_| bad())?)
        } else {
            let vs = s
                .split(',')
                .map(|p| p.trim().parse::<BigUint>())
                .collect::<core::result::Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            ParamSequence::Cycle(vs)
        };
        seq.validate()?;
        Ok(seq)
    }
}

/// The infinite perfect permutiple `[k s_0; s_0, k s_1, s_1, ...]` and its
/// adjacent-swap image `[s_0; k s_0, s_1, k s_1, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    k: BigUint,
    params: ParamSequence,
}

pub fn infinite_perfect_stream(k: &BigUint, params: ParamSequence) -> Result<DigitStream> {
    if k < &BigUint::from(2u32) {
        return Err(Error::MultiplierTooSmall);
    }
    params.validate()?;
    Ok(DigitStream {
        k: k.clone(),
        params,
    })
}

impl DigitStream {
    pub fn k(&self) -> &BigUint {
        &self.k
    }

    pub fn digit(&self, j: usize) -> BigUint {
        let s = self.params.get(j / 2);
        if j.is_multiple_of(2) {
            &self.k * s
        } else {
            s
        }
    }

    /// Digit `j` of the permuted stream, `a_{sigma(j)}` with
    /// `sigma(j) = j + (-1)^j`.
    pub fn permuted_digit(&self, j: usize) -> BigUint {
        self.digit(j ^ 1)
    }

    pub fn prefix(&self, len: usize) -> Vec<BigUint> {
        (0..len).map(|j| self.digit(j)).collect()
    }

    pub fn permuted_prefix(&self, len: usize) -> Vec<BigUint> {
        (0..len).map(|j| self.permuted_digit(j)).collect()
    }

    /// The first `len` digits as a finite continued fraction.
    pub fn truncation(&self, len: usize) -> Result<ContinuedFraction> {
        ContinuedFraction::new(self.prefix(len))
    }

    pub fn permuted_truncation(&self, len: usize) -> Result<ContinuedFraction> {
        ContinuedFraction::new(self.permuted_prefix(len))
    }

    pub fn iter(&self) -> impl Iterator<Item = BigUint> + '_ {
        (0..).map(move |j| self.digit(j))
    }
}

fn abs_diff(x: &BigUint, y: &BigUint) -> BigUint {
    if x >= y {
        x - y
    } else {
        y - x
    }
}

/// `|K_{n+1}(a_0..a_n) - K_{n+1}(a_{sigma(0)}..a_{sigma(n)})|` for
/// `n = 1..=max_n`.
pub fn asymptotic_continuant_gap(stream: &DigitStream, max_n: usize) -> Vec<BigUint> {
    let (mut a_prev, mut a_cur) = (BigUint::zero(), BigUint::one());
    let (mut b_prev, mut b_cur) = (BigUint::zero(), BigUint::one());
    let mut out = Vec::with_capacity(max_n);
    for j in 0..=max_n {
        let na = stream.digit(j) * &a_cur + &a_prev;
        a_prev = core::mem::replace(&mut a_cur, na);
        let nb = stream.permuted_digit(j) * &b_cur + &b_prev;
        b_prev = core::mem::replace(&mut b_cur, nb);
        if j >= 1 {
            out.push(abs_diff(&a_cur, &b_cur));
        }
    }
    out
}

/// The three quantities whose vanishing characterizes asymptotic continuant
/// preservation, at truncation length `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceSample {
    pub n: usize,
    /// `|K_{n+1}(a) - K_{n+1}(a_sigma)|`
    pub numerator_gap: BigUint,
    /// `|K_n(a_sigma(1)..a_sigma(n)) - k K_n(a_1..a_n)|`
    pub denominator_gap: BigUint,
    /// `|gamma_0...gamma_{n-1} - k gamma'_0...gamma'_{n-1}|` over the tails
    /// of the truncations, computed through the Gauss map.
    pub tail_gap: Rational,
}

impl EquivalenceSample {
    pub fn vanishing(&self) -> [bool; 3] {
        [
            self.numerator_gap.is_zero(),
            self.denominator_gap.is_zero(),
            self.tail_gap.is_zero(),
        ]
    }
}

pub fn equivalence_probe(stream: &DigitStream, max_n: usize) -> Vec<EquivalenceSample> {
    let k = BigInt::from(stream.k.clone());
    (1..=max_n)
        .map(|n| {
            let a = stream
                .truncation(n + 1)
                .expect("stream digits are positive");
            let b = stream
                .permuted_truncation(n + 1)
                .expect("stream digits are positive");
            let numerator_gap = abs_diff(&continuant(a.digits()), &continuant(b.digits()));
            let denominator_gap = abs_diff(
                &continuant(&b.digits()[1..]),
                &(&stream.k * continuant(&a.digits()[1..])),
            );
            let diff = &a.tails().product() - &b.tails().product().scale(&k);
            let tail_gap = if diff.numer().sign() == Sign::Minus {
                Rational::new(-diff.numer(), diff.denom().clone()).expect("positive denominator")
            } else {
                diff
            };
            EquivalenceSample {
                n,
                numerator_gap,
                denominator_gap,
                tail_gap,
            }
        })
        .collect()
}
