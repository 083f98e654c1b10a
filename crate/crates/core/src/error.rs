use alloc::string::String;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a continued fraction needs at least one digit")]
    EmptyFraction,
    #[error("digit {index} is zero; digits must be positive")]
    ZeroDigit { index: usize },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation of 0..{len}")]
    InvalidPermutation { len: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("value {0} is below 1 and has no expansion with positive digits")]
    ValueBelowOne(String),
    #[error("gauss map is defined on [0, 1) only, got {0}")]
    OutsideUnitInterval(String),
    #[error("not a permutiple")]
    NotPermutiple,
    #[error("base fraction is not in canonical form (last digit is 1)")]
    NonCanonical,
    #[error("multiplier must be at least 2")]
    MultiplierTooSmall,
    #[error("parameter must be at least {min}")]
    ParameterTooSmall { min: u32 },
    #[error("a0 must exceed k")]
    LeadingDigitTooSmall,
    #[error("a0 and k must be coprime")]
    NotCoprime,
    #[error("permutation does not admit perfect permutiples")]
    NotPerfectPermutation,
    #[error("expected {expected} parameters, found {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("cyclic shift must be odd and strictly between 0 and the length")]
    InvalidShift,
    #[error("multipliers differ: {0} vs {1}")]
    MultiplierMismatch(String, String),
    #[error("witness lacks the required {0} property")]
    MissingFlag(&'static str),
    #[error("list of fractions is not palindromic")]
    NotPalindromic,
    #[error("fraction is not a reverse multiple with the common multiplier")]
    NotReverseMultiple,
    #[error("empty list")]
    EmptyList,
    #[error("surd radicand must be a positive non-square")]
    InvalidRadicand,
    #[error("surd denominator must be nonzero")]
    ZeroSurdDenominator,
    #[error("(b - a^2)/c is not an integer of at least 2")]
    NoSurdMultiplier,
    #[error("expansion did not cycle within {0} states")]
    StateLimit(usize),
    #[error("exact verification failed: {0}")]
    VerificationFailed(&'static str),
}
