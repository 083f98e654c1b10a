//! Exhaustive search over bounded digit strings.
//!
//! The tuple space for each length is cut into blocks by the first two
//! digits. Blocks are classified in parallel a window at a time and handed
//! out in enumeration order, so the output never depends on the worker
//! count.

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use permutiple_core::classify::{
    classify, classify_relaxed, multiplier_of_strings, sigmas_realizing,
};
use permutiple_core::perm::next_arrangement;
use permutiple_core::{ContinuedFraction, Witness};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("lengths must be at least 2 (got {0})")]
    LengthTooSmall(usize),
    #[error("empty length range {0}..={1}")]
    EmptyLengthRange(usize, usize),
    #[error("max digit must be at least 2 (got {0})")]
    MaxDigitTooSmall(u64),
    #[error("k_min must be at least 2 (got {0})")]
    KMinTooSmall(u64),
    #[error("workers must be positive")]
    NoWorkers,
}

/// Bounds and switches for [`exhaustive_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Digit-string lengths `n + 1` to visit, shortest first.
    pub lengths: RangeInclusive<usize>,
    /// Largest digit `B`; digits range over `1..=B`.
    pub max_digit: u64,
    pub k_min: Option<u64>,
    pub k_max: Option<u64>,
    /// Skip strings ending in 1.
    pub canonical_only: bool,
    /// One witness per permuted string; otherwise one per realizing `sigma`.
    pub dedupe: bool,
    /// Skip arrangements with `a_0 <= b_0`, which cannot be permutiples.
    pub prune: bool,
    pub workers: usize,
    /// Stop after this many witnesses and mark the output truncated.
    pub limit: Option<usize>,
}

impl SearchConfig {
    pub fn new(lengths: RangeInclusive<usize>, max_digit: u64) -> Self {
        SearchConfig {
            lengths,
            max_digit,
            k_min: None,
            k_max: None,
            canonical_only: true,
            dedupe: true,
            prune: true,
            workers: default_workers(),
            limit: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let (lo, hi) = (*self.lengths.start(), *self.lengths.end());
        if lo < 2 {
            return Err(ConfigError::LengthTooSmall(lo));
        }
        if hi < lo {
            return Err(ConfigError::EmptyLengthRange(lo, hi));
        }
        if self.max_digit < 2 {
            return Err(ConfigError::MaxDigitTooSmall(self.max_digit));
        }
        if let Some(k) = self.k_min {
            if k < 2 {
                return Err(ConfigError::KMinTooSmall(k));
            }
        }
        if self.workers == 0 {
            return Err(ConfigError::NoWorkers);
        }
        Ok(())
    }

    fn k_in_bounds(&self, k: &BigUint) -> bool {
        *k >= BigUint::from(2u32)
            && self.k_min.is_none_or(|m| *k >= BigUint::from(m))
            && self.k_max.is_none_or(|m| *k <= BigUint::from(m))
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Everything a finished search produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutput {
    pub witnesses: Vec<Witness>,
    /// Set when `limit` cut the search short.
    pub truncated: bool,
}

/// Runs the whole search and collects its output.
pub fn exhaustive_search(config: &SearchConfig) -> Result<SearchOutput, ConfigError> {
    let mut stream = SearchStream::new(config.clone())?;
    let witnesses = stream.by_ref().collect();
    Ok(SearchOutput {
        witnesses,
        truncated: stream.truncated(),
    })
}

/// Witnesses in order: by length, then digit string, then permuted string.
pub struct SearchStream {
    config: SearchConfig,
    pool: rayon::ThreadPool,
    blocks: VecDeque<Block>,
    ready: VecDeque<Witness>,
    emitted: usize,
    truncated: bool,
}

#[derive(Debug, Clone, Copy)]
struct Block {
    len: usize,
    prefix: [u64; 2],
}

impl SearchStream {
    pub fn new(config: SearchConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("thread pool");
        let mut blocks = VecDeque::new();
        for len in config.lengths.clone() {
            for a0 in 1..=config.max_digit {
                for a1 in 1..=config.max_digit {
                    blocks.push_back(Block {
                        len,
                        prefix: [a0, a1],
                    });
                }
            }
        }
        Ok(SearchStream {
            config,
            pool,
            blocks,
            ready: VecDeque::new(),
            emitted: 0,
            truncated: false,
        })
    }

    /// Whether the configured limit stopped the stream early. Meaningful
    /// once the stream is exhausted.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn refill(&mut self) {
        let window = self.config.workers * 4;
        while self.ready.is_empty() && !self.blocks.is_empty() {
            let take = window.min(self.blocks.len());
            let batch: Vec<Block> = self.blocks.drain(..take).collect();
            let config = &self.config;
            let results: Vec<Vec<Witness>> = self
                .pool
                .install(|| batch.par_iter().map(|b| search_block(config, *b)).collect());
            self.ready.extend(results.into_iter().flatten());
        }
    }
}

impl Iterator for SearchStream {
    type Item = Witness;

    fn next(&mut self) -> Option<Witness> {
        if self.truncated {
            return None;
        }
        self.refill();
        let w = self.ready.pop_front()?;
        if self.config.limit.is_some_and(|l| self.emitted >= l) {
            self.truncated = true;
            self.ready.clear();
            self.blocks.clear();
            return None;
        }
        self.emitted += 1;
        Some(w)
    }
}

fn search_block(config: &SearchConfig, block: Block) -> Vec<Witness> {
    let mut out = Vec::new();
    let len = block.len;
    let mut digits = vec![1u64; len];
    digits[0] = block.prefix[0];
    if len == 2 {
        digits[1] = block.prefix[1];
        search_tuple(config, &digits, &mut out);
        return out;
    }
    digits[1] = block.prefix[1];
    loop {
        search_tuple(config, &digits, &mut out);
        // odometer over positions 2..len, last position fastest
        let mut j = len - 1;
        loop {
            if digits[j] < config.max_digit {
                digits[j] += 1;
                break;
            }
            digits[j] = 1;
            j -= 1;
            if j < 2 {
                return out;
            }
        }
    }
}

fn continuant_u128(xs: &[u64]) -> Option<u128> {
    let (mut prev, mut cur) = (0u128, 1u128);
    for &x in xs {
        let next = (x as u128).checked_mul(cur)?.checked_add(prev)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

enum Ratio {
    Multiple(u128),
    NotMultiple,
    Overflow,
}

/// `k = (p q') / (q p')` when it is an integer, using checked arithmetic.
fn ratio_u128(p: u128, q: u128, b: &[u64]) -> Ratio {
    let (Some(pp), Some(qp)) = (continuant_u128(b), continuant_u128(&b[1..])) else {
        return Ratio::Overflow;
    };
    let (Some(num), Some(den)) = (p.checked_mul(qp), q.checked_mul(pp)) else {
        return Ratio::Overflow;
    };
    if num % den == 0 {
        Ratio::Multiple(num / den)
    } else {
        Ratio::NotMultiple
    }
}

fn to_big(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn search_tuple(config: &SearchConfig, a: &[u64], out: &mut Vec<Witness>) {
    if config.canonical_only && a[a.len() - 1] == 1 {
        return;
    }
    let pq = continuant_u128(a).zip(continuant_u128(&a[1..]));
    let mut b = a.to_vec();
    b.sort_unstable();
    loop {
        if config.prune && b[0] >= a[0] {
            // arrangements are visited in lexicographic order
            break;
        }
        if b != a {
            let k = match pq.map(|(p, q)| ratio_u128(p, q, &b)) {
                Some(Ratio::Multiple(k)) => Some(BigUint::from(k)),
                Some(Ratio::NotMultiple) => None,
                None | Some(Ratio::Overflow) => multiplier_of_strings(&to_big(a), &to_big(&b)),
            };
            if let Some(k) = k.filter(|k| config.k_in_bounds(k)) {
                emit(config, a, &b, k, out);
            }
        }
        if !next_arrangement(&mut b) {
            break;
        }
    }
}

fn emit(config: &SearchConfig, a: &[u64], b: &[u64], k: BigUint, out: &mut Vec<Witness>) {
    let cf = ContinuedFraction::new(to_big(a)).expect("digits are positive");
    let permuted = ContinuedFraction::new(to_big(b)).expect("digits are positive");
    let mut sigmas = sigmas_realizing(&cf, &permuted);
    if config.dedupe {
        sigmas.truncate(1);
    }
    for sigma in sigmas {
        let w = if config.canonical_only {
            classify(&cf, &sigma, &k)
        } else {
            classify_relaxed(&cf, &sigma, &k)
        };
        out.push(w.expect("ratio test found an exact multiple"));
    }
}
