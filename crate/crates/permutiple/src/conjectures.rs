//! Scans that test the open conjectures on every witness within bounds.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use permutiple_core::Witness;
use thiserror::Error;

use crate::search::{ConfigError, SearchConfig, SearchStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjectureId {
    /// Every 4-digit permutiple is symmetric.
    C1,
    /// Every permutiple is continuant-preserving.
    C2,
    /// Every symmetric permutiple is Landess.
    C3,
    /// Every 4-digit permutiple is perfect or a reverse multiple.
    C4,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 4] = [
        ConjectureId::C1,
        ConjectureId::C2,
        ConjectureId::C3,
        ConjectureId::C4,
    ];

    /// `false` exactly when `w` is a counterexample.
    pub fn holds_for(self, w: &Witness) -> bool {
        let f = w.flags();
        match self {
            ConjectureId::C1 => w.len() != 4 || f.symmetric,
            ConjectureId::C2 => f.continuant_preserving,
            ConjectureId::C3 => !f.symmetric || f.landess,
            ConjectureId::C4 => w.len() != 4 || f.perfect || f.reverse_multiple,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            ConjectureId::C1 => "every 4-digit permutiple is symmetric",
            ConjectureId::C2 => "every permutiple is continuant-preserving",
            ConjectureId::C3 => "every symmetric permutiple is Landess",
            ConjectureId::C4 => "every 4-digit permutiple is perfect or a reverse multiple",
        }
    }

    /// Scan bounds used when none are given: length 4 up to digit 20 for
    /// the 4-digit statements, lengths 2 to 5 up to digit 12 otherwise.
    pub fn default_bounds(self) -> Bounds {
        match self {
            ConjectureId::C1 | ConjectureId::C4 => Bounds {
                lengths: 4..=4,
                max_digit: 20,
            },
            ConjectureId::C2 | ConjectureId::C3 => Bounds {
                lengths: 2..=5,
                max_digit: 12,
            },
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConjectureId::C1 => "c1",
            ConjectureId::C2 => "c2",
            ConjectureId::C3 => "c3",
            ConjectureId::C4 => "c4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown conjecture {0:?} (expected c1, c2, c3 or c4)")]
pub struct UnknownConjecture(pub String);

impl FromStr for ConjectureId {
    type Err = UnknownConjecture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "c1" => Ok(ConjectureId::C1),
            "c2" => Ok(ConjectureId::C2),
            "c3" => Ok(ConjectureId::C3),
            "c4" => Ok(ConjectureId::C4),
            _ => Err(UnknownConjecture(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lengths: RangeInclusive<usize>,
    pub max_digit: u64,
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "length {}..={}, digits <= {}",
            self.lengths.start(),
            self.lengths.end(),
            self.max_digit
        )
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub id: ConjectureId,
    pub bounds: Bounds,
    pub examined: usize,
    pub counterexamples: Vec<Witness>,
    /// The search hit its witness limit, so the scan is incomplete.
    pub truncated: bool,
    pub elapsed: Duration,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Feeds every witness of `stream` to each conjecture in `ids`. The reports
/// share the stream's bounds and wall time.
pub fn check_conjectures<I>(
    stream: I,
    bounds: &Bounds,
    ids: &[ConjectureId],
) -> Vec<ConjectureReport>
where
    I: IntoIterator<Item = Witness>,
{
    let start = Instant::now();
    let mut examined = 0;
    let mut counterexamples = vec![Vec::new(); ids.len()];
    for w in stream {
        examined += 1;
        for (id, bad) in ids.iter().zip(counterexamples.iter_mut()) {
            if !id.holds_for(&w) {
                bad.push(w.clone());
            }
        }
    }
    let elapsed = start.elapsed();
    ids.iter()
        .zip(counterexamples)
        .map(|(&id, counterexamples)| ConjectureReport {
            id,
            bounds: bounds.clone(),
            examined,
            counterexamples,
            truncated: false,
            elapsed,
        })
        .collect()
}

/// Runs a search over `config`'s bounds and checks the listed conjectures
/// on its output.
pub fn scan(
    config: &SearchConfig,
    ids: &[ConjectureId],
) -> Result<Vec<ConjectureReport>, ConfigError> {
    let bounds = Bounds {
        lengths: config.lengths.clone(),
        max_digit: config.max_digit,
    };
    let mut stream = SearchStream::new(config.clone())?;
    let mut reports = check_conjectures(stream.by_ref(), &bounds, ids);
    for r in &mut reports {
        r.truncated = stream.truncated();
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use permutiple_core::classify::classify;

    fn witness(cf: &str, sigma: &str, k: u32) -> Witness {
        classify(
            &cf.parse().unwrap(),
            &sigma.parse().unwrap(),
            &BigUint::from(k),
        )
        .unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in ConjectureId::ALL {
            assert_eq!(id.to_string().parse::<ConjectureId>().unwrap(), id);
        }
        assert!("c5".parse::<ConjectureId>().is_err());
    }

    #[test]
    fn predicates_on_known_examples() {
        // symmetric but not perfect or reverse, six digits
        let w = witness("4;2,1,8,1,2", "2,1,0,5,4,3", 3);
        assert!(ConjectureId::C1.holds_for(&w) && ConjectureId::C4.holds_for(&w));
        // not symmetric, so C3 holds vacuously
        let w = witness("9;3,2,8,2", "2,1,0,4,3", 4);
        assert!(!w.flags().symmetric);
        assert!(ConjectureId::C3.holds_for(&w));
        // five digits: the 4-digit statements do not apply
        assert!(ConjectureId::C1.holds_for(&w));
    }

    #[test]
    fn reports_split_counterexamples_per_id() {
        let ws = vec![
            witness("7;1,3", "2,1,0", 2),
            witness("9;3,2,8,2", "2,1,0,4,3", 4),
        ];
        let bounds = Bounds {
            lengths: 3..=5,
            max_digit: 9,
        };
        let reports = check_conjectures(ws, &bounds, &ConjectureId::ALL);
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.examined == 2 && r.holds()));
    }
}
