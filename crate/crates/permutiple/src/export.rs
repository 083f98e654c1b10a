//! JSONL and CSV output for witnesses.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use permutiple_core::classify::classify_relaxed;
use permutiple_core::{ContinuedFraction, Permutation, Witness};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (expected jsonl or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("witness {0} failed re-verification")]
    Unverified(String),
    #[error("bad record: {0}")]
    BadRecord(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub p: String,
    pub q: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsRecord {
    pub continuant_preserving: bool,
    pub perfect: bool,
    pub symmetric: bool,
    pub landess: bool,
    pub reverse_multiple: bool,
}

/// One witness as written to JSONL. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub digits: String,
    pub sigma: String,
    pub k: serde_json::Number,
    pub value: ValueRecord,
    pub flags: FlagsRecord,
}

impl WitnessRecord {
    pub fn from_witness(w: &Witness) -> Self {
        let f = w.flags();
        WitnessRecord {
            digits: w.cf().to_string(),
            sigma: w.sigma().to_string(),
            k: w.k().to_string().parse().expect("decimal integer"),
            value: ValueRecord {
                p: w.value().numer().to_string(),
                q: w.value().denom().to_string(),
            },
            flags: FlagsRecord {
                continuant_preserving: f.continuant_preserving,
                perfect: f.perfect,
                symmetric: f.symmetric,
                landess: f.landess,
                reverse_multiple: f.reverse_multiple,
            },
        }
    }

    /// Rebuilds and re-classifies the witness; the stored value and flags
    /// must agree with the recomputed ones.
    pub fn to_witness(&self) -> Result<Witness, ExportError> {
        let bad = |e: &dyn fmt::Display| ExportError::BadRecord(e.to_string());
        let cf: ContinuedFraction = self.digits.parse().map_err(|e| bad(&e))?;
        let sigma: Permutation = self.sigma.parse().map_err(|e| bad(&e))?;
        let k: BigUint = self.k.to_string().parse().map_err(|e| bad(&e))?;
        let w = classify_relaxed(&cf, &sigma, &k).map_err(|e| bad(&e))?;
        if WitnessRecord::from_witness(&w) != *self {
            return Err(ExportError::BadRecord(format!(
                "stored fields disagree for {}",
                self.digits
            )));
        }
        Ok(w)
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "digits",
    "sigma",
    "k",
    "p",
    "q",
    "continuant_preserving",
    "perfect",
    "symmetric",
    "landess",
    "reverse_multiple",
];

fn csv_row(w: &Witness) -> [String; 10] {
    let f = w.flags();
    [
        w.cf().to_string(),
        w.sigma().to_string(),
        w.k().to_string(),
        w.value().numer().to_string(),
        w.value().denom().to_string(),
        f.continuant_preserving.to_string(),
        f.perfect.to_string(),
        f.symmetric.to_string(),
        f.landess.to_string(),
        f.reverse_multiple.to_string(),
    ]
}

fn checked(w: &Witness) -> Result<&Witness, ExportError> {
    if w.verify() {
        Ok(w)
    } else {
        Err(ExportError::Unverified(w.cf().to_string()))
    }
}

/// Writes every witness, re-verifying each one first, and returns how many
/// were written. CSV output always starts with exactly one header line.
pub fn export<W, I>(out: W, format: Format, witnesses: I) -> Result<usize, ExportError>
where
    W: Write,
    I: IntoIterator<Item = Witness>,
{
    let mut count = 0;
    match format {
        Format::Jsonl => {
            let mut out = out;
            for w in witnesses {
                serde_json::to_writer(&mut out, &WitnessRecord::from_witness(checked(&w)?))?;
                out.write_all(b"\n")?;
                count += 1;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(out);
            out.write_record(CSV_HEADER)?;
            for w in witnesses {
                out.write_record(csv_row(checked(&w)?))?;
                count += 1;
            }
            out.flush()?;
        }
    }
    Ok(count)
}

/// One JSONL line for a witness, without the trailing newline.
pub fn json_line(w: &Witness) -> String {
    serde_json::to_string(&WitnessRecord::from_witness(w)).expect("records serialize")
}
