//! Search, conjecture scans, file export and the command line for
//! continued-fraction permutiples. The arithmetic lives in
//! [`permutiple_core`].

pub mod cli;
pub mod conjectures;
pub mod export;
pub mod search;

pub use permutiple_core as core;
