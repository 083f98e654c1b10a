//! Exact arithmetic for continued-fraction permutiples.
//!
//! A finite simple continued fraction `[a0; a1, ..., an]` is a
//! `(sigma, k)`-permutiple when it equals `k` times the fraction built from
//! its digits rearranged by `sigma`, for an integer `k > 1`. This crate
//! evaluates, classifies and constructs such fractions using unbounded
//! integers only; nothing here touches floating point.
//!
//! The crate is `no_std` and needs only `alloc`. Searching, file formats and
//! the command line live in the companion `permutiple` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cf;
pub mod classify;
pub mod concat;
pub mod construct;
pub mod continuant;
mod error;
pub mod perm;
pub mod rational;
pub mod surd;

pub use cf::ContinuedFraction;
pub use classify::{ClassificationFlags, Witness};
pub use error::Error;
pub use perm::Permutation;
pub use rational::Rational;
pub use surd::QuadraticSurd;

pub type Result<T, E = Error> = core::result::Result<T, E>;
