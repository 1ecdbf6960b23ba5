//! Exact engine for Laurent phenomenon algebras: seeds, exchange Laurent
//! polynomials, mutation, exchange graphs and the standard example families.

// Matrix and slot code indexes several parallel arrays at once.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod explore;
pub mod families;
pub mod fingerprint;
pub mod matrix;
pub mod mutation;
pub mod names;
pub mod poly;
pub mod rank2;
pub mod ring;
pub mod seed;
pub mod seedfile;

pub use error::{Error, Result};
