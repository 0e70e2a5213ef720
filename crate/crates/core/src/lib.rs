//! Exact-arithmetic structures for the lattice, modular-group, polytope and
//! Novikov-field computations behind K3 mirror families.

pub mod error;
pub mod linalg;
pub mod num;

pub mod fricke;
pub mod json;
pub mod lattice;
pub mod mpoly;
pub mod novikov;
pub mod period;
pub mod polytope;
pub mod report;
pub mod svg;
pub mod subdivision;
pub mod verify;
pub mod words;

pub use error::{Error, Result};

/// Placeholder entry point until the CLI module lands.
pub fn cli_main() -> i32 {
    0
}
