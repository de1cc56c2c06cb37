//! Exact computational homological algebra for graded algebras and DGAs:
//! homology and homology rings, monoid-with-zero basis certification,
//! truncated Hochschild homology, dual Steenrod algebra Dyer-Lashof
//! calculus, THH splitting arithmetic, and extension/non-extension
//! certificates.
//!
//! All arithmetic is exact (prime fields, arbitrary-precision integers,
//! Z/m); every operation is pure and deterministic.

pub mod basis;
pub mod dga;
pub mod error;
pub mod gring;
pub mod hochschild;
pub mod obstruct;
pub mod steenrod;
pub mod thh;

pub use error::{Error, Result};
