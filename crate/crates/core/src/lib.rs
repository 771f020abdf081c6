//! Exact generating-function engine for the enumeration of primitive
//! Vassiliev invariants and of irreducible multiple zeta values.
//!
//! All series arithmetic is exact (arbitrary-precision rationals). Floating
//! point appears only in [`asymptotics`].

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod generators;
pub mod mzv;
pub mod series;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
