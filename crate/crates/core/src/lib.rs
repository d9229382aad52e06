//! Numerical toolkit for potential theory on the unit disc: pseudohyperbolic
//! geometry and the dyadic Whitney decomposition, zero sets of Blaschke-type
//! products evaluated through their log-modulus, positive harmonic functions
//! as Poisson integrals of boundary measures, and a minimal-mass linear
//! program that decides — at truncation scale — whether a prescribed
//! function admits a positive harmonic majorant on a prescribed set.
//!
//! The `constructions` module generates the discriminating zero sets whose
//! majorant diagnostics separate nearby harmonic weights; `verify` bundles
//! the property suites behind the CLI's `verify` command.

pub mod blaschke;
pub mod constants;
pub mod constructions;
pub mod error;
pub mod harmonic;
pub mod hypgeo;
pub mod majorant;
pub(crate) mod sampling;
pub mod verify;

pub use error::{Error, Result};
