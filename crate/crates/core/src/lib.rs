//! Exact computations with Galois bimodules over explicitly presented fields,
//! finite-dimensional Hopf algebra coactions, and the associated Hecke algebras.

pub mod error;
pub mod bimod;
pub mod coact;
pub mod fields;
pub mod fixtures;
pub mod group;
pub mod hecke;
pub mod hopf;
pub mod kernel;
pub mod linalg;
pub mod multibase;

pub use error::{Error, Result};
