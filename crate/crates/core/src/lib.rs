//! Second-order Fuchsian differential operators in characteristic p.
//!
//! The crate finds polynomial solutions, classifies the p-curvature
//! (zero, nilpotent nonzero, not nilpotent), extracts the associated
//! deformation datum and its numerical invariants, and searches
//! accessory-parameter space.

pub mod accessory;
pub mod algebra;
pub mod cli;
pub mod deformation;
pub mod error;
pub mod operators;
pub mod pcurvature;
pub mod solutions;

pub use error::{Error, Result};
