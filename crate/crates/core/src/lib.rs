//! Odd form rings over ℤ/m: the pair model of Δ, unitary groups, elementary
//! transvections and constructive K₁-stability.

pub mod algebra;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod families;
pub mod oddform;
pub mod report;
pub mod stability;
pub mod unitary;

pub use error::{Error, Result};
