//! Exact angular-momentum algebra with a step parameter `n`
//! (`[S_i, S_j] = i·n·ε_ijk·S_k`), Clebsch-Gordan tables for equal-spin
//! pairs, and the classical conditional-probability model of paired spin
//! outcomes.
//!
//! All amplitudes are exact ([`exactnum::RadicalSum`]); floating point only
//! appears in rotation matrices and Monte Carlo frequencies.

pub mod cg;
pub mod error;
pub mod exactnum;
pub mod half;
pub mod report;
pub mod reproduce;
pub mod spin;
pub mod stats;

pub use error::{Error, Result};
pub use exactnum::{ComplexExact, RadicalSum, Rational};
pub use half::Half;
pub use report::{Check, VerificationReport};
