//! Exact arithmetic over the rationals extended by square roots of
//! squarefree integers, plus its complexification.
//!
//! Every amplitude in the coupling tables is a finite sum `Σ qᵢ√rᵢ`. Because
//! square roots of distinct squarefree integers are linearly independent over
//! the rationals, a canonical term map gives decidable exact equality.
//! Division is only defined by single-term values.

mod complex;
mod radical;
mod rational;

pub use complex::ComplexExact;
pub use radical::{squarefree_decompose, RadicalSum};
pub use rational::Rational;

use crate::error::Result;

/// Reduced `numerator / denominator`; errors on a zero denominator.
pub fn rational_normalize(numerator: i64, denominator: i64) -> Result<Rational> {
    Rational::new(numerator, denominator)
}

/// `√q` as `c·√r`, `c ≥ 0`, `r` squarefree.
pub fn sqrt_rational(q: &Rational) -> Result<RadicalSum> {
    RadicalSum::sqrt_rational(q)
}
