use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{domain, Error, Result};

/// Splits `n` into `(k, r)` with `n = k² · r` and `r` squarefree, by trial
/// division.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_decompose of zero");
    let mut rest = n;
    let mut square_root = 1u64;
    let mut squarefree = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut count = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            count += 1;
        }
        square_root *= p.pow(count / 2);
        if count % 2 == 1 {
            squarefree *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever is left is prime (or 1)
    squarefree *= rest;
    (square_root, squarefree)
}

/// Exact number `Σ qᵢ·√rᵢ` over distinct squarefree radicands `rᵢ ≥ 1`.
///
/// The map never stores a zero coefficient, so structural equality is
/// numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadicalSum {
    terms: BTreeMap<u64, Rational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        RadicalSum { terms }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v))
    }

    /// `coefficient · √radicand` for any positive radicand; square factors
    /// are pulled into the coefficient.
    pub fn term(coefficient: Rational, radicand: u64) -> Result<Self> {
        if radicand == 0 {
            return Ok(Self::zero());
        }
        let (k, r) = squarefree_decompose(radicand);
        let coefficient = coefficient * Rational::from_integer(to_i64(k)?);
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(r, coefficient);
        }
        Ok(RadicalSum { terms })
    }

    /// `√q` as a single term `c·√r` with `c ≥ 0`.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(domain(format!("square root of negative rational {q}")));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(p/d) = √(p·d) / d
        let product = q.numer() * q.denom();
        let product = product.to_u64().ok_or_else(|| Error::Overflow(format!("radicand {product} exceeds 64 bits")))?;
        let denom = q.denom().to_i64().ok_or_else(|| Error::Overflow(format!("denominator of {q} exceeds 64 bits")))?;
        Self::term(Rational::from_frac(1, denom), product)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(radicand, coefficient)` in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(r, q)| (*r, q))
    }

    /// The value as a rational if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// `(coefficient, radicand)` when the value is a single nonzero term.
    pub fn single_term(&self) -> Option<(&Rational, u64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(r, q)| (q, *r))
        } else {
            None
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        RadicalSum { terms: self.terms.iter().map(|(r, q)| (*r, q * factor)).collect() }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&r1, q1) in &self.terms {
            for (&r2, q2) in &rhs.terms {
                // r1 = g·a, r2 = g·b with a, b coprime and squarefree, so
                // √r1·√r2 = g·√(a·b) is already reduced.
                let g = r1.gcd(&r2);
                let radicand = (r1 / g)
                    .checked_mul(r2 / g)
                    .ok_or_else(|| Error::Overflow(format!("radicand product {r1}·{r2}")))?;
                let coefficient = q1 * q2 * Rational::from_integer(to_i64(g)?);
                accumulate(&mut terms, radicand, coefficient);
            }
        }
        Ok(RadicalSum { terms })
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Inverse of a single-term value `c·√r`, which is `(1/(c·r))·√r`.
    /// Multi-term inverses are outside the supported field.
    pub fn inverse(&self) -> Result<Self> {
        match self.single_term() {
            Some((c, r)) => {
                let scale = (c * &Rational::from_integer(to_i64(r)?)).recip()?;
                let mut terms = BTreeMap::new();
                terms.insert(r, scale);
                Ok(RadicalSum { terms })
            }
            None if self.is_zero() => Err(domain("inverse of zero")),
            None => Err(Error::Precision(format!("cannot invert multi-term radical sum {self}"))),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.inverse()?)
    }

    /// Sign of the value. Exact for zero and single terms; multi-term sums
    /// fall back to float evaluation.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some((c, _)) = self.single_term() {
            return if c.is_negative() { -1 } else { 1 };
        }
        let v = self.to_f64();
        if v < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(r, q)| q.to_f64() * (*r as f64).sqrt()).sum()
    }
}

fn to_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(format!("{v} exceeds i64")))
}

fn accumulate(terms: &mut BTreeMap<u64, Rational>, radicand: u64, coefficient: Rational) {
    let sum = match terms.remove(&radicand) {
        Some(existing) => existing + coefficient,
        None => coefficient,
    };
    if !sum.is_zero() {
        terms.insert(radicand, sum);
    }
}

impl From<Rational> for RadicalSum {
    fn from(q: Rational) -> Self {
        RadicalSum::from_rational(q)
    }
}

impl Add<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut terms = self.terms.clone();
        for (&r, q) in &rhs.terms {
            accumulate(&mut terms, r, q.clone());
        }
        RadicalSum { terms }
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: RadicalSum) -> RadicalSum {
        let mut terms = self.terms;
        for (r, q) in rhs.terms {
            accumulate(&mut terms, r, q);
        }
        RadicalSum { terms }
    }
}

impl Sub<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &(-rhs)
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        self + (-rhs)
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum { terms: self.terms.iter().map(|(r, q)| (*r, -q)).collect() }
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        -&self
    }
}

/// Panics with an overflow message if a reduced radicand leaves `u64`;
/// use [`RadicalSum::checked_mul`] to get the error instead.
impl Mul<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        self.checked_mul(rhs).expect("radical multiplication overflow")
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: RadicalSum) -> RadicalSum {
        &self * &rhs
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, coefficient: &Rational, radicand: u64) -> fmt::Result {
    if radicand == 1 {
        write!(f, "{coefficient}")
    } else if coefficient.is_one() {
        write!(f, "√{radicand}")
    } else {
        write!(f, "{coefficient}√{radicand}")
    }
}

/// `p/q√r` terms in ascending radicand order, `√1` elided, joined by
/// ` + ` / ` - `.
impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&r, q)) in self.terms.iter().enumerate() {
            let magnitude = q.abs();
            match (i, q.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_term(f, &magnitude, r)?;
        }
        Ok(())
    }
}

impl Serialize for RadicalSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
