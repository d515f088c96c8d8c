use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::{RadicalSum, Rational};

/// `re + i·im` with exact radical parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ComplexExact {
    pub re: RadicalSum,
    pub im: RadicalSum,
}

impl ComplexExact {
    pub fn new(re: RadicalSum, im: RadicalSum) -> Self {
        ComplexExact { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(RadicalSum::one())
    }

    pub fn i() -> Self {
        Self::imag(RadicalSum::one())
    }

    pub fn real(re: RadicalSum) -> Self {
        ComplexExact { re, im: RadicalSum::zero() }
    }

    pub fn imag(im: RadicalSum) -> Self {
        ComplexExact { re: RadicalSum::zero(), im }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::real(RadicalSum::from_rational(q))
    }

    pub fn from_integer(v: i64) -> Self {
        Self::real(RadicalSum::from_integer(v))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexExact { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> RadicalSum {
        &self.re.square() + &self.im.square()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ComplexExact { re: self.re.scale(factor), im: self.im.scale(factor) }
    }

    pub fn scale_radical(&self, factor: &RadicalSum) -> Self {
        ComplexExact { re: &self.re * factor, im: &self.im * factor }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ComplexExact { re: -&self.im, im: self.re.clone() }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&ComplexExact> for &ComplexExact {
    type Output = ComplexExact;
    fn add(self, rhs: &ComplexExact) -> ComplexExact {
        ComplexExact { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for ComplexExact {
    type Output = ComplexExact;
    fn add(self, rhs: ComplexExact) -> ComplexExact {
        ComplexExact { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub<&ComplexExact> for &ComplexExact {
    type Output = ComplexExact;
    fn sub(self, rhs: &ComplexExact) -> ComplexExact {
        ComplexExact { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &ComplexExact {
    type Output = ComplexExact;
    fn neg(self) -> ComplexExact {
        ComplexExact { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexExact {
    type Output = ComplexExact;
    fn neg(self) -> ComplexExact {
        -&self
    }
}

impl Mul<&ComplexExact> for &ComplexExact {
    type Output = ComplexExact;
    fn mul(self, rhs: &ComplexExact) -> ComplexExact {
        if self.is_zero() || rhs.is_zero() {
            return ComplexExact::zero();
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexExact { re, im }
    }
}

impl Mul for ComplexExact {
    type Output = ComplexExact;
    fn mul(self, rhs: ComplexExact) -> ComplexExact {
        &self * &rhs
    }
}

/// `a`, `(b)i`, or `a + (b)i`; `±i` for unit imaginary parts.
impl fmt::Display for ComplexExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = if self.im == RadicalSum::one() {
            "i".to_string()
        } else if self.im == -RadicalSum::one() {
            "-i".to_string()
        } else {
            format!("({})i", self.im)
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{imag}"),
            (false, false) => match imag.strip_prefix('-') {
                Some("i") => write!(f, "{} - i", self.re),
                _ => write!(f, "{} + {imag}", self.re),
            },
        }
    }
}

impl Serialize for ComplexExact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
