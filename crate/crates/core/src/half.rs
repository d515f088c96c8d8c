use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// An integer or half-integer, stored doubled so that `1/2` is `Half(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Half(i32);

impl Half {
    pub const ZERO: Half = Half(0);

    pub const fn from_doubled(twice: i32) -> Self {
        Half(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        Half(2 * value)
    }

    /// The doubled integer representation.
    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        Half(self.0.abs())
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_frac(i64::from(self.0), 2)
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Scales the label by an integer factor.
    pub fn scale(self, factor: u32) -> Self {
        Half(self.0 * factor as i32)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts `3`, `-1`, `1/2`, `-3/2`, `0.5` and `-1.5`.
impl FromStr for Half {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not an integer or half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            let den: i32 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(Half(num.checked_mul(2).ok_or_else(bad)?)),
                2 => Ok(Half(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let whole: i32 = if int == "-" || int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = whole.checked_mul(2).ok_or_else(bad)?;
            return Ok(Half(if negative { twice - half } else { twice + half }));
        }
        let whole: i32 = s.parse().map_err(|_| bad())?;
        Ok(Half(whole.checked_mul(2).ok_or_else(bad)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!("1/2".parse::<Half>().unwrap(), Half(1));
        assert_eq!("0.5".parse::<Half>().unwrap(), Half(1));
        assert_eq!("-1.5".parse::<Half>().unwrap(), Half(-3));
        assert_eq!("-3/2".parse::<Half>().unwrap(), Half(-3));
        assert_eq!("2".parse::<Half>().unwrap(), Half(4));
        assert_eq!("4/1".parse::<Half>().unwrap(), Half(8));
        assert_eq!("1.0".parse::<Half>().unwrap(), Half(2));
        assert!("1/3".parse::<Half>().is_err());
        assert!("0.25".parse::<Half>().is_err());
        assert!("x".parse::<Half>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Half(3).to_string(), "3/2");
        assert_eq!(Half(-1).to_string(), "-1/2");
        assert_eq!(Half(-4).to_string(), "-2");
        assert_eq!(Half(0).to_string(), "0");
    }
}
