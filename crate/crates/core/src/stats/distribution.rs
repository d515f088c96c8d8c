use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::half::Half;

/// Exact single-particle probabilities over `m` labels.
///
/// Weights are nonnegative and sum to exactly one; every label shares the
/// parity of the declared spin `l`, which is the largest `|m|` in the
/// support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinDistribution {
    weights: BTreeMap<Half, Rational>,
}

impl SpinDistribution {
    pub fn new(weights: BTreeMap<Half, Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("distribution has no outcomes".into()));
        }
        if let Some((m, w)) = weights.iter().find(|(_, w)| w.is_negative()) {
            return Err(Error::Domain(format!("negative weight {w} on m = {m}")));
        }
        let total: Rational = weights.values().sum();
        if !total.is_one() {
            return Err(Error::Domain(format!("weights sum to {total}, not 1")));
        }
        let parity = weights.keys().next().expect("nonempty").doubled().rem_euclid(2);
        if let Some(m) = weights.keys().find(|m| m.doubled().rem_euclid(2) != parity) {
            return Err(Error::Domain(format!("label {m} mixes integer and half-integer outcomes")));
        }
        let weights = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Ok(SpinDistribution { weights })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Half, Rational)>>(pairs: I) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (m, w) in pairs {
            if weights.insert(m, w).is_some() {
                return Err(Error::Domain(format!("label {m} given twice")));
            }
        }
        Self::new(weights)
    }

    /// Equal weight on `l, l−1, …, −l`.
    pub fn uniform(l: Half) -> Self {
        let tl = l.doubled();
        let count = i64::from(tl) + 1;
        Self::from_pairs((0..=tl).map(|k| (Half::from_doubled(tl - 2 * k), Rational::from_frac(1, count))))
            .expect("uniform weights are valid")
    }

    /// Declared spin: the largest `|m|` carrying weight.
    pub fn l(&self) -> Half {
        self.weights.keys().map(|m| m.abs()).max().expect("nonempty")
    }

    pub fn weight(&self, m: Half) -> Rational {
        self.weights.get(&m).cloned().unwrap_or_default()
    }

    /// Outcomes with positive weight, ascending.
    pub fn support(&self) -> impl Iterator<Item = (Half, &Rational)> {
        self.weights.iter().map(|(m, w)| (*m, w))
    }

    /// `p(m) = p(−m)` for every label.
    pub fn is_symmetric(&self) -> bool {
        self.weights.iter().all(|(m, w)| self.weight(-*m) == *w)
    }

    /// Weights in descending `m`.
    pub fn descending(&self) -> Vec<(Half, Rational)> {
        self.weights.iter().rev().map(|(m, w)| (*m, w.clone())).collect()
    }
}

/// `m:prob` pairs in descending `m`, the same literal format accepted by
/// [`FromStr`].
impl fmt::Display for SpinDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.descending().iter().map(|(m, w)| format!("{m}:{w}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `1:1/4,0:1/2,-1:1/4`. Weights must sum to exactly one.
impl FromStr for SpinDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (m, w) =
                part.split_once(':').ok_or_else(|| Error::Parse(format!("`{part}` is not of the form m:prob")))?;
            pairs.push((m.parse::<Half>()?, w.parse::<Rational>()?));
        }
        Self::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_literal() {
        let d: SpinDistribution = "1:1/4,0:1/2,-1:1/4".parse().unwrap();
        assert_eq!(d.weight(Half::from_int(0)), Rational::new(1, 2).unwrap());
        assert_eq!(d.l(), Half::from_int(1));
        assert!(d.is_symmetric());
        assert_eq!(d.to_string(), "1:1/4,0:1/2,-1:1/4");
        let half: SpinDistribution = "1/2:1/2,-1/2:1/2".parse().unwrap();
        assert_eq!(half.l(), Half::from_doubled(1));
    }

    #[test]
    fn rejects_bad_sums_and_labels() {
        let err = "1:1/4,0:1/4,-1:1/4".parse::<SpinDistribution>().unwrap_err();
        assert!(err.to_string().contains("3/4"), "{err}");
        assert!("1:1/2,1/2:1/2".parse::<SpinDistribution>().is_err());
        assert!("1:3/2,-1:-1/2".parse::<SpinDistribution>().is_err());
        assert!("1:1/2,1:1/2".parse::<SpinDistribution>().is_err());
        assert!("1-1/2".parse::<SpinDistribution>().is_err());
        assert!("".parse::<SpinDistribution>().is_err());
    }

    #[test]
    fn uniform_weights() {
        let d = SpinDistribution::uniform(Half::from_int(1));
        assert_eq!(d.to_string(), "1:1/3,0:1/3,-1:1/3");
    }
}
