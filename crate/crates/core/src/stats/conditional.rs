use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::SpinDistribution;
use crate::cg::{cg_table, squared_amplitudes, Pair};
use crate::error::{domain, Result};
use crate::exactnum::Rational;
use crate::half::Half;

/// Exact `P(M₁ = a, M₂ = b | M₁ + M₂ = M)` over pairs with positive joint
/// probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalTable {
    pub conditioned_sum: Half,
    pub entries: BTreeMap<Pair, Rational>,
}

impl ConditionalTable {
    pub fn get(&self, m1: Half, m2: Half) -> Rational {
        self.entries.get(&(m1, m2)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> Rational {
        self.entries.values().sum()
    }

    /// Entries in descending `m₁`.
    pub fn descending(&self) -> impl Iterator<Item = (&Pair, &Rational)> {
        self.entries.iter().rev()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .descending()
            .map(|((m1, m2), p)| json!({ "m1": m1, "m2": m2, "probability": p, "value": p.to_f64() }))
            .collect();
        json!({ "M": self.conditioned_sum, "entries": entries })
    }
}

/// `P(m1,m2|M) = p` lines in descending `m₁`.
impl fmt::Display for ConditionalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((m1, m2), p) in self.descending() {
            writeln!(f, "P({m1},{m2}|M={}) = {p}", self.conditioned_sum)?;
        }
        Ok(())
    }
}

/// Probability of the event `M₁ + M₂ = total` for independent draws.
pub fn sum_probability(d1: &SpinDistribution, d2: &SpinDistribution, total: Half) -> Rational {
    d1.support().map(|(a, pa)| pa * &d2.weight(total - a)).sum()
}

/// Independent particles post-selected on their total:
/// `d₁(a)·d₂(b) / Σ_{a′+b′=M} d₁(a′)·d₂(b′)`.
pub fn conditional_given_sum(d1: &SpinDistribution, d2: &SpinDistribution, total: Half) -> Result<ConditionalTable> {
    let mut joint = BTreeMap::new();
    for (a, pa) in d1.support() {
        let pb = d2.weight(total - a);
        if !pb.is_zero() {
            joint.insert((a, total - a), pa * &pb);
        }
    }
    let evidence: Rational = joint.values().sum();
    if evidence.is_zero() {
        return Err(domain(format!("P(M = {total}) is zero; cannot condition on it")));
    }
    let entries = joint.into_iter().map(|(k, p)| (k, &p / &evidence)).collect();
    Ok(ConditionalTable { conditioned_sum: total, entries })
}

/// Squared Clebsch-Gordan amplitudes of `|L, M⟩` for two spin-`l`
/// particles, as a conditional table.
pub fn cg_conditional_oracle(l: Half, total: Half, projection: Half) -> Result<ConditionalTable> {
    let table = cg_table(l)?;
    let state =
        table.state(total, projection).ok_or_else(|| domain(format!("no state |{total},{projection}> for l = {l}")))?;
    Ok(ConditionalTable { conditioned_sum: projection, entries: squared_amplitudes(state)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn h(v: i32) -> Half {
        Half::from_int(v)
    }

    fn weighted() -> SpinDistribution {
        "1:1/4,0:1/2,-1:1/4".parse().unwrap()
    }

    #[test]
    fn uniform_m0() {
        let u = SpinDistribution::uniform(h(1));
        let t = conditional_given_sum(&u, &u, h(0)).unwrap();
        assert_eq!(t.entries.len(), 3);
        assert!(t.entries.values().all(|p| *p == q(1, 3)));
    }

    #[test]
    fn weighted_tables() {
        let p = weighted();
        let t = conditional_given_sum(&p, &p, h(0)).unwrap();
        assert_eq!(t.get(h(0), h(0)), q(2, 3));
        assert_eq!(t.get(h(1), h(-1)), q(1, 6));
        assert_eq!(t.get(h(-1), h(1)), q(1, 6));
        let t = conditional_given_sum(&p, &p, h(2)).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert!(t.get(h(1), h(1)).is_one());
        // (1/4·1/2) / (1/4·1/2 + 1/2·1/4)
        let oracle = &(&q(1, 4) * &q(1, 2)) / &(&(&q(1, 4) * &q(1, 2)) + &(&q(1, 2) * &q(1, 4)));
        let t = conditional_given_sum(&p, &p, h(1)).unwrap();
        assert_eq!(t.get(h(1), h(0)), oracle);
        assert_eq!(t.get(h(0), h(1)), q(1, 2));
    }

    #[test]
    fn impossible_sum() {
        let p = weighted();
        let err = conditional_given_sum(&p, &p, h(5)).unwrap_err();
        assert!(err.to_string().contains("M = 5"), "{err}");
    }

    #[test]
    fn oracle_values() {
        let t = cg_conditional_oracle(h(1), h(2), h(0)).unwrap();
        assert_eq!(t.get(h(0), h(0)), q(2, 3));
        assert_eq!(t.get(h(1), h(-1)), q(1, 6));
        let t = cg_conditional_oracle(h(1), h(2), h(2)).unwrap();
        assert!(t.get(h(1), h(1)).is_one());
        let t = cg_conditional_oracle(h(1), h(2), h(1)).unwrap();
        assert_eq!(t.get(h(1), h(0)), q(1, 2));
        assert_eq!(t.get(h(0), h(1)), q(1, 2));
        assert!(cg_conditional_oracle(h(1), h(3), h(0)).is_err());
    }

    #[test]
    fn evidence() {
        let p = weighted();
        assert_eq!(sum_probability(&p, &p, h(0)), q(3, 8));
    }
}
