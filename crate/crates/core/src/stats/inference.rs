//! Recovering a single-particle distribution from squared coupling
//! amplitudes.
//!
//! Given target conditional tables `T_M`, find a symmetric `p` with
//! `conditional_given_sum(p, p, M) = T_M` for every target. Pairs
//! `(l, l−k)` and `(l−1, l−k+1)` share the total `M = 2l − k`, so
//!
//! ```text
//! p(l)·p(l−k) / (p(l−1)·p(l−k+1)) = T(l, l−k) / T(l−1, l−k+1) = R_k
//! ```
//!
//! With `p(l) = 1` and `p(l−1) = x` this gives `p(l−k) = c_k·x^k`,
//! `c_k = R_k·c_{k−1}`, and symmetry `p(−l) = p(l)` pins `x` to the unique
//! positive root of `c_{2l}·x^{2l} = 1`. When that root is irrational or the
//! targets are not of this shape, a rational grid search takes over.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use super::{cg_conditional_oracle, conditional_given_sum, ConditionalTable, SpinDistribution};
use crate::error::{domain, Result};
use crate::exactnum::Rational;
use crate::half::Half;

/// Largest common denominator tried by the grid search.
pub const GRID_DENOMINATOR: i64 = 64;

/// Largest `2l` accepted by [`infer_distribution`].
pub const MAX_TWO_L_INFERENCE: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InferenceMethod {
    ClosedForm,
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InferenceResult {
    pub distribution: SpinDistribution,
    pub exact_match: bool,
    /// Whether no other symmetric distribution meets the targets exactly.
    pub unique: bool,
    /// Sum of squared differences against the targets; zero iff exact.
    pub residual: Rational,
    pub method: InferenceMethod,
}

impl InferenceResult {
    pub fn to_json(&self) -> Value {
        let weights: Vec<Value> =
            self.distribution.descending().iter().map(|(m, w)| json!({ "m": m, "probability": w })).collect();
        json!({
            "distribution": self.distribution.to_string(),
            "weights": weights,
            "exact": self.exact_match,
            "unique": self.unique,
            "residual": self.residual,
            "method": self.method,
        })
    }
}

/// Sum over targets and pairs of `(candidate − target)²`; pairs missing on
/// either side count as zero, as does a candidate that cannot reach `M`.
pub fn residual(p: &SpinDistribution, targets: &[ConditionalTable]) -> Rational {
    targets
        .iter()
        .map(|target| {
            let candidate = conditional_given_sum(p, p, target.conditioned_sum).map(|t| t.entries).unwrap_or_default();
            let keys: BTreeSet<_> = candidate.keys().chain(target.entries.keys()).collect();
            keys.into_iter()
                .map(|k| {
                    let diff = &candidate.get(k).cloned().unwrap_or_default()
                        - &target.entries.get(k).cloned().unwrap_or_default();
                    &diff * &diff
                })
                .sum::<Rational>()
        })
        .sum()
}

fn closed_form(l: Half, targets: &[ConditionalTable]) -> Option<SpinDistribution> {
    let one = Half::from_int(1);
    let two_l = l.doubled();
    if two_l == 0 {
        return SpinDistribution::from_pairs([(Half::ZERO, Rational::one())]).ok();
    }
    let by_sum: BTreeMap<Half, &ConditionalTable> = targets.iter().map(|t| (t.conditioned_sum, t)).collect();

    // c[k] multiplies x^k in p(l − k)
    let mut c = vec![Rational::one(), Rational::one()];
    for k in 2..=two_l {
        let step = Half::from_int(k);
        let target = by_sum.get(&(l + l - step))?;
        let outer = target.get(l, l - step);
        let inner = target.get(l - one, l - step + one);
        if outer.is_zero() || inner.is_zero() {
            return None;
        }
        let ratio = &outer / &inner;
        c.push(&ratio * &c[k as usize - 1]);
    }
    let x = c[two_l as usize].recip().ok()?.exact_root(two_l as u32)?;
    let unnormalized: Vec<(Half, Rational)> =
        (0..=two_l).map(|k| (l - Half::from_int(k), &c[k as usize] * &x.pow(k))).collect();
    let total: Rational = unnormalized.iter().map(|(_, w)| w.clone()).sum();
    let p = SpinDistribution::from_pairs(unnormalized.into_iter().map(|(m, w)| (m, &w / &total))).ok()?;
    p.is_symmetric().then_some(p)
}

/// All symmetric distributions on `l, …, −l` whose weights are multiples
/// of `1/d` for some `d ≤ GRID_DENOMINATOR`, deduplicated, in order of
/// first appearance.
fn symmetric_grid(l: Half) -> Vec<SpinDistribution> {
    let two_l = l.doubled();
    // nonnegative labels, each counted twice unless it is m = 0
    let labels: Vec<(Half, i64)> = (0..=two_l / 2)
        .map(|k| {
            let m = Half::from_doubled(two_l - 2 * k);
            (m, if m == Half::ZERO { 1 } else { 2 })
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in 1..=GRID_DENOMINATOR {
        let mut counts = vec![0i64; labels.len()];
        enumerate(&labels, 0, d, &mut counts, &mut |counts| {
            let weights: Vec<Rational> = counts.iter().map(|&c| Rational::from_frac(c, d)).collect();
            if seen.insert(weights.clone()) {
                let pairs = labels.iter().zip(&weights).flat_map(|((m, mult), w)| {
                    let mut v = vec![(*m, w.clone())];
                    if *mult == 2 {
                        v.push((-*m, w.clone()));
                    }
                    v
                });
                if let Ok(p) = SpinDistribution::from_pairs(pairs) {
                    out.push(p);
                }
            }
        });
    }
    out
}

fn enumerate(
    labels: &[(Half, i64)],
    index: usize,
    remaining: i64,
    counts: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]),
) {
    if index == labels.len() {
        if remaining == 0 {
            visit(counts);
        }
        return;
    }
    let mult = labels[index].1;
    for c in 0..=remaining / mult {
        counts[index] = c;
        enumerate(labels, index + 1, remaining - c * mult, counts, visit);
    }
    counts[index] = 0;
}

/// Best symmetric spin-`l` distribution for the given targets.
pub fn fit_symmetric(l: Half, targets: &[ConditionalTable]) -> InferenceResult {
    if let Some(p) = closed_form(l, targets) {
        let r = residual(&p, targets);
        if r.is_zero() {
            return InferenceResult {
                distribution: p,
                exact_match: true,
                unique: true,
                residual: r,
                method: InferenceMethod::ClosedForm,
            };
        }
    }
    let mut best: Option<(Rational, SpinDistribution)> = None;
    let mut exact_count = 0usize;
    for p in symmetric_grid(l) {
        let r = residual(&p, targets);
        if r.is_zero() {
            exact_count += 1;
        }
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, p));
        }
    }
    let (r, p) = best.expect("grid contains at least the uniform distribution");
    InferenceResult {
        exact_match: r.is_zero(),
        unique: exact_count == 1,
        distribution: p,
        residual: r,
        method: InferenceMethod::Grid,
    }
}

/// Distribution whose independent pairs, post-selected on `M`, reproduce
/// the squared amplitudes of the stretched multiplet `L = 2l` at every `M`.
pub fn infer_distribution(l: Half, total: Half) -> Result<InferenceResult> {
    if !(0..=MAX_TWO_L_INFERENCE).contains(&l.doubled()) {
        return Err(domain(format!("inference supports 0 ≤ 2l ≤ {MAX_TWO_L_INFERENCE}, got l = {l}")));
    }
    if total != l + l {
        return Err(domain(format!("inference targets the stretched multiplet L = 2l = {}, got L = {total}", l + l)));
    }
    let targets = multiplet_targets(l, total)?;
    Ok(fit_symmetric(l, &targets))
}

/// Squared-amplitude tables for every `M` of the multiplet `L`.
pub fn multiplet_targets(l: Half, total: Half) -> Result<Vec<ConditionalTable>> {
    let tl = total.doubled();
    (0..=tl).map(|k| cg_conditional_oracle(l, total, Half::from_doubled(tl - 2 * k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> Half {
        Half::from_doubled(twice)
    }

    #[test]
    fn deuteron_spectrum() {
        let r = infer_distribution(h(2), h(4)).unwrap();
        assert!(r.exact_match && r.unique);
        assert_eq!(r.method, InferenceMethod::ClosedForm);
        assert_eq!(r.distribution.to_string(), "1:1/4,0:1/2,-1:1/4");
        assert!(r.residual.is_zero());
    }

    #[test]
    fn spin_half() {
        let r = infer_distribution(h(1), h(2)).unwrap();
        assert!(r.exact_match && r.unique);
        assert_eq!(r.distribution.to_string(), "1/2:1/2,-1/2:1/2");
    }

    #[test]
    fn uniform_fails_the_m0_constraint() {
        let targets = multiplet_targets(h(2), h(4)).unwrap();
        let uniform = SpinDistribution::uniform(h(2));
        assert!(residual(&uniform, &targets).is_positive());
        let m0 = [targets[2].clone()];
        assert_eq!(m0[0].conditioned_sum, Half::ZERO);
        // (1/3 − 2/3)² + 2·(1/3 − 1/6)²
        assert_eq!(residual(&uniform, &m0), Rational::new(1, 6).unwrap());
    }

    #[test]
    fn preconditions() {
        assert!(infer_distribution(h(2), h(2)).is_err());
        assert!(infer_distribution(h(5), h(10)).is_err());
    }

    #[test]
    fn singlet_targets_pin_the_uniform_spectrum() {
        // |0,0> of two spin-1 particles: 1/3 on each M = 0 pair
        let targets = multiplet_targets(h(2), h(0)).unwrap();
        let r = fit_symmetric(h(2), &targets);
        assert!(r.exact_match && r.unique);
        assert_eq!(r.distribution.to_string(), "1:1/3,0:1/3,-1:1/3");
    }

    #[test]
    fn irrational_root_falls_back_to_grid() {
        // p(1)²/p(0)² = 2 has no rational solution
        let mut t = ConditionalTable { conditioned_sum: h(0), entries: BTreeMap::new() };
        t.entries.insert((h(2), h(-2)), Rational::new(2, 5).unwrap());
        t.entries.insert((h(0), h(0)), Rational::new(1, 5).unwrap());
        t.entries.insert((h(-2), h(2)), Rational::new(2, 5).unwrap());
        let r = fit_symmetric(h(2), &[t]);
        assert_eq!(r.method, InferenceMethod::Grid);
        assert!(!r.exact_match);
        assert!(r.residual.is_positive());
    }

    #[test]
    fn inconsistent_targets_report_a_residual() {
        let mut t = ConditionalTable { conditioned_sum: h(0), entries: BTreeMap::new() };
        t.entries.insert((h(2), h(-2)), Rational::new(1, 2).unwrap());
        t.entries.insert((h(-2), h(2)), Rational::new(1, 4).unwrap());
        t.entries.insert((h(0), h(0)), Rational::new(1, 4).unwrap());
        let r = fit_symmetric(h(2), &[t]);
        assert!(!r.exact_match);
        assert!(r.residual.is_positive());
        assert!(!r.unique);
    }

    #[test]
    fn grid_has_no_duplicates() {
        let grid = symmetric_grid(h(2));
        let distinct: BTreeSet<String> = grid.iter().map(|p| p.to_string()).collect();
        assert_eq!(distinct.len(), grid.len());
    }
}
