//! Seeded Monte Carlo cross-checks of the exact conditional tables.
//!
//! Samples are split into fixed chunks of [`CHUNK_SIZE`]. Chunk `i` draws
//! from `ChaCha8Rng::seed_from_u64(seed)` with its stream set to `i`, and
//! chunk counts are merged by integer addition, so a report depends only on
//! `(seed, samples, CHUNK_SIZE)` and not on thread scheduling.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{conditional_given_sum, SpinDistribution};
use crate::cg::{cg_table, squared_amplitudes, Pair};
use crate::error::{domain, Error, Result};
use crate::exactnum::Rational;
use crate::half::Half;

pub const GENERATOR: &str = "ChaCha8Rng";
pub const CHUNK_SIZE: u64 = 1 << 16;
/// Largest `|z|` a run may show and still count as agreeing with its oracle.
pub const Z_THRESHOLD: f64 = 4.0;

/// Exact inverse-CDF sampling over a finite rational distribution: a draw
/// is a uniform integer below the common denominator.
struct DiscreteSampler {
    thresholds: Vec<u64>,
    denominator: u64,
}

impl DiscreteSampler {
    fn new(weights: &[Rational]) -> Result<Self> {
        let lcm = weights.iter().fold(num_bigint::BigInt::from(1), |acc, w| acc.lcm(w.denom()));
        let denominator =
            lcm.to_u64().ok_or_else(|| Error::Overflow(format!("common denominator {lcm} exceeds 64 bits")))?;
        let mut running = 0u64;
        let thresholds = weights
            .iter()
            .map(|w| {
                let scaled = (w.numer() * &lcm / w.denom()).to_u64().expect("bounded by denominator");
                running += scaled;
                running
            })
            .collect();
        Ok(DiscreteSampler { thresholds, denominator })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let u = rng.random_range(0..self.denominator);
        self.thresholds.partition_point(|&t| t <= u)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimEntry {
    pub m1: Half,
    pub m2: Half,
    pub count: u64,
    pub empirical: f64,
    pub oracle: Rational,
    pub oracle_value: f64,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub generator: String,
    pub seed: u64,
    pub samples: u64,
    pub chunk_size: u64,
    pub accepted: u64,
    pub entries: Vec<SimEntry>,
    pub max_abs_deviation: f64,
    pub max_abs_z: f64,
    /// Samples whose two outcomes coincide (singlet runs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal_outcomes: Option<u64>,
    /// Frequency of `+` on the first particle (singlet runs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_plus_frequency: Option<f64>,
}

impl SimReport {
    /// At least one accepted sample and every `|z| ≤ Z_THRESHOLD`.
    pub fn passed(&self) -> bool {
        self.accepted > 0 && self.max_abs_z <= Z_THRESHOLD
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.samples as f64
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for SimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generator: {} seed={} chunk={}", self.generator, self.seed, self.chunk_size)?;
        writeln!(f, "samples: {} accepted: {}", self.samples, self.accepted)?;
        for e in &self.entries {
            writeln!(
                f,
                "({},{}) empirical={:.6} oracle={} ({:.6}) z={:.3}",
                e.m1, e.m2, e.empirical, e.oracle, e.oracle_value, e.z
            )?;
        }
        if let Some(eq) = self.equal_outcomes {
            writeln!(f, "equal outcomes: {eq}")?;
        }
        if let Some(p) = self.first_plus_frequency {
            writeln!(f, "first particle + frequency: {p:.6}")?;
        }
        writeln!(f, "max |deviation| = {:.6e}, max |z| = {:.3}", self.max_abs_deviation, self.max_abs_z)
    }
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Runs `per_sample` over all chunks and sums the per-chunk count vectors.
fn run_chunks<F>(samples: u64, seed: u64, width: usize, per_sample: F) -> Vec<u64>
where
    F: Fn(&mut ChaCha8Rng, &mut [u64]) + Sync,
{
    let chunks = samples.div_ceil(CHUNK_SIZE);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = chunk_rng(seed, chunk);
            let mut counts = vec![0u64; width];
            let len = CHUNK_SIZE.min(samples - chunk * CHUNK_SIZE);
            for _ in 0..len {
                per_sample(&mut rng, &mut counts);
            }
            counts
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn z_score(empirical: f64, p: f64, accepted: u64) -> f64 {
    let variance = p * (1.0 - p) / accepted as f64;
    if variance > 0.0 {
        (empirical - p) / variance.sqrt()
    } else if (empirical - p).abs() == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn build_report(
    seed: u64,
    samples: u64,
    accepted: u64,
    oracle: &BTreeMap<Pair, Rational>,
    counts: &BTreeMap<Pair, u64>,
) -> SimReport {
    let mut entries = Vec::new();
    if accepted > 0 {
        for (&(m1, m2), p) in oracle.iter().rev() {
            let count = counts.get(&(m1, m2)).copied().unwrap_or(0);
            let empirical = count as f64 / accepted as f64;
            let oracle_value = p.to_f64();
            entries.push(SimEntry {
                m1,
                m2,
                count,
                empirical,
                oracle: p.clone(),
                oracle_value,
                z: z_score(empirical, oracle_value, accepted),
            });
        }
    }
    let max_abs_deviation = entries.iter().map(|e| (e.empirical - e.oracle_value).abs()).fold(0.0, f64::max);
    let max_abs_z = entries.iter().map(|e| e.z.abs()).fold(0.0, f64::max);
    SimReport {
        generator: GENERATOR.to_string(),
        seed,
        samples,
        chunk_size: CHUNK_SIZE,
        accepted,
        entries,
        max_abs_deviation,
        max_abs_z,
        equal_outcomes: None,
        first_plus_frequency: None,
    }
}

/// Draws `samples` independent pairs from `d × d`, keeps those with
/// `m₁ + m₂ = total`, and compares their frequencies with
/// [`conditional_given_sum`].
///
/// Zero accepted samples is not an error; the report then has no entries
/// and [`SimReport::passed`] is false.
pub fn simulate_conditional(d: &SpinDistribution, total: Half, samples: u64, seed: u64) -> Result<SimReport> {
    if samples == 0 {
        return Err(domain("samples must be at least 1"));
    }
    let oracle = conditional_given_sum(d, d, total)?;
    let outcomes: Vec<(Half, Rational)> = d.support().map(|(m, w)| (m, w.clone())).collect();
    let weights: Vec<Rational> = outcomes.iter().map(|(_, w)| w.clone()).collect();
    let sampler = DiscreteSampler::new(&weights)?;
    let k = outcomes.len();
    let labels: Vec<Half> = outcomes.iter().map(|(m, _)| *m).collect();

    let raw = run_chunks(samples, seed, k * k, |rng, counts| {
        let a = sampler.draw(rng);
        let b = sampler.draw(rng);
        if labels[a] + labels[b] == total {
            counts[a * k + b] += 1;
        }
    });
    let mut counts = BTreeMap::new();
    let mut accepted = 0;
    for (index, &c) in raw.iter().enumerate() {
        if c > 0 {
            counts.insert((labels[index / k], labels[index % k]), c);
            accepted += c;
        }
    }
    Ok(build_report(seed, samples, accepted, &oracle.entries, &counts))
}

/// Same-axis outcomes of the two-spin singlet, drawn from its squared
/// amplitudes. Every sample is kept.
pub fn singlet_sampler(samples: u64, seed: u64) -> Result<SimReport> {
    if samples == 0 {
        return Err(domain("samples must be at least 1"));
    }
    let half = Half::from_doubled(1);
    let table = cg_table(half)?;
    let singlet = table
        .state(Half::ZERO, Half::ZERO)
        .ok_or_else(|| Error::Consistency("spin-1/2 table lacks a singlet".into()))?;
    let joint = squared_amplitudes(singlet)?;
    let pairs: Vec<Pair> = joint.keys().copied().collect();
    let weights: Vec<Rational> = joint.values().cloned().collect();
    let sampler = DiscreteSampler::new(&weights)?;

    let raw = run_chunks(samples, seed, pairs.len(), |rng, counts| {
        counts[sampler.draw(rng)] += 1;
    });
    let counts: BTreeMap<Pair, u64> = pairs.iter().copied().zip(raw.iter().copied()).collect();
    let mut report = build_report(seed, samples, samples, &joint, &counts);
    report.equal_outcomes = Some(counts.iter().filter(|((a, b), _)| a == b).map(|(_, c)| c).sum());
    let plus: u64 = counts.iter().filter(|((a, _), _)| *a == half).map(|(_, c)| c).sum();
    report.first_plus_frequency = Some(plus as f64 / samples as f64);
    Ok(report)
}
