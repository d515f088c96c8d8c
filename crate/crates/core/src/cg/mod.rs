//! Exact Clebsch-Gordan tables by highest-weight construction and ladder
//! lowering.
//!
//! Labels stored in a [`CoupledState`] are in display units: for the standard
//! tables they are the usual `m`, for the photon table every label is
//! multiplied by the step parameter `n = 2`.

mod render;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactnum::{RadicalSum, Rational};
use crate::half::Half;
use crate::spin::lowering_factor;

pub use render::{render_state, render_table_json, render_table_text};

/// Largest `2l` accepted for each coupled particle.
pub const MAX_TWO_L_COUPLING: i32 = 6;

/// Product-basis label `(m₁, m₂)`.
pub type Pair = (Half, Half);

type Amplitudes = BTreeMap<Pair, RadicalSum>;

/// `|L, M⟩` expanded in the product basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledState {
    pub total: Half,
    pub projection: Half,
    /// Only nonzero amplitudes are stored.
    pub amplitudes: BTreeMap<Pair, RadicalSum>,
    /// Step parameter the labels are scaled by.
    pub scale: u32,
}

impl CoupledState {
    pub fn amplitude(&self, m1: Half, m2: Half) -> RadicalSum {
        self.amplitudes.get(&(m1, m2)).cloned().unwrap_or_default()
    }

    /// Amplitudes in descending `m₁` order.
    pub fn terms_descending(&self) -> impl Iterator<Item = (&Pair, &RadicalSum)> {
        self.amplitudes.iter().rev()
    }

    /// `Σ |amplitude|²`.
    pub fn norm_sqr(&self) -> RadicalSum {
        self.amplitudes.values().fold(RadicalSum::zero(), |acc, a| &acc + &a.square())
    }

    /// Real inner product (all amplitudes are real).
    pub fn inner(&self, other: &CoupledState) -> RadicalSum {
        self.amplitudes.iter().fold(RadicalSum::zero(), |acc, (k, a)| match other.amplitudes.get(k) {
            Some(b) => &acc + &(a * b),
            None => acc,
        })
    }
}

/// Every coupled state of a two-particle system, ordered by descending `L`
/// then descending `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGTable {
    /// Single-particle spins in display units.
    pub l1: Half,
    pub l2: Half,
    pub n: u32,
    pub states: Vec<CoupledState>,
}

impl CGTable {
    pub fn state(&self, total: Half, projection: Half) -> Option<&CoupledState> {
        self.states.iter().find(|s| s.total == total && s.projection == projection)
    }

    /// Product-basis labels in display units.
    pub fn product_basis(&self) -> Vec<Pair> {
        let one = |l: Half| {
            let tl = l.doubled();
            let step = 2 * self.n as i32;
            (0..).map(move |k| Half::from_doubled(tl - step * k)).take_while(move |m| m.doubled() >= -tl)
        };
        one(self.l1).flat_map(|m1| one(self.l2).map(move |m2| (m1, m2))).collect()
    }
}

fn check_spin(l: Half) -> Result<()> {
    let tl = l.doubled();
    if !(0..=MAX_TWO_L_COUPLING).contains(&tl) {
        return Err(domain(format!("spin l = {l} outside the supported range 0 ≤ 2l ≤ {MAX_TWO_L_COUPLING}")));
    }
    Ok(())
}

fn in_range(l: Half, m: Half) -> bool {
    m.doubled().abs() <= l.doubled() && (l.doubled() - m.doubled()) % 2 == 0
}

/// Top state `|L, L⟩`: the kernel of `J⁺ = J₁⁺ + J₂⁺` inside the `M = L`
/// subspace, normalized with positive leading (`m₁ = l₁`) coefficient.
///
/// The coefficient of `|μ, L+1−μ⟩` in `J⁺ψ` is
/// `c(μ−1)·a₁(μ−1) + c(μ)·a₂(L−μ)`, which fixes each coefficient from its
/// predecessor through a division by one single-term radical.
fn highest_weight(l1: Half, l2: Half, total: Half) -> Result<BTreeMap<Pair, RadicalSum>> {
    let one = Half::from_int(1);
    let raise = |l: Half, m: Half| lowering_factor(l, m + one);
    let top = if total - l1 >= -l2 { l1 } else { total + l2 };
    let mut coefficients: Vec<(Half, RadicalSum)> = vec![(top, RadicalSum::one())];
    let mut mu = top;
    while in_range(l1, mu - one) && in_range(l2, total - (mu - one)) {
        let current = &coefficients.last().expect("nonempty").1;
        let numerator = -&(current * &raise(l2, total - mu));
        let next = numerator.checked_div(&raise(l1, mu - one))?;
        mu = mu - one;
        coefficients.push((mu, next));
    }
    let norm_sqr = coefficients.iter().fold(RadicalSum::zero(), |acc, (_, c)| &acc + &c.square());
    let norm_sqr = norm_sqr
        .as_rational()
        .ok_or_else(|| Error::Precision(format!("highest-weight norm² {norm_sqr} is irrational")))?;
    let norm = RadicalSum::sqrt_rational(&norm_sqr)?;
    let mut state = BTreeMap::new();
    for (m1, c) in coefficients {
        let amplitude = c.checked_div(&norm)?;
        if !amplitude.is_zero() {
            state.insert((m1, total - m1), amplitude);
        }
    }
    Ok(state)
}

/// `J⁻ = J₁⁻ + J₂⁻` applied to a product-basis expansion (unscaled labels).
fn apply_lowering(l1: Half, l2: Half, state: &BTreeMap<Pair, RadicalSum>) -> BTreeMap<Pair, RadicalSum> {
    let one = Half::from_int(1);
    let mut out: BTreeMap<Pair, RadicalSum> = BTreeMap::new();
    let mut add = |key: Pair, value: RadicalSum| {
        if value.is_zero() {
            return;
        }
        let entry = out.entry(key).or_default();
        *entry = &*entry + &value;
    };
    for (&(m1, m2), c) in state {
        if in_range(l1, m1 - one) {
            add((m1 - one, m2), c * &lowering_factor(l1, m1));
        }
        if in_range(l2, m2 - one) {
            add((m1, m2 - one), c * &lowering_factor(l2, m2));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn couple_unscaled(l1: Half, l2: Half) -> Result<Vec<(Half, Half, Amplitudes)>> {
    let mut states = Vec::new();
    let max = l1 + l2;
    let min = (l1 - l2).abs();
    let mut total = max;
    while total >= min {
        let mut current = highest_weight(l1, l2, total)?;
        let mut projection = total;
        loop {
            states.push((total, projection, current.clone()));
            if projection == -total {
                break;
            }
            let factor = lowering_factor(total, projection);
            let lowered = apply_lowering(l1, l2, &current);
            current = lowered.into_iter().map(|(k, v)| Ok((k, v.checked_div(&factor)?))).collect::<Result<_>>()?;
            projection = projection - Half::from_int(1);
        }
        total = total - Half::from_int(1);
    }
    Ok(states)
}

fn build_table(l1: Half, l2: Half, n: u32) -> Result<CGTable> {
    let states = couple_unscaled(l1, l2)?
        .into_iter()
        .map(|(total, projection, amplitudes)| CoupledState {
            total: total.scale(n),
            projection: projection.scale(n),
            amplitudes: amplitudes.into_iter().map(|((m1, m2), a)| ((m1.scale(n), m2.scale(n)), a)).collect(),
            scale: n,
        })
        .collect();
    Ok(CGTable { l1: l1.scale(n), l2: l2.scale(n), n, states })
}

/// Coupling of two possibly different spins, Condon-Shortley phases.
pub fn cg_coupling(l1: Half, l2: Half) -> Result<CGTable> {
    check_spin(l1)?;
    check_spin(l2)?;
    build_table(l1, l2, 1)
}

/// Full table for two particles of spin `l`.
pub fn cg_table(l: Half) -> Result<CGTable> {
    cg_coupling(l, l)
}

/// Two step-2 doublets: single-particle labels `±1`, totals `2` and `0`.
pub fn photon_table() -> CGTable {
    let half = Half::from_doubled(1);
    build_table(half, half, 2).expect("doublet coupling is exact")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// Classifies `state` under particle exchange and checks the result against
/// the phase `(−1)^(L−2l)`, with `L` and `l` in the state's display units.
pub fn exchange_symmetry(state: &CoupledState, l: Half) -> Result<Symmetry> {
    let swapped = |sign: bool| {
        state.amplitudes.iter().all(|(&(m1, m2), a)| {
            let b = state.amplitude(m2, m1);
            if sign {
                *a == b
            } else {
                *a == -&b
            }
        })
    };
    let observed = match (swapped(true), swapped(false)) {
        (true, _) => Symmetry::Symmetric,
        (false, true) => Symmetry::Antisymmetric,
        (false, false) => {
            return Err(Error::Consistency(format!(
                "|{},{}> is neither symmetric nor antisymmetric",
                state.total, state.projection
            )))
        }
    };
    let exponent_doubled = state.total.doubled() - 2 * l.doubled();
    let step = 2 * state.scale as i32;
    if exponent_doubled % step != 0 {
        return Err(Error::Consistency(format!(
            "phase exponent (L − 2l) = {} is not an integer in step units",
            Half::from_doubled(exponent_doubled)
        )));
    }
    let expected = if (exponent_doubled / step) % 2 == 0 { Symmetry::Symmetric } else { Symmetry::Antisymmetric };
    if observed != expected {
        return Err(Error::Consistency(format!(
            "|{},{}> is {observed:?} but (−1)^(L−2l) predicts {expected:?}",
            state.total, state.projection
        )));
    }
    Ok(observed)
}

/// `|amplitude|²` per product label. Every square must be rational and the
/// squares must sum to one.
pub fn squared_amplitudes(state: &CoupledState) -> Result<BTreeMap<Pair, Rational>> {
    let mut out = BTreeMap::new();
    for (&key, a) in &state.amplitudes {
        let sq = a.square().as_rational().ok_or_else(|| {
            Error::Precision(format!(
                "amplitude {a} of |{},{}> at ({},{}) has an irrational square",
                state.total, state.projection, key.0, key.1
            ))
        })?;
        out.insert(key, sq);
    }
    let total: Rational = out.values().sum();
    if !total.is_one() {
        return Err(Error::Consistency(format!(
            "squared amplitudes of |{},{}> sum to {total}",
            state.total, state.projection
        )));
    }
    Ok(out)
}

/// Generalized ladder element `√((s+m)(s−m+n))` taking `|s, m⟩` to
/// `|s, m−n⟩`, all labels in display units.
pub fn scaled_lowering_factor(s: Half, m: Half, n: u32) -> RadicalSum {
    let (ts, tm, tn) = (i64::from(s.doubled()), i64::from(m.doubled()), 2 * i64::from(n));
    let q = Rational::from_frac((ts + tm) * (ts - tm + tn), 4);
    RadicalSum::sqrt_rational(&q).expect("nonnegative for valid labels")
}

/// `S⁻ = S₁⁻ + S₂⁻` in display units on one state of `table`.
pub fn apply_total_lowering(table: &CGTable, state: &CoupledState) -> BTreeMap<Pair, RadicalSum> {
    let n = table.n;
    let step = Half::from_int(n as i32);
    let valid = |l: Half, m: Half| m.doubled().abs() <= l.doubled();
    let mut out: BTreeMap<Pair, RadicalSum> = BTreeMap::new();
    for (&(m1, m2), c) in &state.amplitudes {
        for (which, l, m) in [(0, table.l1, m1), (1, table.l2, m2)] {
            if !valid(l, m - step) {
                continue;
            }
            let key = if which == 0 { (m1 - step, m2) } else { (m1, m2 - step) };
            let value = c * &scaled_lowering_factor(l, m, n);
            let entry = out.entry(key).or_default();
            *entry = &*entry + &value;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}
