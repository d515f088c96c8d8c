//! Commutator and anticommutator checks for pairs of spin observables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{ComplexExact, RadicalSum, Rational};
use crate::report::VerificationReport;

use super::matrix::OperatorMatrix;
use super::operators::{anticommutator, commutator, pauli};

/// Exact predicates for a pair of operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusivity {
    pub commute: bool,
    pub anticommute: bool,
    pub product_zero: bool,
}

impl Exclusivity {
    /// `commute ∧ anticommute ⇒ product_zero`.
    pub fn trichotomy_holds(&self) -> bool {
        !(self.commute && self.anticommute) || self.product_zero
    }
}

pub fn exclusivity_check(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<Exclusivity> {
    Ok(Exclusivity {
        commute: commutator(a, b)?.is_zero(),
        anticommute: anticommutator(a, b)?.is_zero(),
        product_zero: a.checked_mul(b)?.is_zero(),
    })
}

/// `σ_a ⊗ σ_b` with `σ_0 = I`.
pub fn pauli_tensor(a: usize, b: usize) -> OperatorMatrix {
    let single = |k: usize| {
        if k == 0 {
            OperatorMatrix::identity(2)
        } else {
            pauli()[k - 1].clone()
        }
    };
    single(a).kron(&single(b))
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn zero_check(m: &OperatorMatrix) -> std::result::Result<(), String> {
    if m.is_zero() {
        Ok(())
    } else {
        Err(format!("nonzero:\n{m}"))
    }
}

/// Same-axis observables on two independent particles commute.
///
/// Both readings are covered: `σ_z ⊗ I` against `I ⊗ σ_z` on the product
/// space, and a single shared `σ_z` against itself. The control pair
/// `σ_z ⊗ I`, `σ_x ⊗ I` acts on one slot and must not commute.
pub fn check_independent_commute() -> VerificationReport {
    let [x, _, z] = pauli();
    let id = OperatorMatrix::identity(2);
    let mut report = VerificationReport::new();

    let first = z.kron(&id);
    let second = id.kron(&z);
    report.record("[σ_z⊗I, I⊗σ_z] = 0 (distinct tensor slots)", zero_check(&commutator(&first, &second).expect("4x4")));
    report.record("[σ_z, σ_z] = 0 (shared observable)", zero_check(&commutator(&z, &z).expect("2x2")));
    let control = commutator(&first, &x.kron(&id)).expect("4x4");
    report.record(
        "control: [σ_z⊗I, σ_x⊗I] ≠ 0 (same slot)",
        if control.is_zero() { Err("control commutator vanished".into()) } else { Ok(()) },
    );
    report
}

/// Pauli bracket identities behind the singlet identification.
///
/// Verifies `{σ_i, σ_j} = 2δ_ij·I` and `[σ_i, σ_j] = 2i·ε_ijk·σ_k` exactly.
/// The form `iε_ijk·σ_k` without the factor 2 is recorded as a note, not
/// as a failure.
pub fn check_singlet_anticommute() -> VerificationReport {
    let sigma = pauli();
    let names = ["σ_1", "σ_2", "σ_3"];
    let two = Rational::from_integer(2);
    let mut report = VerificationReport::new();

    for i in 0..3 {
        for j in 0..3 {
            let anti = anticommutator(&sigma[i], &sigma[j]).expect("2x2");
            let comm = commutator(&sigma[i], &sigma[j]).expect("2x2");
            if i == j {
                let expected = OperatorMatrix::identity(2).scale(&two);
                report.record(
                    format!("{{{},{}}} = 2I", names[i], names[j]),
                    match anti.first_difference(&expected) {
                        None => Ok(()),
                        Some(w) => Err(w),
                    },
                );
                continue;
            }
            report.record(format!("{{{},{}}} = 0", names[i], names[j]), zero_check(&anti));
            let k = 3 - i - j;
            let coefficient = ComplexExact::imag(RadicalSum::from_integer(2 * levi_civita(i, j, k)));
            let expected = sigma[k].scale_complex(&coefficient);
            report.record(
                format!("[{},{}] = 2iε·{}", names[i], names[j], names[k]),
                match comm.first_difference(&expected) {
                    None => Ok(()),
                    Some(w) => Err(w),
                },
            );
            let swapped = commutator(&sigma[j], &sigma[i]).expect("2x2");
            report.record(
                format!("[{},{}] = −[{},{}]", names[j], names[i], names[i], names[j]),
                match swapped.first_difference(&-&comm) {
                    None => Ok(()),
                    Some(w) => Err(w),
                },
            );
        }
    }

    let unit = ComplexExact::imag(RadicalSum::one());
    let printed_form_holds = commutator(&sigma[0], &sigma[1]).expect("2x2") == sigma[2].scale_complex(&unit);
    report.push_noted(
        "convention: commutator normalization",
        true,
        format!(
            "[σ_i,σ_j] = iε_ijk·σ_k {}; the Pauli matrices satisfy 2iε_ijk·σ_k (iε_ijk holds for σ/2)",
            if printed_form_holds { "holds" } else { "does not hold" }
        ),
    );
    report
}

fn random_combination(rng: &mut ChaCha8Rng) -> OperatorMatrix {
    let mut acc = OperatorMatrix::zero(4);
    for _ in 0..rng.random_range(1..=3) {
        let term = pauli_tensor(rng.random_range(0..4), rng.random_range(0..4));
        let coefficient = ComplexExact::new(
            RadicalSum::from_integer(rng.random_range(-2..=2)),
            RadicalSum::from_integer(rng.random_range(-1..=1)),
        );
        acc = &acc + &term.scale_complex(&coefficient);
    }
    acc
}

/// Random 4×4 operator built from Pauli tensor products.
///
/// Half of the draws are full combinations of `σ_a ⊗ σ_b`; the other half
/// confine the operator to one block through `(σ_0 ± σ_3)/2 ⊗ ·`, which is
/// how pairs that both commute and anticommute arise.
pub fn random_pauli_operator(rng: &mut ChaCha8Rng) -> OperatorMatrix {
    if rng.random_bool(0.5) {
        return random_combination(rng);
    }
    let half = Rational::from_frac(1, 2);
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    let projector = (&pauli_tensor(0, 0) + &pauli_tensor(3, 0).scale(&Rational::from_integer(sign))).scale(&half);
    let mut inner = OperatorMatrix::zero(4);
    for _ in 0..rng.random_range(1..=2) {
        let b = rng.random_range(0..4);
        inner = &inner + &pauli_tensor(0, b).scale(&Rational::from_integer(rng.random_range(-2..=2)));
    }
    &projector * &inner
}

/// Checks the trichotomy on `count` random pairs from [`random_pauli_operator`].
pub fn trichotomy_sweep(count: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut both = 0usize;
    let mut violation: Option<String> = None;
    for index in 0..count {
        let a = random_pauli_operator(&mut rng);
        let b = random_pauli_operator(&mut rng);
        let ex = exclusivity_check(&a, &b).expect("4x4");
        if ex.commute && ex.anticommute {
            both += 1;
        }
        if !ex.trichotomy_holds() && violation.is_none() {
            violation = Some(format!("pair {index}: A =\n{a}B =\n{b}"));
        }
    }
    let mut report = VerificationReport::new();
    report.record(
        format!("commute ∧ anticommute ⇒ AB = 0 on {count} random pairs ({both} in both classes)"),
        match violation {
            None => Ok(()),
            Some(w) => Err(w),
        },
    );
    report
}
