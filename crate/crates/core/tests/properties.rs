use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use spinstat::cg::{
    apply_total_lowering, cg_coupling, cg_table, exchange_symmetry, photon_table, scaled_lowering_factor, CGTable,
    Symmetry,
};
use spinstat::exactnum::sqrt_rational;
use spinstat::spin::{build_operators, max_abs_diff, mul2, rotation, scaled, SpinSpace, IDENTITY2};
use spinstat::stats::{cg_conditional_oracle, conditional_given_sum, simulate_conditional, SpinDistribution};
use spinstat::{Half, RadicalSum, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn is_squarefree(n: u64) -> bool {
    (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

prop_compose! {
    fn radical_sum()(terms in prop::collection::vec((-20i64..=20, 1i64..=12, 1u64..=30), 0..=4)) -> RadicalSum {
        terms
            .into_iter()
            .fold(RadicalSum::zero(), |acc, (n, d, r)| &acc + &RadicalSum::term(q(n, d), r).unwrap())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_a_commutative_group(a in radical_sum(), b in radical_sum(), c in radical_sum()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &RadicalSum::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_commutes_associates_distributes(a in radical_sum(), b in radical_sum(), c in radical_sum()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &RadicalSum::one(), a.clone());
    }

    #[test]
    fn single_terms_invert(n in 1i64..=50, d in 1i64..=50, neg: bool, r in 1u64..=30) {
        let a = RadicalSum::term(q(if neg { -n } else { n }, d), r).unwrap();
        prop_assert!((&a * &a.inverse().unwrap()) == RadicalSum::one());
    }

    #[test]
    fn float_square_matches(a in radical_sum()) {
        let f = a.to_f64();
        prop_assert!((a.square().to_f64() - f * f).abs() <= 1e-12 * (1.0 + f * f));
    }

    #[test]
    fn canonical_form(a in radical_sum()) {
        for (r, c) in a.terms() {
            prop_assert!(is_squarefree(r), "radicand {} not squarefree", r);
            prop_assert!(!c.is_zero());
        }
        let rebuilt = a
            .terms()
            .fold(RadicalSum::zero(), |acc, (r, c)| &acc + &RadicalSum::term(c.clone(), r).unwrap());
        prop_assert_eq!(rebuilt, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sqrt_rational_squares_back(n in 0i64..=10_000, d in 1i64..=10_000) {
        let x = q(n, d);
        let root = sqrt_rational(&x).unwrap();
        prop_assert_eq!(root.square(), RadicalSum::from_rational(x.clone()));
        prop_assert!(root.terms().count() <= 1);
        prop_assert!((root.to_f64() - (n as f64 / d as f64).sqrt()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rotation_homomorphism(
        x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
        a in -10.0f64..10.0, b in -10.0f64..10.0, n in 1u32..=2,
    ) {
        let norm = (x * x + y * y + z * z).sqrt();
        prop_assume!(norm > 1e-3);
        let u = [x / norm, y / norm, z / norm];
        let ra = rotation(u.map(|c| c * a), n).unwrap();
        let rb = rotation(u.map(|c| c * b), n).unwrap();
        let rab = rotation(u.map(|c| c * (a + b)), n).unwrap();
        prop_assert!(max_abs_diff(&mul2(&ra, &rb), &rab) < 1e-10);
    }

    #[test]
    fn rotation_period(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0, a in -10.0f64..10.0) {
        let norm = (x * x + y * y + z * z).sqrt();
        prop_assume!(norm > 1e-3);
        let u = [x / norm, y / norm, z / norm];
        let r = |angle: f64, n| rotation(u.map(|c| c * angle), n).unwrap();
        // spinors need 4π, photons 2π
        prop_assert!(max_abs_diff(&r(a + 2.0 * PI, 1), &scaled(&r(a, 1), -1.0)) < 1e-10);
        prop_assert!(max_abs_diff(&r(a + 4.0 * PI, 1), &r(a, 1)) < 1e-10);
        prop_assert!(max_abs_diff(&r(a + 2.0 * PI, 2), &r(a, 2)) < 1e-10);
    }
}

#[test]
fn rotation_about_z_is_diagonal_phase() {
    for n in [1u32, 2] {
        for k in 0..16 {
            let theta = k as f64 * 0.7 - 5.0;
            let u = rotation([0.0, 0.0, theta], n).unwrap();
            let phase = Complex64::from_polar(1.0, f64::from(n) * theta / 2.0);
            let expected = [[phase, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), phase.conj()]];
            assert!(max_abs_diff(&u, &expected) < 1e-12, "n={n} θ={theta}");
        }
    }
    assert!(max_abs_diff(&rotation([0.0; 3], 1).unwrap(), &IDENTITY2) < 1e-15);
}

#[test]
fn raising_adjoint_is_lowering() {
    for two_l in 0..=12 {
        for n in 1..=4 {
            let ops = build_operators(SpinSpace::from_doubled(two_l, n).unwrap());
            assert_eq!(ops.l_plus.dagger(), ops.l_minus);
            assert_eq!(ops.s_plus.dagger(), ops.s_minus);
        }
    }
}

fn all_tables() -> Vec<CGTable> {
    let mut out = Vec::new();
    for a in 0..=6 {
        for b in 0..=6 {
            out.push(cg_coupling(Half::from_doubled(a), Half::from_doubled(b)).unwrap());
        }
    }
    out.push(photon_table());
    out
}

#[test]
fn orthonormal_and_complete() {
    for t in all_tables() {
        let basis = t.product_basis();
        assert_eq!(t.states.len(), basis.len(), "{}⊗{}", t.l1, t.l2);
        for (i, a) in t.states.iter().enumerate() {
            for b in &t.states[i..] {
                let expected = if a == b { RadicalSum::one() } else { RadicalSum::zero() };
                assert_eq!(a.inner(b), expected, "⟨{},{}|{},{}⟩", a.total, a.projection, b.total, b.projection);
            }
        }
        // completeness: Σ_states |⟨m1 m2|L M⟩|² = 1 for every product label
        for &(m1, m2) in &basis {
            let weight = t.states.iter().fold(RadicalSum::zero(), |acc, s| &acc + &s.amplitude(m1, m2).square());
            assert_eq!(weight, RadicalSum::one(), "({m1},{m2}) in {}⊗{}", t.l1, t.l2);
        }
    }
}

#[test]
fn ladder_consistency() {
    for t in all_tables() {
        let step = Half::from_int(t.n as i32);
        for s in &t.states {
            let lowered = apply_total_lowering(&t, s);
            let target = s.projection - step;
            if target.doubled() < -s.total.doubled() {
                assert!(lowered.is_empty(), "|{},{}> must be annihilated", s.total, s.projection);
                continue;
            }
            let next = t.state(s.total, target).expect("next state in multiplet");
            let factor = scaled_lowering_factor(s.total, s.projection, t.n);
            let expected: std::collections::BTreeMap<_, _> =
                next.amplitudes.iter().map(|(k, a)| (*k, a * &factor)).collect();
            assert_eq!(lowered, expected, "|{},{}> in {}⊗{} n={}", s.total, s.projection, t.l1, t.l2, t.n);
        }
    }
}

#[test]
fn matches_racah_formula() {
    #[path = "support/racah.rs"]
    mod racah;
    for a in 0..=6 {
        for b in 0..=6 {
            let t = cg_coupling(Half::from_doubled(a), Half::from_doubled(b)).unwrap();
            for s in &t.states {
                for (m1, m2) in t.product_basis() {
                    let oracle = racah::cg(a, m1.doubled(), b, m2.doubled(), s.total.doubled(), s.projection.doubled());
                    let got = s.amplitude(m1, m2).to_f64();
                    assert!(
                        (got - oracle).abs() < 1e-12,
                        "⟨{m1},{m2}|{},{}⟩ = {got}, Racah {oracle}",
                        s.total,
                        s.projection
                    );
                }
            }
        }
    }
}

#[test]
fn exchange_phase() {
    for two_l in 0..=6 {
        let l = Half::from_doubled(two_l);
        for s in &cg_table(l).unwrap().states {
            let exponent = (s.total.doubled() - 2 * two_l) / 2;
            let expected = if exponent.rem_euclid(2) == 0 { Symmetry::Symmetric } else { Symmetry::Antisymmetric };
            assert_eq!(exchange_symmetry(s, l).unwrap(), expected);
        }
    }
}

#[test]
fn agreement_theorem_every_m() {
    let p: SpinDistribution = "1:1/4,0:1/2,-1:1/4".parse().unwrap();
    let one = Half::from_int(1);
    for m in -2..=2 {
        let m = Half::from_int(m);
        let classical = conditional_given_sum(&p, &p, m).unwrap();
        let quantum = cg_conditional_oracle(one, Half::from_int(2), m).unwrap();
        assert_eq!(classical, quantum, "M = {m}");
    }
}

#[test]
fn binomial_spectrum_matches_every_stretched_multiplet() {
    // p(m) = C(2l, l+m)/4^l reproduces the L = 2l squares for every l
    for two_l in 1..=6i64 {
        let l = Half::from_doubled(two_l as i32);
        let binom = |k: i64| (0..k).fold(1i64, |acc, i| acc * (two_l - i) / (i + 1));
        let pairs = (0..=two_l).map(|k| (Half::from_doubled((two_l - 2 * k) as i32), q(binom(k), 1 << two_l)));
        let p = SpinDistribution::from_pairs(pairs).unwrap();
        let total = l + l;
        for k in 0..=2 * two_l {
            let m = Half::from_doubled((2 * two_l - 2 * k) as i32);
            let classical = conditional_given_sum(&p, &p, m).unwrap();
            let quantum = cg_conditional_oracle(l, total, m).unwrap();
            assert_eq!(classical, quantum, "l = {l}, M = {m}");
        }
    }
}

#[test]
fn monte_carlo_soundness() {
    let p: SpinDistribution = "1:1/4,0:1/2,-1:1/4".parse().unwrap();
    let outliers =
        (0..20u64).filter(|&seed| simulate_conditional(&p, Half::ZERO, 100_000, seed).unwrap().max_abs_z > 4.0).count();
    assert!(outliers <= 1, "{outliers} of 20 runs exceed |z| = 4");
}
