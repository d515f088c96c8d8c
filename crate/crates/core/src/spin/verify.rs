use crate::exactnum::Rational;
use crate::report::VerificationReport;

use super::matrix::{OperatorMatrix, StateVector};
use super::operators::{build_operators, commutator, SpinSpace};

const AXES: [&str; 3] = ["x", "y", "z"];

fn compare(lhs: &OperatorMatrix, rhs: &OperatorMatrix) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Checks `[S_i, S_j] = i·n·S_k` for the three cyclic index triples.
pub fn verify_lie_algebra(space: SpinSpace) -> VerificationReport {
    let ops = build_operators(space);
    let s = ops.s_components();
    let n = Rational::from_integer(i64::from(space.n()));
    let mut report = VerificationReport::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let lhs = commutator(s[i], s[j]).expect("same space");
        let rhs = s[k].mul_i().scale(&n);
        report.record(
            format!(
                "[S_{},S_{}] = {}i·S_{} (2l={}, n={})",
                AXES[i],
                AXES[j],
                space.n(),
                AXES[k],
                space.two_l(),
                space.n()
            ),
            compare(&lhs, &rhs),
        );
    }
    report
}

/// Checks `S² = s(s+n)·I` with `s = n·l`, and `s(s+n) = n²·l(l+1)`.
pub fn verify_casimir(space: SpinSpace) -> VerificationReport {
    let ops = build_operators(space);
    let n = Rational::from_integer(i64::from(space.n()));
    let s = space.s();
    let eigenvalue = &s * &(&s + &n);
    let l = space.l().to_rational();
    let standard = &(&n * &n) * &(&l * &(&l + &Rational::one()));

    let mut report = VerificationReport::new();
    let expected = OperatorMatrix::identity(space.dim()).scale(&eigenvalue);
    report.record(
        format!("S² = s(s+n)·I = {eigenvalue}·I (2l={}, n={})", space.two_l(), space.n()),
        compare(&ops.s_sq, &expected),
    );
    report.record(
        format!("s(s+n) = n²l(l+1) = {standard}"),
        if eigenvalue == standard { Ok(()) } else { Err(format!("{eigenvalue} vs {standard}")) },
    );
    report
}

/// Walks the lowering ladder.
///
/// Checks that `S⁻` shifts every `S_z` eigenvalue by `−n`, that `S⁻` kills
/// only the bottom state, that the chain from the top takes `r = 2l` steps
/// with `s = n·r/2`, and that `S²` on the bottom state reduces to
/// `S_z² − n·S_z`.
pub fn verify_lowering_chain(space: SpinSpace) -> VerificationReport {
    let ops = build_operators(space);
    let dim = space.dim();
    let n = Rational::from_integer(i64::from(space.n()));
    let mut report = VerificationReport::new();
    let tag = format!("(2l={}, n={})", space.two_l(), space.n());

    let shift = &commutator(&ops.s_z, &ops.s_minus).expect("same space") + &ops.s_minus.scale(&n);
    report.record(format!("[S_z,S⁻] = −n·S⁻ {tag}"), compare(&shift, &OperatorMatrix::zero(dim)));

    let mut shift_ok = Ok(());
    for i in 0..dim {
        let lowered = ops.s_minus.apply(&StateVector::basis(dim, i)).expect("same space");
        let lhs = ops.s_z.apply(&lowered).expect("same space");
        let m_s = &n * &space.m(i).to_rational();
        let rhs = lowered.scale(&(&m_s - &n));
        if lhs != rhs {
            shift_ok = Err(format!("state m={}", space.m(i)));
            break;
        }
    }
    report.record(format!("S_z S⁻|m⟩ = (n·m − n) S⁻|m⟩ for every m {tag}"), shift_ok);

    let annihilated: Vec<usize> =
        (0..dim).filter(|&i| ops.s_minus.apply(&StateVector::basis(dim, i)).expect("same space").is_zero()).collect();
    report.record(
        format!("S⁻ annihilates exactly the lowest state {tag}"),
        if annihilated == [dim - 1] { Ok(()) } else { Err(format!("annihilated indices {annihilated:?}")) },
    );

    // count nonzero lowering steps from the top
    let mut state = StateVector::basis(dim, 0);
    let mut steps = 0u32;
    loop {
        let next = ops.s_minus.apply(&state).expect("same space");
        if next.is_zero() || steps > 2 * crate::spin::MAX_TWO_L {
            break;
        }
        state = next;
        steps += 1;
    }
    let r = Rational::from_integer(i64::from(steps));
    // s(s+n) = (s − nr)² − n(s − nr) has the single solution s = n·r/2
    // whenever r ≥ 0, since it reduces to 2ns(1+r) = n²r(1+r).
    let solved = &(&(&n * &n) * &(&r * &(&r + &Rational::one())))
        / &(&Rational::from_integer(2) * &(&n * &(&r + &Rational::one())));
    report.record(
        format!("chain length r = 2l = {} {tag}", space.two_l()),
        if steps == space.two_l() { Ok(()) } else { Err(format!("observed r = {steps}")) },
    );
    report.record(
        format!("s = n·r/2 = {} {tag}", space.s()),
        if solved == space.s() && &(&n * &r) / &Rational::from_integer(2) == space.s() {
            Ok(())
        } else {
            Err(format!("solved s = {solved}, expected {}", space.s()))
        },
    );

    let s = space.s();
    let bottom_m = &n * &space.m(dim - 1).to_rational();
    let ladder_form = &(&bottom_m * &bottom_m) - &(&n * &bottom_m);
    let casimir = &s * &(&s + &n);
    let bottom = StateVector::basis(dim, dim - 1);
    let s_sq_bottom = ops.s_sq.apply(&bottom).expect("same space");
    let expected = bottom.scale(&ladder_form);
    report.record(
        format!("S²|bottom⟩ = (S_z² − nS_z)|bottom⟩ = s(s+n)|bottom⟩ {tag}"),
        if s_sq_bottom == expected && ladder_form == casimir {
            Ok(())
        } else {
            Err(format!("(S_z² − nS_z) gives {ladder_form}, s(s+n) = {casimir}"))
        },
    );
    report
}

/// Checks that `L⁺` and `L⁻` are mutual adjoints.
pub fn verify_ladder_adjoint(space: SpinSpace) -> VerificationReport {
    let ops = build_operators(space);
    let mut report = VerificationReport::new();
    report.record(format!("(L⁺)† = L⁻ (2l={})", space.two_l()), compare(&ops.l_plus.dagger(), &ops.l_minus));
    report
}

/// All exact algebra checks for one space.
pub fn verify_space(space: SpinSpace) -> VerificationReport {
    let mut report = verify_lie_algebra(space);
    report.extend(verify_casimir(space));
    report.extend(verify_lowering_chain(space));
    report.extend(verify_ladder_adjoint(space));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(two_l: u32, n: u32) -> SpinSpace {
        SpinSpace::from_doubled(two_l, n).unwrap()
    }

    #[test]
    fn lie_relations() {
        for (tl, n) in [(1, 1), (2, 2), (4, 4)] {
            let r = verify_lie_algebra(space(tl, n));
            assert!(r.all_pass(), "{r}");
            assert_eq!(r.checks.len(), 3);
        }
    }

    #[test]
    fn casimir_values() {
        // (2l, n, s(s+n)) with s = n·l
        for (tl, n, expected) in [(1, 1, (3, 4)), (1, 2, (3, 1)), (2, 2, (8, 1))] {
            let sp = space(tl, n);
            let s = sp.s();
            let n_r = Rational::from_integer(n as i64);
            assert_eq!(&s * &(&s + &n_r), Rational::new(expected.0, expected.1).unwrap());
            assert!(verify_casimir(sp).all_pass());
        }
    }

    #[test]
    fn chains() {
        for (tl, n, s) in [(1, 2, (1, 1)), (2, 1, (1, 1)), (3, 1, (3, 2))] {
            let sp = space(tl, n);
            assert_eq!(sp.s(), Rational::new(s.0, s.1).unwrap());
            let r = verify_lowering_chain(sp);
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn broken_casimir_is_reported_not_raised() {
        let sp = space(2, 2);
        let ops = build_operators(sp);
        let wrong = OperatorMatrix::identity(3).scale(&Rational::from_integer(6));
        assert!(ops.s_sq.first_difference(&wrong).is_some());
        assert!(compare(&ops.s_sq, &wrong).is_err());
    }
}
