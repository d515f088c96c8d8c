use crate::error::{domain, Result};
use crate::exactnum::{ComplexExact, RadicalSum, Rational};
use crate::half::Half;

use super::matrix::OperatorMatrix;

/// Largest supported `2l`.
pub const MAX_TWO_L: u32 = 12;

/// A `(2l+1)`-dimensional representation with step parameter `n`.
///
/// Basis index `i` carries `m = l - i`, so index 0 is the top of the ladder.
/// In step-`n` units the projection is `n·m` and the total spin `s = n·l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinSpace {
    two_l: u32,
    n: u32,
}

impl SpinSpace {
    pub fn new(l: Half, n: u32) -> Result<Self> {
        if l.doubled() < 0 {
            return Err(domain(format!("spin l = {l} must be nonnegative")));
        }
        Self::from_doubled(l.doubled() as u32, n)
    }

    pub fn from_doubled(two_l: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("step parameter n must be at least 1"));
        }
        if two_l > MAX_TWO_L {
            return Err(domain(format!("2l = {two_l} exceeds the supported maximum {MAX_TWO_L}")));
        }
        Ok(SpinSpace { two_l, n })
    }

    pub fn two_l(&self) -> u32 {
        self.two_l
    }

    pub fn l(&self) -> Half {
        Half::from_doubled(self.two_l as i32)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.two_l as usize + 1
    }

    /// `m` label of basis index `i`.
    pub fn m(&self, index: usize) -> Half {
        Half::from_doubled(self.two_l as i32 - 2 * index as i32)
    }

    /// Total spin in step-`n` units, `s = n·l`.
    pub fn s(&self) -> Rational {
        Rational::from_frac(i64::from(self.n) * i64::from(self.two_l), 2)
    }

    pub fn labels(&self) -> impl Iterator<Item = Half> + '_ {
        (0..self.dim()).map(|i| self.m(i))
    }
}

/// Full operator set for one space: the `L` family (ℏ = 1) and the step-`n`
/// family `S_i = n·L_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operators {
    pub space: SpinSpace,
    pub l_plus: OperatorMatrix,
    pub l_minus: OperatorMatrix,
    pub l_x: OperatorMatrix,
    pub l_y: OperatorMatrix,
    pub l_z: OperatorMatrix,
    pub l_sq: OperatorMatrix,
    pub s_plus: OperatorMatrix,
    pub s_minus: OperatorMatrix,
    pub s_x: OperatorMatrix,
    pub s_y: OperatorMatrix,
    pub s_z: OperatorMatrix,
    pub s_sq: OperatorMatrix,
}

/// `√((l−m)(l+m+1))`, the raising element from `m` to `m+1`.
pub(crate) fn raising_factor(l: Half, m: Half) -> RadicalSum {
    let (tl, tm) = (i64::from(l.doubled()), i64::from(m.doubled()));
    let q = Rational::from_frac((tl - tm) * (tl + tm + 2), 4);
    RadicalSum::sqrt_rational(&q).expect("raising factor radicand is nonnegative and small")
}

/// `√((l+m)(l−m+1))`, the lowering element from `m` to `m−1`.
pub(crate) fn lowering_factor(l: Half, m: Half) -> RadicalSum {
    raising_factor(l, m - Half::from_int(1))
}

pub fn build_operators(space: SpinSpace) -> Operators {
    let dim = space.dim();
    let mut l_plus = OperatorMatrix::zero(dim);
    for col in 1..dim {
        let m = space.m(col);
        l_plus.set(col - 1, col, ComplexExact::real(raising_factor(space.l(), m)));
    }
    let l_minus = l_plus.dagger();
    let half = Rational::from_frac(1, 2);
    let l_x = (&l_plus + &l_minus).scale(&half);
    // (L⁺ − L⁻)/(2i) = −(i/2)(L⁺ − L⁻)
    let l_y = (&l_minus - &l_plus).mul_i().scale(&half);
    let l_z = OperatorMatrix::diagonal(space.labels().map(|m| ComplexExact::from_rational(m.to_rational())).collect());
    let l_sq = &(&(&l_x * &l_x) + &(&l_y * &l_y)) + &(&l_z * &l_z);

    let n = Rational::from_integer(i64::from(space.n));
    let s_plus = l_plus.scale(&n);
    let s_minus = l_minus.scale(&n);
    let s_x = l_x.scale(&n);
    let s_y = l_y.scale(&n);
    let s_z = l_z.scale(&n);
    let s_sq = &(&(&s_x * &s_x) + &(&s_y * &s_y)) + &(&s_z * &s_z);

    Operators { space, l_plus, l_minus, l_x, l_y, l_z, l_sq, s_plus, s_minus, s_x, s_y, s_z, s_sq }
}

impl Operators {
    /// `(S_x, S_y, S_z)`.
    pub fn s_components(&self) -> [&OperatorMatrix; 3] {
        [&self.s_x, &self.s_y, &self.s_z]
    }
}

/// `AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    Ok(&a.checked_mul(b)? - &b.checked_mul(a)?)
}

/// `AB + BA`.
pub fn anticommutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    Ok(&a.checked_mul(b)? + &b.checked_mul(a)?)
}

/// The Pauli matrices `[σ_x, σ_y, σ_z]`.
pub fn pauli() -> [OperatorMatrix; 3] {
    [
        OperatorMatrix::from_gaussian(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
        OperatorMatrix::from_gaussian(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]),
        OperatorMatrix::from_gaussian(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
    ]
    .map(|m| m.expect("2x2 literal"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(two_l: u32, n: u32) -> SpinSpace {
        SpinSpace::from_doubled(two_l, n).unwrap()
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let ops = build_operators(space(1, 1));
        let half = Rational::from_frac(1, 2);
        let [x, y, z] = pauli();
        assert_eq!(ops.l_x, x.scale(&half));
        assert_eq!(ops.l_y, y.scale(&half));
        assert_eq!(ops.l_z, z.scale(&half));
    }

    #[test]
    fn photon_labels_scale() {
        let ops = build_operators(space(2, 2));
        let expected = OperatorMatrix::diagonal([2, 0, -2].iter().map(|&v| ComplexExact::from_integer(v)).collect());
        assert_eq!(ops.s_z, expected);
        let doublet = build_operators(space(1, 2));
        let expected = OperatorMatrix::diagonal(vec![ComplexExact::from_integer(1), ComplexExact::from_integer(-1)]);
        assert_eq!(doublet.s_z, expected);
    }

    #[test]
    fn standard_ladder_element() {
        let ops = build_operators(space(2, 1));
        // ⟨1,1|L⁺|1,0⟩: row of m=1 is 0, column of m=0 is 1
        let two = RadicalSum::term(Rational::one(), 2).unwrap();
        assert_eq!(ops.l_plus.get(0, 1), &ComplexExact::real(two));
        assert_eq!(ops.l_minus, ops.l_plus.dagger());
    }

    #[test]
    fn pauli_brackets() {
        let [x, y, z] = pauli();
        let two_i = ComplexExact::imag(RadicalSum::from_integer(2));
        assert_eq!(commutator(&x, &y).unwrap(), z.scale_complex(&two_i));
        assert!(anticommutator(&x, &y).unwrap().is_zero());
        assert!(commutator(&x, &x).unwrap().is_zero());
        assert!(commutator(&x, &OperatorMatrix::identity(3)).is_err());
    }

    #[test]
    fn space_guards() {
        assert!(SpinSpace::from_doubled(1, 0).is_err());
        assert!(SpinSpace::from_doubled(13, 1).is_err());
        assert!(SpinSpace::new(Half::from_doubled(-1), 1).is_err());
        assert_eq!(space(3, 1).dim(), 4);
        assert_eq!(space(2, 2).s(), Rational::from_integer(2));
    }
}
