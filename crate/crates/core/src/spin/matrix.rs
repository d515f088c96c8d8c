use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{ComplexExact, RadicalSum, Rational};

/// Square matrix of exact complex entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<ComplexExact>,
}

impl OperatorMatrix {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        OperatorMatrix { dim, entries: vec![ComplexExact::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, ComplexExact::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ComplexExact>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Domain("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            entries.extend(row);
        }
        Ok(OperatorMatrix { dim, entries })
    }

    /// Matrix of small integer real and imaginary parts.
    pub fn from_gaussian(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|&(re, im)| ComplexExact::new(RadicalSum::from_integer(re), RadicalSum::from_integer(im)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn diagonal(values: Vec<ComplexExact>) -> Self {
        let mut m = Self::zero(values.len());
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &ComplexExact {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ComplexExact) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ComplexExact::is_zero)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexExact]> {
        self.entries.chunks(self.dim)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|z| z.scale(factor))
    }

    pub fn scale_complex(&self, factor: &ComplexExact) -> Self {
        self.map(|z| z * factor)
    }

    pub fn mul_i(&self) -> Self {
        self.map(ComplexExact::mul_i)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &OperatorMatrix) -> Self {
        let dim = self.dim * rhs.dim;
        let mut out = Self::zero(dim);
        for (ar, ac) in index_pairs(self.dim) {
            let a = self.get(ar, ac);
            if a.is_zero() {
                continue;
            }
            for (br, bc) in index_pairs(rhs.dim) {
                out.set(ar * rhs.dim + br, ac * rhs.dim + bc, a * rhs.get(br, bc));
            }
        }
        out
    }

    /// Block-diagonal embedding `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &OperatorMatrix) -> Self {
        let dim = self.dim + rhs.dim;
        let mut out = Self::zero(dim);
        for (r, c) in index_pairs(self.dim) {
            out.set(r, c, self.get(r, c).clone());
        }
        for (r, c) in index_pairs(rhs.dim) {
            out.set(self.dim + r, self.dim + c, rhs.get(r, c).clone());
        }
        out
    }

    pub fn checked_mul(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.same_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let sum = out.get(r, c) + &(a * b);
                    out.set(r, c, sum);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.dim() });
        }
        let components = self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v.components())
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(ComplexExact::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect();
        Ok(StateVector::new(components))
    }

    /// First entry where `self` and `other` differ, rendered for reports.
    pub fn first_difference(&self, other: &OperatorMatrix) -> Option<String> {
        if self.dim != other.dim {
            return Some(format!("dimension {} vs {}", self.dim, other.dim));
        }
        index_pairs(self.dim).find_map(|(r, c)| {
            let (a, b) = (self.get(r, c), other.get(r, c));
            (a != b).then(|| format!("entry ({r},{c}): {a} vs {b}"))
        })
    }

    fn same_dim(&self, rhs: &OperatorMatrix) -> Result<()> {
        if self.dim == rhs.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim })
        }
    }

    fn map(&self, f: impl Fn(&ComplexExact) -> ComplexExact) -> Self {
        OperatorMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    fn zip(&self, rhs: &OperatorMatrix, f: impl Fn(&ComplexExact, &ComplexExact) -> ComplexExact) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(OperatorMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

fn index_pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |r| (0..dim).map(move |c| (r, c)))
}

// Operator sugar for matrices already known to share a dimension.
impl Mul<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl Add<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.checked_add(rhs).expect("matrix dimensions agree")
    }
}

impl Sub<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.checked_sub(rhs).expect("matrix dimensions agree")
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.map(|z| -z)
    }
}

/// Row-major grid, one bracketed row per line.
impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Column vector of exact complex components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateVector {
    components: Vec<ComplexExact>,
}

impl StateVector {
    pub fn new(components: Vec<ComplexExact>) -> Self {
        assert!(!components.is_empty(), "state vector must be nonempty");
        StateVector { components }
    }

    /// Unit vector `e_index` in `dim` dimensions.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut components = vec![ComplexExact::zero(); dim];
        components[index] = ComplexExact::one();
        StateVector::new(components)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ComplexExact] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ComplexExact::is_zero)
    }

    pub fn norm_sqr(&self) -> RadicalSum {
        self.components.iter().fold(RadicalSum::zero(), |acc, z| &acc + &z.norm_sqr())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        StateVector::new(self.components.iter().map(|z| z.scale(factor)).collect())
    }

    pub fn scale_complex(&self, factor: &ComplexExact) -> Self {
        StateVector::new(self.components.iter().map(|z| z * factor).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_product() {
        let x = OperatorMatrix::from_gaussian(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]).unwrap();
        assert_eq!(&x * &x, OperatorMatrix::identity(2));
        assert_eq!(x.dagger(), x);
        let k = x.kron(&OperatorMatrix::identity(2));
        assert_eq!(k.dim(), 4);
        assert_eq!(&k * &k, OperatorMatrix::identity(4));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = OperatorMatrix::identity(2);
        let b = OperatorMatrix::identity(3);
        assert_eq!(a.checked_mul(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.apply(&StateVector::basis(3, 0)).is_err());
    }

    #[test]
    fn grid_rendering() {
        let y = OperatorMatrix::from_gaussian(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]).unwrap();
        assert_eq!(y.to_string(), "[0, -i]\n[i, 0]\n");
    }
}
