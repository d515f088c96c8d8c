use num_complex::Complex64;

use crate::error::{domain, Result};

pub type Matrix2 = [[Complex64; 2]; 2];

pub const IDENTITY2: Matrix2 =
    [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];

/// `exp(i·(n/2)·θ·(û·σ))` for the rotation vector `axis_angle = θ·û`.
///
/// `n = 1` is the half-angle spinor representation, `n = 2` the full-angle
/// one. Uses `cos(nθ/2)·I + i·sin(nθ/2)·(û·σ)`.
pub fn rotation(axis_angle: [f64; 3], n: u32) -> Result<Matrix2> {
    if !(1..=2).contains(&n) {
        return Err(domain(format!("rotation is defined for n ∈ {{1, 2}}, got {n}")));
    }
    if axis_angle.iter().any(|c| !c.is_finite()) {
        return Err(domain("rotation vector must be finite"));
    }
    let theta = axis_angle.iter().map(|c| c * c).sum::<f64>().sqrt();
    if theta == 0.0 {
        return Ok(IDENTITY2);
    }
    let [ux, uy, uz] = axis_angle.map(|c| c / theta);
    let half = f64::from(n) * theta / 2.0;
    let (sin, cos) = half.sin_cos();
    let i_sin = Complex64::new(0.0, sin);
    // û·σ = [[uz, ux − i·uy], [ux + i·uy, −uz]]
    Ok([
        [Complex64::new(cos, 0.0) + i_sin * uz, i_sin * Complex64::new(ux, -uy)],
        [i_sin * Complex64::new(ux, uy), Complex64::new(cos, 0.0) - i_sin * uz],
    ])
}

pub fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &Matrix2, b: &Matrix2) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            worst = worst.max((a[r][c] - b[r][c]).norm());
        }
    }
    worst
}

pub fn scaled(m: &Matrix2, factor: f64) -> Matrix2 {
    m.map(|row| row.map(|z| z * factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn full_turn() {
        let minus_i = scaled(&IDENTITY2, -1.0);
        assert!(max_abs_diff(&rotation([0.0, 0.0, 2.0 * PI], 1).unwrap(), &minus_i) < 1e-12);
        assert!(max_abs_diff(&rotation([0.0, 0.0, 2.0 * PI], 2).unwrap(), &IDENTITY2) < 1e-12);
        assert_eq!(rotation([0.0; 3], 1).unwrap(), IDENTITY2);
        assert_eq!(rotation([0.0; 3], 2).unwrap(), IDENTITY2);
    }

    #[test]
    fn unitary() {
        let u = rotation([0.3, -1.2, 0.7], 1).unwrap();
        let dagger = [[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]];
        assert!(max_abs_diff(&mul2(&u, &dagger), &IDENTITY2) < 1e-12);
    }

    #[test]
    fn guards() {
        assert!(rotation([1.0, 0.0, 0.0], 3).is_err());
        assert!(rotation([f64::NAN, 0.0, 0.0], 1).is_err());
    }
}
