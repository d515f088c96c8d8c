//! Closed-form Clebsch-Gordan coefficients (Racah's formula) in `f64`, with
//! every label given doubled. Independent of the ladder construction.

fn fact(n: i32) -> f64 {
    assert!(n >= 0, "factorial of {n}");
    (1..=n).map(f64::from).product()
}

/// Half of a doubled sum that must be an even integer.
fn h(doubled: i32) -> i32 {
    assert!(doubled % 2 == 0, "half-integer where an integer is required");
    doubled / 2
}

/// `⟨j1 m1; j2 m2 | J M⟩` with all arguments doubled, Condon–Shortley phase.
pub fn cg(j1: i32, m1: i32, j2: i32, m2: i32, j: i32, m: i32) -> f64 {
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return 0.0;
    }
    if j > j1 + j2 || j < (j1 - j2).abs() {
        return 0.0;
    }
    let pre = f64::from(j + 1) * fact(h(j + j1 - j2)) * fact(h(j - j1 + j2)) * fact(h(j1 + j2 - j))
        / fact(h(j1 + j2 + j) + 1);
    let norm =
        fact(h(j + m)) * fact(h(j - m)) * fact(h(j1 - m1)) * fact(h(j1 + m1)) * fact(h(j2 - m2)) * fact(h(j2 + m2));
    let mut sum = 0.0;
    for k in 0..=h(j1 + j2 - j) {
        let args = [h(j1 + j2 - j) - k, h(j1 - m1) - k, h(j2 + m2) - k, h(j - j2 + m1) + k, h(j - j1 - m2) + k];
        if args.iter().any(|&a| a < 0) {
            continue;
        }
        let denom = fact(k) * args.iter().map(|&a| fact(a)).product::<f64>();
        sum += if k % 2 == 0 { 1.0 } else { -1.0 } / denom;
    }
    (pre * norm).sqrt() * sum
}
