//! Special functions: Γ, ζ, complete elliptic integrals and the period
//! averages of powers of the lattice kernel built from them.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real `x`. Nonpositive integers are poles and return
/// [`Error::GammaPole`].
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(invalid(
            "x",
            format!("gamma argument must be finite, got {x}"),
        ));
    }
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::GammaPole(x));
    }
    // small positive integers exactly
    if x.fract() == 0.0 && x <= 21.0 {
        return Ok((1..x as u64).map(|k| k as f64).product());
    }
    if x < 0.5 {
        // reflection: Γ(x) Γ(1-x) = π / sin(πx)
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut series = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * series)
}

// B_2, B_4, ..., B_14
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Riemann ζ(x) for real `x > 1`, by Euler–Maclaurin summation.
pub fn zeta(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 1.0 || !x.is_finite() {
        return Err(invalid(
            "x",
            format!("zeta requires a finite argument > 1, got {x}"),
        ));
    }
    const N: usize = 10;
    let n = N as f64;
    let head: f64 = (1..N).rev().map(|k| (k as f64).powf(-x)).sum();
    let mut tail = n.powf(1.0 - x) / (x - 1.0) + 0.5 * n.powf(-x);
    // rising factorial x (x+1) ... (x+2j-2) / (2j)! times N^{-x-2j+1}
    let mut factor = x * n.powf(-x - 1.0) / 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j as f64 + 1.0;
        tail += b * factor;
        factor *= (x + 2.0 * j - 1.0) * (x + 2.0 * j) / ((2.0 * j + 1.0) * (2.0 * j + 2.0) * n * n);
    }
    Ok(head + tail)
}

/// Complete elliptic integrals `(K(m), E(m))` given the complementary
/// modulus `k' = √(1 - m)`, by the arithmetic–geometric mean.
///
/// Passing `k'` rather than `m` keeps full accuracy as `m → 1`.
pub fn elliptic_ke(k_prime: f64) -> (f64, f64) {
    debug_assert!((0.0..=1.0).contains(&k_prime));
    if k_prime == 0.0 {
        return (f64::INFINITY, 1.0);
    }
    let m = (1.0 - k_prime) * (1.0 + k_prime);
    let mut a = 1.0f64;
    let mut b = k_prime;
    let mut weight = 0.5;
    let mut deficit = weight * m;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        weight *= 2.0;
        deficit += weight * c * c;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - deficit))
}

/// Period average `⟨(A - 2cos x)^{s/2}⟩` for `A ≥ 2`.
///
/// Uses the three-term recurrence
/// `n J_n = (2n - 1) A J_{n-1} + (n - 1)(4 - A²) J_{n-2}`, seeded with
/// `J_0 = 1, J_1 = A` for even `s` and with the elliptic closed forms of
/// `J_{1/2}` and `J_{-1/2}` for odd `s`. The recurrence runs in the
/// dominant direction for `A > 2` and is stable.
pub fn kernel_power_mean(a: f64, s: u32) -> f64 {
    debug_assert!(a >= 2.0);
    let a = a.max(2.0);
    let gap = (a - 2.0) * (a + 2.0); // A² - 4, kept nonnegative
    let (mut prev, mut cur, mut order) = if s.is_multiple_of(2) {
        (f64::NAN, 1.0, 0.0)
    } else {
        let k_prime = ((a - 2.0) / (a + 2.0)).sqrt();
        let (k, e) = elliptic_ke(k_prime);
        let root = (a + 2.0).sqrt();
        let j_minus_half = 2.0 / PI * k / root;
        let j_half = 2.0 / PI * root * e;
        (j_minus_half, j_half, 0.5)
    };
    let target = s as f64 / 2.0;
    if s.is_multiple_of(2) && s > 0 {
        prev = cur;
        cur = a;
        order = 1.0;
    }
    while order < target {
        let n = order + 1.0;
        // (n - 1)(4 - A²) J_{n-2}; its limit is 0 when A = 2 even though J_{-1/2} diverges
        let lower = if gap == 0.0 {
            0.0
        } else {
            -(n - 1.0) * gap * prev
        };
        let next = ((2.0 * n - 1.0) * a * cur + lower) / n;
        prev = cur;
        cur = next;
        order = n;
    }
    cur
}
