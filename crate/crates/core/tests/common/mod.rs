//! Exact integer oracle for even dispersion orders.
//!
//! With `t = 2 - 2cos k = 2 - z - 1/z`, the coefficient of `z^m` in `t^j`
//! is `(-1)^m C(2j, j+m)`. Zone averages keep only `m = 0`, which gives
//! the moments `⟨t^j⟩ = C(2j, j)`. Mode sums keep every `m` that the mode
//! set resolves. Everything stays in integers, so the energies for
//! `aω = k̃^{2n}` come out exactly (as halves of integers).

#![allow(dead_code)]

use lattice_casimir::BoundaryCondition;

pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `⟨t^j⟩` over one axis.
pub fn moment(j: i64) -> i128 {
    binom(2 * j, j)
}

/// `⟨(t_1 + ... + t_axes)^m⟩` over `axes` independent axes.
pub fn sum_moment(axes: usize, m: i64) -> i128 {
    match axes {
        0 => (m == 0) as i128,
        _ => (0..=m)
            .map(|i| binom(m, i) * moment(i) * sum_moment(axes - 1, m - i))
            .sum(),
    }
}

/// `Σ_modes w · t^j`, doubled so that it is always an integer.
fn doubled_mode_sum(bc: BoundaryCondition, nz: i64, j: i64) -> i128 {
    // Σ_l w_l e^{i m k_l} is nz·σ(m) on the resolved harmonics.
    let sigma = |m: i64| -> i128 {
        match bc {
            BoundaryCondition::Periodic => (m % nz == 0) as i128,
            BoundaryCondition::Antiperiodic => {
                if m % nz == 0 {
                    if (m / nz) % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                }
            }
            BoundaryCondition::Phenomenological(_) => (m % (2 * nz) == 0) as i128,
        }
    };
    let mut total = 0i128;
    for m in -j..=j {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        total += sign * binom(2 * j, j + m) * sigma(m);
    }
    2 * nz as i128 * total
}

/// Exact `(e0_sum, e0_int)` for `aω = k̃^{2n}` in `d` dimensions, as doubles
/// built from exact integers.
pub fn even_energies(n: i64, d: usize, bc: BoundaryCondition, nz: i64) -> (f64, f64) {
    let axes = d - 1;
    let mut sum2 = 0i128; // 2 · 2 · e0_sum
    let mut int2 = 0i128; // 2 · 2 · e0_int
    for j in 0..=n {
        let transverse = binom(n, j) * sum_moment(axes, n - j);
        sum2 += transverse * doubled_mode_sum(bc, nz, j);
        int2 += transverse * 2 * nz as i128 * moment(j);
    }
    (sum2 as f64 / 4.0, int2 as f64 / 4.0)
}

pub fn even_casimir(n: i64, d: usize, bc: BoundaryCondition, nz: i64) -> f64 {
    let (s, i) = even_energies(n, d, bc, nz);
    s - i
}
