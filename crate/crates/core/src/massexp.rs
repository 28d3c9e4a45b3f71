//! Massive dispersion as a sum of even-order massless ones.
//!
//! On the lattice `√(k̃² + (am)²) = Σ_n c_n (k̃²)^n` with
//! `c_n = binom(1/2, n) (am)^{1-2n}`, convergent while `k̃²/(am)² < 1`
//! everywhere in the zone. The `n = 0` term is a flat band and drops out
//! of the Casimir energy, so the massive Casimir energy is the series of
//! remnant energies of the `s = 2n` dispersions weighted by `c_n`.

use serde::{Deserialize, Serialize};

use crate::casimir::casimir_energy;
use crate::error::{invalid, Result};
use crate::model::{DispersionSpec, Geometry};
use crate::modes::BoundaryCondition;
use crate::quadrature::QuadratureConfig;

/// Default number of expansion orders.
pub const DEFAULT_ORDERS: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    /// Order; the dispersion power is `s = 2n`.
    pub n: u32,
    /// Coefficient of `(k̃²)^n`.
    pub c_n: f64,
}

/// `binom(1/2, n)` by the recurrence `B(n) = B(n-1) (3/2 - n) / n`.
fn half_binomial(n: u32) -> f64 {
    (1..=n).fold(1.0, |b, k| b * (1.5 - k as f64) / k as f64)
}

/// Coefficients `c_1 .. c_K` of the expansion at mass `am`.
pub fn expansion_coefficients(am: f64, orders: u32) -> Result<Vec<ExpansionTerm>> {
    if !(am > 0.0 && am.is_finite()) {
        return Err(invalid("am", format!("expansion needs am > 0, got {am}")));
    }
    if orders == 0 {
        return Err(invalid("orders", "need at least one order"));
    }
    Ok((1..=orders)
        .map(|n| ExpansionTerm {
            n,
            c_n: half_binomial(n) * am.powi(1 - 2 * n as i32),
        })
        .collect())
}

/// `am + Σ_{n=1}^{K} c_n x^n`, the truncated expansion of `√(x + (am)²)`.
pub fn truncated_dispersion(am: f64, x: f64, orders: u32) -> Result<f64> {
    let terms = expansion_coefficients(am, orders.max(1))?;
    let take = orders as usize;
    Ok(am
        + terms
            .iter()
            .take(take)
            .map(|t| t.c_n * x.powi(t.n as i32))
            .sum::<f64>())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCheck {
    pub converges: bool,
    /// `1 - 4d/(am)²`; positive inside the convergence domain.
    pub margin: f64,
}

/// Whether the expansion converges over the whole zone: the largest
/// `k̃²` in `d` dimensions is `4d`.
pub fn convergence_check(am: f64, d: usize) -> ConvergenceCheck {
    let ratio = 4.0 * d as f64 / (am * am);
    let margin = 1.0 - ratio;
    ConvergenceCheck {
        converges: margin > 0.0,
        margin,
    }
}

/// One order of the reconstruction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemnantTerm {
    pub n: u32,
    pub c_n: f64,
    /// Massless Casimir energy at `s = 2n`.
    pub e_cas: f64,
    pub quad_error: f64,
    /// `c_n · e_cas`.
    pub contribution: f64,
}

/// The reconstruction `Σ_{n≤K} c_n E_Cas^{[2n]}` with its per-order terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemnantExpansion {
    pub am: f64,
    pub terms: Vec<RemnantTerm>,
    /// Set when the expansion does not converge over the zone.
    pub divergent: bool,
}

impl RemnantExpansion {
    /// Partial sum over the first `orders` terms.
    pub fn partial_sum(&self, orders: usize) -> f64 {
        self.terms.iter().take(orders).map(|t| t.contribution).sum()
    }

    /// Partial sums for `K = 1, ..., terms.len()`.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.terms
            .iter()
            .map(|t| {
                acc += t.contribution;
                acc
            })
            .collect()
    }

    pub fn quad_error(&self, orders: usize) -> f64 {
        self.terms
            .iter()
            .take(orders)
            .map(|t| (t.c_n * t.quad_error).abs())
            .sum()
    }
}

/// Computes the remnant energies of orders `1..=orders` at mass `am`.
///
/// Outside the convergence domain the terms are still computed and the
/// result is flagged `divergent`.
pub fn remnant_expansion(
    am: f64,
    geom: &Geometry,
    bc: BoundaryCondition,
    orders: u32,
    cfg: &QuadratureConfig,
) -> Result<RemnantExpansion> {
    let coefficients = expansion_coefficients(am, orders)?;
    let divergent = !convergence_check(am, geom.dim()).converges;
    let terms = coefficients
        .iter()
        .map(|t| {
            let r = casimir_energy(&DispersionSpec::massless(2 * t.n), geom, bc, cfg)?;
            Ok(RemnantTerm {
                n: t.n,
                c_n: t.c_n,
                e_cas: r.e_cas,
                quad_error: r.quad_error,
                contribution: t.c_n * r.e_cas,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RemnantExpansion {
        am,
        terms,
        divergent,
    })
}

/// `Σ_{n=1}^{K} c_n E_Cas^{[2n]}`.
pub fn remnant_partial_sum(
    am: f64,
    geom: &Geometry,
    bc: BoundaryCondition,
    orders: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let expansion = remnant_expansion(am, geom, bc, orders, cfg)?;
    Ok(expansion.partial_sum(orders as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_at_mass_five() {
        let c: Vec<f64> = expansion_coefficients(5.0, 3)
            .unwrap()
            .iter()
            .map(|t| t.c_n)
            .collect();
        let want = [0.1, -0.001, 0.00002];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() <= 1e-15 * b.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn coefficients_small_cases() {
        assert_eq!(expansion_coefficients(1.0, 1).unwrap()[0].c_n, 0.5);
        let c = expansion_coefficients(2.0, 2).unwrap();
        assert_eq!(c[0].c_n, 0.25);
        assert_eq!(c[1].c_n, -1.0 / 64.0);
    }

    #[test]
    fn half_binomials() {
        assert_eq!(half_binomial(0), 1.0);
        assert_eq!(half_binomial(1), 0.5);
        assert_eq!(half_binomial(2), -0.125);
        assert_eq!(half_binomial(3), 0.0625);
        assert_eq!(half_binomial(4), -5.0 / 128.0);
    }

    #[test]
    fn signs_alternate_from_second_order() {
        let c = expansion_coefficients(3.0, 10).unwrap();
        for w in c[1..].windows(2) {
            assert!(w[0].c_n * w[1].c_n < 0.0);
        }
    }

    #[test]
    fn zero_mass_rejected() {
        assert!(expansion_coefficients(0.0, 3).is_err());
        assert!(expansion_coefficients(1.0, 0).is_err());
    }

    #[test]
    fn convergence_domain() {
        let c = convergence_check(5.0, 3);
        assert!(c.converges);
        assert!((c.margin - 0.52).abs() < 1e-15);
        assert!(!convergence_check(3.0, 3).converges);
        let c = convergence_check(5.0, 1);
        assert!(c.converges);
        assert!((c.margin - 0.84).abs() < 1e-15);
        assert!(!convergence_check(0.0, 1).converges);
    }

    #[test]
    fn series_reaches_square_root() {
        let am: f64 = 5.0;
        let x = 6.0;
        let exact = (x + am * am).sqrt();
        let approx = truncated_dispersion(am, x, 20).unwrap();
        assert!(((approx - exact) / exact).abs() < 1e-6);
    }

    #[test]
    fn thick_slab_reconstruction_vanishes() {
        let geom = Geometry::new(3, 4).unwrap();
        let v = remnant_partial_sum(
            5.0,
            &geom,
            BoundaryCondition::Periodic,
            3,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(v.abs() < 1e-12);
    }
}
