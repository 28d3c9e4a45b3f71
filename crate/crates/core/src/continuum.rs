//! Continuum Casimir energy of a power-law dispersion with a periodic
//! boundary, from zeta-function and dimensional regularization:
//!
//! ```text
//! E^[s] = g (4π)^{-(d-1)/2} π^{-1/2} Γ((d+s)/2) ζ(d+s) / Γ(-s/2) · (2/L)^{d-1+s}
//! ```
//!
//! `g = 2` is the two-branch normalization; `g = 1` matches the lattice
//! results of [`crate::casimir`] with a single branch. For even `s`,
//! `Γ(-s/2)` is a pole and the energy vanishes identically.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuumParams {
    /// Dispersion order.
    pub s: u32,
    /// Spatial dimension.
    pub d: u32,
    /// Period length; compare with a lattice slab at `L = Nz`.
    pub l: f64,
    /// Branch factor.
    pub g: u32,
}

impl ContinuumParams {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(invalid("d", "dimension must be >= 1"));
        }
        if self.d + self.s < 2 {
            return Err(invalid("s", "need d + s >= 2 for ζ(d+s) to converge"));
        }
        if !(self.l > 0.0 && self.l.is_finite()) {
            return Err(invalid(
                "L",
                format!("period must be positive, got {}", self.l),
            ));
        }
        if self.g == 0 {
            return Err(invalid("g", "branch factor must be >= 1"));
        }
        Ok(())
    }

    /// Exponent `d - 1 + s` of the `L` power law.
    pub fn exponent(&self) -> i32 {
        self.d as i32 - 1 + self.s as i32
    }
}

/// Γ(x); poles at nonpositive integers come back as [`Error::GammaPole`].
pub fn gamma_fn(x: f64) -> Result<f64> {
    special::gamma(x)
}

/// Riemann ζ(x) for `x > 1`.
pub fn zeta_fn(x: f64) -> Result<f64> {
    special::zeta(x)
}

/// Continuum Casimir energy for `p`. Exactly `0.0` for even `s`.
pub fn continuum_casimir(p: &ContinuumParams) -> Result<f64> {
    p.validate()?;
    let inverse_gamma = match gamma_fn(-(p.s as f64) / 2.0) {
        Ok(v) => 1.0 / v,
        Err(Error::GammaPole(_)) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let d = p.d as f64;
    let ds = (p.d + p.s) as f64;
    let prefactor = p.g as f64 * (4.0 * PI).powf(-(d - 1.0) / 2.0) / PI.sqrt();
    let value = prefactor
        * gamma_fn(ds / 2.0)?
        * zeta_fn(ds)?
        * inverse_gamma
        * (2.0 / p.l).powi(p.exponent());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(s: u32, d: u32, l: f64, g: u32) -> ContinuumParams {
        ContinuumParams { s, d, l, g }
    }

    #[test]
    fn even_orders_vanish_exactly() {
        for s in (2..=12).step_by(2) {
            for d in 1..=3 {
                for l in [0.5, 1.0, 7.0] {
                    assert_eq!(continuum_casimir(&params(s, d, l, 2)).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn linear_three_dimensional() {
        let two_branch = continuum_casimir(&params(1, 3, 1.0, 2)).unwrap();
        assert!((two_branch + PI.powi(2) / 45.0).abs() < 1e-14);
        let one_branch = continuum_casimir(&params(1, 3, 1.0, 1)).unwrap();
        assert!((one_branch + PI.powi(2) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn linear_one_dimensional_is_minus_pi_over_six() {
        // d = 1, s = 1, g = 1: the textbook -π/(6L)
        let v = continuum_casimir(&params(1, 1, 1.0, 1)).unwrap();
        assert!((v + PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_invalid() {
        assert!(continuum_casimir(&params(1, 0, 1.0, 1)).is_err());
        assert!(continuum_casimir(&params(1, 3, 0.0, 1)).is_err());
        assert!(continuum_casimir(&params(1, 3, 1.0, 0)).is_err());
        assert!(continuum_casimir(&params(0, 1, 1.0, 1)).is_err());
    }

    proptest! {
        #[test]
        fn power_law_in_period(s in 1u32..8, d in 1u32..4, l in 0.1f64..50.0) {
            let base = continuum_casimir(&params(s, d, 1.0, 1)).unwrap();
            let p = params(s, d, l, 1);
            let scaled = continuum_casimir(&p).unwrap() * l.powi(p.exponent());
            prop_assert!((scaled - base).abs() <= 1e-12 * base.abs().max(1e-300));
        }
    }
}
