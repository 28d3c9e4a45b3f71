//! Dispersion relations, slab geometry and the result record shared by the
//! rest of the crate.
//!
//! Everything is dimensionless: momenta are `ak`, masses `am` and energies
//! `aE`, with the lattice constant `a` never appearing at runtime.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Nearest-neighbour lattice kernel `2 - 2 cos(ak)`, i.e. the square of one
/// component of the lattice momentum.
///
/// Evaluated as `4 sin^2(ak/2)` to avoid cancellation near the zone centre.
#[inline]
pub fn lattice_kernel(ak: f64) -> f64 {
    let h = (0.5 * ak).sin();
    4.0 * h * h
}

/// A power-law lattice dispersion `aω = [Σ (2 - 2cos ak_i) + (am)^2]^{s/2}`.
///
/// `s = 0` is the flat band (`aω ≡ 1`). The degeneracy `g` multiplies every
/// zero-point energy computed from this dispersion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionSpec {
    s: u32,
    am: f64,
    g: u32,
}

impl DispersionSpec {
    pub fn new(s: u32, am: f64, g: u32) -> Result<Self> {
        if !am.is_finite() || am < 0.0 {
            return Err(invalid(
                "am",
                format!("mass must be finite and >= 0, got {am}"),
            ));
        }
        if g == 0 {
            return Err(invalid("g", "degeneracy must be >= 1"));
        }
        Ok(Self { s, am, g })
    }

    /// Massless dispersion of order `s` with a single branch.
    pub fn massless(s: u32) -> Self {
        Self { s, am: 0.0, g: 1 }
    }

    /// Massive linear (`s = 1`) dispersion `√(k̃² + (am)²)`.
    pub fn massive(am: f64) -> Result<Self> {
        Self::new(1, am, 1)
    }

    pub fn with_degeneracy(self, g: u32) -> Result<Self> {
        Self::new(self.s, self.am, g)
    }

    pub fn order(&self) -> u32 {
        self.s
    }

    pub fn mass(&self) -> f64 {
        self.am
    }

    pub fn degeneracy(&self) -> u32 {
        self.g
    }

    pub fn is_flat(&self) -> bool {
        self.s == 0
    }

    /// True when the dispersion is a polynomial in `cos ak_i`, so that every
    /// Brillouin-zone average of it is a trigonometric polynomial.
    pub fn is_trig_polynomial(&self) -> bool {
        self.s.is_multiple_of(2)
    }

    /// Evaluates `aω` given the squared lattice momentum `x = Σ(2 - 2cos ak_i)`.
    #[inline]
    pub fn eval_momentum_squared(&self, x: f64) -> f64 {
        let base = x + self.am * self.am;
        power_half(base, self.s)
    }

    /// Evaluates `aω` at the lattice momentum `ak` (any number of axes).
    pub fn eval(&self, ak: &[f64]) -> f64 {
        let x: f64 = ak.iter().copied().map(lattice_kernel).sum();
        self.eval_momentum_squared(x)
    }
}

/// `base^{s/2}` for a nonnegative base, exact for even `s`.
#[inline]
pub(crate) fn power_half(base: f64, s: u32) -> f64 {
    let base = base.max(0.0);
    let whole = base.powi((s / 2) as i32);
    if s.is_multiple_of(2) {
        whole
    } else {
        whole * base.sqrt()
    }
}

/// Evaluates the lattice dispersion at `ak`. See [`DispersionSpec::eval`].
pub fn eval_lattice_dispersion(spec: &DispersionSpec, ak: &[f64]) -> f64 {
    spec.eval(ak)
}

/// Slab geometry: `d` spatial dimensions, the last of which (`z`) is compact
/// with `nz` sites. The remaining `d - 1` directions are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    d: usize,
    nz: usize,
}

impl Geometry {
    pub fn new(d: usize, nz: usize) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(invalid(
                "d",
                format!("dimension must be 1, 2 or 3, got {d}"),
            ));
        }
        if nz == 0 {
            return Err(invalid("nz", "slab thickness must be >= 1"));
        }
        Ok(Self { d, nz })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn transverse_dim(&self) -> usize {
        self.d - 1
    }

    pub fn with_nz(self, nz: usize) -> Result<Self> {
        Self::new(self.d, nz)
    }
}

/// Zero-point energies and Casimir energy per transverse lattice site.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasimirResult {
    /// `aE_0^sum`: zero-point energy with discrete `ak_z`.
    pub e0_sum: f64,
    /// `aE_0^int`: zero-point energy with continuous `ak_z`.
    pub e0_int: f64,
    /// `aE_Cas = e0_sum - e0_int`.
    pub e_cas: f64,
    /// `Nz^α · e_cas` with `α = (d - 1) + s`.
    pub coeff: f64,
    /// Estimated quadrature error on `e_cas`.
    pub quad_error: f64,
}

/// Exponent `α = (d - 1) + s` of the Casimir coefficient.
pub fn coefficient_exponent(d: usize, s: u32) -> i32 {
    (d as i32 - 1) + s as i32
}

/// `Nz^α · e_cas`.
pub fn casimir_coefficient(nz: usize, d: usize, s: u32, e_cas: f64) -> f64 {
    (nz as f64).powi(coefficient_exponent(d, s)) * e_cas
}
