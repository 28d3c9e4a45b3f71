//! Thickness sweeps, rectangle decompositions of the mode sum, and their
//! CSV/JSON output.

mod emit;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use emit::{emit, read_rows_csv, write_rectangles_csv, write_rows_csv, Format, Payload};

use crate::casimir::{best_effort, casimir_energy, SlabIntegrand};
use crate::error::{invalid, Result};
use crate::model::{lattice_kernel, CasimirResult, DispersionSpec, Geometry};
use crate::modes::{generate_modes, BoundaryCondition};
use crate::quadrature::QuadratureConfig;

/// One [`CasimirResult`] of a thickness sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "Nz")]
    pub nz: usize,
    pub e0_sum: f64,
    pub e0_int: f64,
    pub e_cas: f64,
    pub coeff: f64,
    pub quad_error: f64,
    /// False when the quadrature stopped short of tolerance; the values are
    /// then the best available.
    pub converged: bool,
}

impl SweepRow {
    pub fn new(nz: usize, r: &CasimirResult, converged: bool) -> Self {
        Self {
            nz,
            e0_sum: r.e0_sum,
            e0_int: r.e0_int,
            e_cas: r.e_cas,
            coeff: r.coeff,
            quad_error: r.quad_error,
            converged,
        }
    }
}

/// Casimir energies for every thickness in `nz_values` (ascending, unique).
///
/// Rows are computed concurrently. A row whose quadrature does not converge
/// is kept with `converged = false`; any other error aborts the sweep.
pub fn sweep(
    spec: &DispersionSpec,
    d: usize,
    bc: BoundaryCondition,
    nz_values: &[usize],
    cfg: &QuadratureConfig,
) -> Result<Vec<SweepRow>> {
    if nz_values.is_empty() {
        return Err(invalid("nz", "sweep range is empty"));
    }
    if nz_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("nz", "sweep range must be strictly ascending"));
    }
    let base = Geometry::new(d, nz_values[0])?;
    nz_values
        .par_iter()
        .map(|&nz| {
            let geom = base.with_nz(nz)?;
            let (r, converged) = best_effort(casimir_energy(spec, &geom, bc, cfg))?;
            Ok(SweepRow::new(nz, &r, converged))
        })
        .collect()
}

/// One bar of the mode sum, drawn at its mode position.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub left: f64,
    pub width: f64,
    pub height: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub akz: f64,
    pub omega: f64,
}

/// The discrete mode sum as rectangles against the continuous dispersion
/// curve at a fixed transverse momentum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectangleDecomposition {
    #[serde(rename = "Nz")]
    pub nz: usize,
    pub rects: Vec<Rectangle>,
    pub curve: Vec<CurvePoint>,
    /// `Σ width · height`.
    pub sum_area: f64,
    /// `∫_0^{2π} aω dak_z`.
    pub int_area: f64,
}

/// Minimum number of curve samples.
pub const MIN_CURVE_SAMPLES: usize = 64;

/// Builds the rectangles of the mode sum at transverse momentum `k_perp`.
///
/// Each mode contributes a rectangle of width `2π w / Nz` (so `2π/Nz` for
/// unit weights) and height `aω(k⊥, ak_z)`. Then `sum_area / 2π` is the
/// weighted mode average and `int_area / 2π` the continuum average.
pub fn rectangle_decomposition(
    spec: &DispersionSpec,
    nz: usize,
    bc: BoundaryCondition,
    k_perp: &[f64],
    samples: usize,
    cfg: &QuadratureConfig,
) -> Result<RectangleDecomposition> {
    if samples < MIN_CURVE_SAMPLES {
        return Err(invalid(
            "samples",
            format!("need at least {MIN_CURVE_SAMPLES} curve samples, got {samples}"),
        ));
    }
    if k_perp.len() > 2 || k_perp.iter().any(|k| !k.is_finite()) {
        return Err(invalid(
            "k_perp",
            "expected up to two finite transverse momenta",
        ));
    }
    let x: f64 = k_perp.iter().copied().map(lattice_kernel).sum();
    let modes = generate_modes(bc, nz)?;
    let rects: Vec<Rectangle> = modes
        .iter()
        .map(|m| Rectangle {
            left: m.akz,
            width: 2.0 * PI * m.weight / nz as f64,
            height: spec.eval_momentum_squared(x + lattice_kernel(m.akz)),
        })
        .collect();
    let curve = (0..samples)
        .map(|i| {
            let akz = 2.0 * PI * i as f64 / samples as f64;
            CurvePoint {
                akz,
                omega: spec.eval_momentum_squared(x + lattice_kernel(akz)),
            }
        })
        .collect();
    let sum_area = rects.iter().map(|r| r.width * r.height).sum();
    let integrand = SlabIntegrand::new(*spec, nz, bc, cfg)?;
    let (mean, _) = integrand.kz_mean(x);
    Ok(RectangleDecomposition {
        nz,
        rects,
        curve,
        sum_area,
        int_area: 2.0 * PI * mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn quadratic_sweep_single_remnant() {
        let rows = sweep(
            &DispersionSpec::massless(2),
            3,
            BoundaryCondition::Periodic,
            &[1, 2, 3, 4, 5],
            &cfg(),
        )
        .unwrap();
        assert!((rows[0].e_cas + 1.0).abs() < 1e-12);
        for r in &rows[1..] {
            assert!(r.e_cas.abs() < 1e-10, "Nz={} e_cas={}", r.nz, r.e_cas);
        }
        assert!(rows.iter().all(|r| r.converged));
        assert_eq!(
            rows.iter().map(|r| r.nz).collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn flat_band_sweep_is_zero() {
        let rows = sweep(
            &DispersionSpec::massless(0),
            3,
            BoundaryCondition::Periodic,
            &[1, 2, 3, 4],
            &cfg(),
        )
        .unwrap();
        assert!(rows.iter().all(|r| r.e_cas == 0.0));
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        let spec = DispersionSpec::massless(2);
        assert!(sweep(&spec, 3, BoundaryCondition::Periodic, &[], &cfg()).is_err());
        assert!(sweep(&spec, 3, BoundaryCondition::Periodic, &[2, 1], &cfg()).is_err());
        assert!(sweep(&spec, 3, BoundaryCondition::Periodic, &[0, 1], &cfg()).is_err());
    }

    #[test]
    fn quadratic_two_sites_cancels() {
        let dec = rectangle_decomposition(
            &DispersionSpec::massless(2),
            2,
            BoundaryCondition::Periodic,
            &[],
            256,
            &cfg(),
        )
        .unwrap();
        let heights: Vec<f64> = dec.rects.iter().map(|r| r.height).collect();
        assert_eq!(heights, vec![0.0, 4.0]);
        assert!((dec.sum_area / (2.0 * PI) - 2.0).abs() < 1e-15);
        assert!((dec.int_area / (2.0 * PI) - 2.0).abs() < 1e-14);
        assert_eq!(dec.curve.len(), 256);
    }

    #[test]
    fn linear_single_site_mismatch() {
        let dec = rectangle_decomposition(
            &DispersionSpec::massless(1),
            1,
            BoundaryCondition::Periodic,
            &[0.0, 0.0],
            64,
            &cfg(),
        )
        .unwrap();
        assert_eq!(dec.rects.len(), 1);
        assert_eq!(dec.rects[0].height, 0.0);
        assert_eq!(dec.sum_area, 0.0);
        assert!((dec.int_area / (2.0 * PI) - 4.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn rectangle_rejects_few_samples() {
        let spec = DispersionSpec::massless(2);
        assert!(
            rectangle_decomposition(&spec, 2, BoundaryCondition::Periodic, &[], 10, &cfg())
                .is_err()
        );
    }
}
