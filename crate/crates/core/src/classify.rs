//! Sorting a dispersion's thickness dependence into the four behavior
//! types: no effect, remnant, lasting and damping.
//!
//! The sweep is `Nz = 1..=nz_max`. Exact zeros only occur for even `s`,
//! where every quadrature is a trigonometric polynomial and vanishing
//! energies are zero up to rounding. For other dispersions a tiny `e_cas`
//! is a decaying tail, so only the coefficient tail is examined.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::DispersionSpec;
use crate::modes::BoundaryCondition;
use crate::quadrature::QuadratureConfig;
use crate::report::{sweep, SweepRow};

/// Smallest sweep that gives a meaningful tail.
pub const MIN_NZ_MAX: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Absolute size below which `e_cas` counts as zero.
    pub eps_zero: f64,
    /// Relative tolerance on the coefficient tail.
    pub delta_tail: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            eps_zero: 1e-9,
            delta_tail: 1e-2,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_zero >= 0.0 && self.eps_zero.is_finite()) {
            return Err(invalid(
                "eps_zero",
                format!("must be finite and >= 0, got {}", self.eps_zero),
            ));
        }
        if !(self.delta_tail > 0.0 && self.delta_tail < 1.0) {
            return Err(invalid(
                "delta_tail",
                format!("must lie in (0, 1), got {}", self.delta_tail),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BehaviorKind {
    NoEffect,
    Lasting,
    Damping,
    Remnant,
    /// The coefficient tail neither settled nor vanished.
    Unclassified,
}

impl fmt::Display for BehaviorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NoEffect => "NoEffect",
            Self::Lasting => "Lasting",
            Self::Damping => "Damping",
            Self::Remnant => "Remnant",
            Self::Unclassified => "Unclassified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: BehaviorKind,
    /// Largest `Nz` with a nonzero energy. Remnant only.
    pub n_max: Option<usize>,
    /// Extrapolated Casimir coefficient. Lasting only.
    pub coeff_limit: Option<f64>,
    /// The sweep the decision was based on.
    pub rows: Vec<SweepRow>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(n) = self.n_max {
            write!(f, " n_max={n}")?;
        }
        if let Some(c) = self.coeff_limit {
            write!(f, " coeff_limit={c:.8}")?;
        }
        Ok(())
    }
}

/// Sweeps `Nz = 1..=nz_max` and classifies the result.
pub fn classify_behavior(
    spec: &DispersionSpec,
    d: usize,
    bc: BoundaryCondition,
    nz_max: usize,
    cfg: &QuadratureConfig,
    thresholds: &Thresholds,
) -> Result<Classification> {
    if nz_max < MIN_NZ_MAX {
        return Err(invalid(
            "nz_max",
            format!("need nz_max >= {MIN_NZ_MAX}, got {nz_max}"),
        ));
    }
    thresholds.validate()?;
    cfg.validate()?;
    let nz: Vec<usize> = (1..=nz_max).collect();
    let rows = sweep(spec, d, bc, &nz, cfg)?;
    Ok(classify_rows(spec, rows, thresholds))
}

/// Classifies an existing sweep (ascending `Nz`, at least two rows).
pub fn classify_rows(
    spec: &DispersionSpec,
    rows: Vec<SweepRow>,
    thresholds: &Thresholds,
) -> Classification {
    let outcome = |kind, n_max, coeff_limit, rows| Classification {
        kind,
        n_max,
        coeff_limit,
        rows,
    };

    if spec.is_trig_polynomial() {
        let last_nonzero = rows
            .iter()
            .rposition(|r| r.e_cas.abs() >= thresholds.eps_zero)
            .map(|i| rows[i].nz);
        match last_nonzero {
            None => return outcome(BehaviorKind::NoEffect, None, None, rows),
            Some(n) if n < rows.last().map_or(0, |r| r.nz) => {
                return outcome(BehaviorKind::Remnant, Some(n), None, rows)
            }
            Some(_) => {}
        }
    }

    let tail_start = rows.len() - (rows.len() / 4).max(2);
    let tail = &rows[tail_start..];
    let scale = rows.iter().map(|r| r.coeff.abs()).fold(0.0, f64::max);
    let delta = thresholds.delta_tail;

    if tail.iter().all(|r| r.coeff.abs() <= delta * scale) {
        return outcome(BehaviorKind::Damping, None, None, rows);
    }

    let first = tail[0];
    let last = tail[tail.len() - 1];
    let settled = last.coeff.abs() > delta * scale
        && tail.iter().all(|r| r.coeff.signum() == last.coeff.signum())
        && (last.coeff - first.coeff).abs() < delta * last.coeff.abs();
    if settled {
        let prev = tail[tail.len() - 2];
        let limit = extrapolate(prev.nz, prev.coeff, last.nz, last.coeff);
        return outcome(BehaviorKind::Lasting, None, Some(limit), rows);
    }

    outcome(BehaviorKind::Unclassified, None, None, rows)
}

/// Removes a leading `1/Nz²` correction from two coefficients.
fn extrapolate(n1: usize, c1: f64, n2: usize, c2: f64) -> f64 {
    let (a, b) = ((n1 * n1) as f64, (n2 * n2) as f64);
    (b * c2 - a * c1) / (b - a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::casimir_coefficient;

    fn rows_from(s: u32, d: usize, values: &[f64]) -> Vec<SweepRow> {
        values
            .iter()
            .enumerate()
            .map(|(i, &e)| SweepRow {
                nz: i + 1,
                e0_sum: 0.0,
                e0_int: 0.0,
                e_cas: e,
                coeff: casimir_coefficient(i + 1, d, s, e),
                quad_error: 0.0,
                converged: true,
            })
            .collect()
    }

    fn classify(s: u32, values: &[f64]) -> Classification {
        classify_rows(
            &DispersionSpec::massless(s),
            rows_from(s, 3, values),
            &Thresholds::default(),
        )
    }

    #[test]
    fn remnant_pattern() {
        let c = classify(4, &[-11.0, 2.0, 0.0, 1e-14, -1e-13, 0.0, 0.0, 0.0]);
        assert_eq!(c.kind, BehaviorKind::Remnant);
        assert_eq!(c.n_max, Some(2));
    }

    #[test]
    fn all_zero_is_no_effect() {
        let c = classify(0, &[0.0; 8]);
        assert_eq!(c.kind, BehaviorKind::NoEffect);
        assert_eq!(c.n_max, None);
    }

    #[test]
    fn small_odd_energies_are_not_remnants() {
        let values: Vec<f64> = (1..=12).map(|n| (-(n as f64) * 3.0).exp()).collect();
        let c = classify(1, &values);
        assert_eq!(c.kind, BehaviorKind::Damping);
    }

    #[test]
    fn settling_coefficient_is_lasting() {
        let target = -0.1;
        let values: Vec<f64> = (1..=16)
            .map(|n| {
                let n = n as f64;
                target * (1.0 + 2.0 / (n * n)) / n.powi(3)
            })
            .collect();
        let c = classify(1, &values);
        assert_eq!(c.kind, BehaviorKind::Lasting);
        assert!((c.coeff_limit.unwrap() - target).abs() < 1e-12);
    }

    #[test]
    fn growing_coefficient_is_unclassified() {
        let values: Vec<f64> = (1..=12).map(|n| 1.0 / n as f64).collect();
        let c = classify(1, &values);
        assert_eq!(c.kind, BehaviorKind::Unclassified);
        assert_eq!(c.rows.len(), 12);
    }

    #[test]
    fn nonzero_trig_tail_falls_through() {
        // an even dispersion whose energy never vanishes is judged on its tail
        let values: Vec<f64> = (1..=8).map(|n| -1.0 / (n as f64).powi(4)).collect();
        let c = classify(2, &values);
        assert_eq!(c.kind, BehaviorKind::Lasting);
    }

    #[test]
    fn larger_eps_never_adds_nonzero_points() {
        let values = [-3.0, 1e-5, 2e-8, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut last = usize::MAX;
        for eps in [1e-9, 1e-7, 1e-4, 10.0] {
            let t = Thresholds {
                eps_zero: eps,
                delta_tail: 1e-2,
            };
            let c = classify_rows(&DispersionSpec::massless(2), rows_from(2, 3, &values), &t);
            let n = c.n_max.unwrap_or(0);
            assert!(n <= last);
            last = n;
        }
        assert_eq!(last, 0);
    }

    #[test]
    fn short_sweeps_rejected() {
        let r = classify_behavior(
            &DispersionSpec::massless(2),
            3,
            BoundaryCondition::Periodic,
            4,
            &QuadratureConfig::default(),
            &Thresholds::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn quadratic_periodic_end_to_end() {
        let c = classify_behavior(
            &DispersionSpec::massless(2),
            3,
            BoundaryCondition::Periodic,
            8,
            &QuadratureConfig::default(),
            &Thresholds::default(),
        )
        .unwrap();
        assert_eq!(c.kind, BehaviorKind::Remnant);
        assert_eq!(c.n_max, Some(1));
        assert_eq!(c.to_string(), "Remnant n_max=1");
    }
}
