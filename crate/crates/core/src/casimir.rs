//! Zero-point energies of a slab and their difference, the Casimir energy.
//!
//! For every transverse momentum `k⊥` the slab integrand is
//!
//! ```text
//! sum(k⊥) = ½ Σ_l w_l aω(k⊥, ak_z,l)
//! int(k⊥) = (Nz/2) ⟨aω(k⊥, ·)⟩_{ak_z}
//! ```
//!
//! and the energies are their transverse Brillouin-zone averages, scaled by
//! the branch degeneracy. The Casimir energy integrates `sum - int` point by
//! point so the large `O(Nz)` terms cancel before the outer quadrature.

use crate::error::{invalid, Error, Result};
use crate::model::{casimir_coefficient, lattice_kernel, CasimirResult, DispersionSpec, Geometry};
use crate::modes::{generate_modes, BoundaryCondition};
use crate::quadrature::{integrate_kz, NestedGrid, QuadratureConfig};
use crate::special::kernel_power_mean;

const SUM: usize = 0;
const INT: usize = 1;
const DIFF: usize = 2;
const INNER_ERR: usize = 3;

/// Per-transverse-point zero-point integrand of a slab.
pub(crate) struct SlabIntegrand {
    spec: DispersionSpec,
    nz: f64,
    /// `(2 - 2cos ak_z, weight)` for every discrete mode.
    modes: Vec<(f64, f64)>,
    cfg: QuadratureConfig,
}

impl SlabIntegrand {
    pub(crate) fn new(
        spec: DispersionSpec,
        nz: usize,
        bc: BoundaryCondition,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        let modes = generate_modes(bc, nz)?
            .iter()
            .map(|m| (lattice_kernel(m.akz), m.weight))
            .collect();
        Ok(Self {
            spec,
            nz: nz as f64,
            modes,
            cfg: *cfg,
        })
    }

    /// Weighted mode sum `Σ w aω` at transverse squared momentum `x`.
    pub(crate) fn mode_sum(&self, x: f64) -> f64 {
        self.modes
            .iter()
            .map(|&(tz, w)| w * self.spec.eval_momentum_squared(x + tz))
            .sum()
    }

    /// `⟨aω⟩` over continuous `ak_z` at transverse squared momentum `x`,
    /// with its quadrature error.
    pub(crate) fn kz_mean(&self, x: f64) -> (f64, f64) {
        let s = self.spec.order();
        if s == 0 {
            return (1.0, 0.0);
        }
        if self.spec.is_trig_polynomial() {
            let f = |kz: f64| self.spec.eval_momentum_squared(x + lattice_kernel(kz));
            return match integrate_kz(f, &self.cfg) {
                Ok(est) => (est.value, est.error),
                Err(Error::NotConverged {
                    value,
                    error_estimate,
                    ..
                }) => (value, error_estimate),
                Err(_) => (f64::NAN, f64::INFINITY),
            };
        }
        let am = self.spec.mass();
        (kernel_power_mean(x + am * am + 2.0, s), 0.0)
    }

    /// Powers `p` of the leading `h^p` rectangle-rule errors of each
    /// component on a `dim`-dimensional transverse grid, lowest first.
    ///
    /// Odd massless dispersions are not smooth at `k⊥ = 0`. A zero mode puts
    /// a `|k⊥|^s` cusp into the mode sum, giving `h^{dim+s}`. The continuous
    /// `ak_z` average always carries a `|k⊥|^{s+1} log|k⊥|` term, giving
    /// `h^{dim+s+1}` (times `log h` when `dim = 2`).
    fn error_orders(&self, dim: usize) -> [Vec<i32>; 4] {
        let s = self.spec.order();
        if s.is_multiple_of(2) || self.spec.mass() != 0.0 || dim == 0 {
            return Default::default();
        }
        let cusp = dim as i32 + s as i32;
        let has_zero_mode = self.modes.iter().any(|&(tz, _)| tz == 0.0);
        let sum = if has_zero_mode { vec![cusp] } else { vec![] };
        let int = vec![cusp + 1];
        let mut diff = sum.clone();
        diff.extend(&int);
        [sum, int, diff, vec![]]
    }

    /// `[sum, int, sum - int, inner error]` at transverse squared momentum `x`,
    /// before degeneracy scaling.
    fn components(&self, x: f64) -> [f64; 4] {
        let sum = 0.5 * self.mode_sum(x);
        let (mean, err) = self.kz_mean(x);
        let int = 0.5 * self.nz * mean;
        [sum, int, sum - int, 0.5 * self.nz * err]
    }
}

/// Which of the slab quantities must reach tolerance.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Sum,
    Int,
    Casimir,
}

struct SlabOutcome {
    values: [f64; 4],
    errors: [f64; 4],
    converged: bool,
}

fn validate(spec: &DispersionSpec, geom: &Geometry, cfg: &QuadratureConfig) -> Result<()> {
    cfg.validate()?;
    // rebuild to re-check invariants of values that may have been deserialized
    DispersionSpec::new(spec.order(), spec.mass(), spec.degeneracy())?;
    Geometry::new(geom.dim(), geom.nz())?;
    Ok(())
}

fn integrate_slab(
    spec: &DispersionSpec,
    geom: &Geometry,
    bc: BoundaryCondition,
    cfg: &QuadratureConfig,
    target: Target,
) -> Result<SlabOutcome> {
    validate(spec, geom, cfg)?;
    let integrand = SlabIntegrand::new(*spec, geom.nz(), bc, cfg)?;
    let f = |k: &[f64]| integrand.components(k.iter().copied().map(lattice_kernel).sum());
    let dim = geom.transverse_dim();
    let g = spec.degeneracy() as f64;
    let scaled = |v: [f64; 4]| v.map(|x| g * x);

    let mut grid = NestedGrid::<4>::new(dim, cfg.base_points, true, &f);

    let accept = |values: &[f64; 4], errors: &[f64; 4]| -> bool {
        let ok = |i: usize| errors[i] <= cfg.tolerance(values[i]);
        match target {
            Target::Sum => ok(SUM),
            Target::Int => ok(INT),
            Target::Casimir => ok(SUM) && ok(INT) && ok(DIFF),
        }
    };
    let with_inner = |diffs: [f64; 4], values: &[f64; 4]| -> [f64; 4] {
        let inner = values[INNER_ERR].abs();
        [diffs[SUM], diffs[INT] + inner, diffs[DIFF] + inner, inner]
    };

    if dim == 0 {
        let values = scaled(grid.averages());
        let errors = with_inner([0.0; 4], &values);
        let converged = accept(&values, &errors);
        return Ok(SlabOutcome {
            values,
            errors,
            converged,
        });
    }

    let orders = integrand.error_orders(dim);
    let mut levels = vec![scaled(grid.averages())];
    let mut values = levels[0];
    let mut errors = [f64::INFINITY; 4];
    for _ in 0..cfg.max_refinements {
        grid.refine(&f);
        levels.push(scaled(grid.averages()));
        let n = levels.len();
        let mut diffs = [f64::INFINITY; 4];
        for i in 0..4 {
            let column: Vec<f64> = levels.iter().map(|l| l[i]).collect();
            let depth = orders[i].len();
            values[i] = extrapolate(&column, &orders[i]);
            if n >= depth + 2 {
                diffs[i] = (values[i] - extrapolate(&column[..n - 1], &orders[i])).abs();
            }
        }
        errors = with_inner(diffs, &values);
        if accept(&values, &errors) {
            return Ok(SlabOutcome {
                values,
                errors,
                converged: true,
            });
        }
    }
    Ok(SlabOutcome {
        values,
        errors,
        converged: false,
    })
}

/// Richardson extrapolation of a sequence computed on grids of halving
/// spacing, removing the error terms `h^p` for `p` in `orders` (as many as
/// the sequence length allows).
fn extrapolate(column: &[f64], orders: &[i32]) -> f64 {
    let depth = orders.len().min(column.len() - 1);
    let mut t = column[column.len() - 1 - depth..].to_vec();
    for &p in &orders[..depth] {
        let c = 1.0 / (2f64.powi(p) - 1.0);
        t = t.windows(2).map(|w| w[1] + c * (w[1] - w[0])).collect();
    }
    t[t.len() - 1]
}

fn scalar(outcome: SlabOutcome, index: usize, grid_points: usize) -> Result<f64> {
    if outcome.converged {
        Ok(outcome.values[index])
    } else {
        Err(Error::NotConverged {
            value: outcome.values[index],
            error_estimate: outcome.errors[index],
            points: grid_points,
        })
    }
}

fn finest_points(cfg: &QuadratureConfig) -> usize {
    cfg.points_after(cfg.max_refinements)
}

/// `aE_0^sum`: degeneracy times the transverse average of `½ Σ_l w_l aω`.
pub fn zero_point_sum(
    spec: &DispersionSpec,
    geom: &Geometry,
    bc: BoundaryCondition,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let outcome = integrate_slab(spec, geom, bc, cfg, Target::Sum)?;
    scalar(outcome, SUM, finest_points(cfg))
}

/// `aE_0^int`: degeneracy times the transverse average of
/// `(Nz/2) ⟨aω⟩_{ak_z}`. Independent of the boundary condition.
pub fn zero_point_int(
    spec: &DispersionSpec,
    geom: &Geometry,
    bc: BoundaryCondition,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let outcome = integrate_slab(spec, geom, bc, cfg, Target::Int)?;
    scalar(outcome, INT, finest_points(cfg))
}

/// Casimir energy `aE_Cas = aE_0^sum - aE_0^int` per transverse site.
///
/// When the quadrature does not reach tolerance the best result is
/// returned inside [`Error::CasimirNotConverged`].
pub fn casimir_energy(
    spec: &DispersionSpec,
    geom: &Geometry,
    bc: BoundaryCondition,
    cfg: &QuadratureConfig,
) -> Result<CasimirResult> {
    let outcome = integrate_slab(spec, geom, bc, cfg, Target::Casimir)?;
    let [e0_sum, e0_int, e_cas, _] = outcome.values;
    let result = CasimirResult {
        e0_sum,
        e0_int,
        e_cas,
        coeff: casimir_coefficient(geom.nz(), geom.dim(), spec.order(), e_cas),
        quad_error: outcome.errors[DIFF],
    };
    if outcome.converged {
        Ok(result)
    } else {
        Err(Error::CasimirNotConverged(Box::new(result)))
    }
}

/// Casimir energy of the massive linear dispersion `√(k̃² + (am)²)`.
pub fn casimir_energy_massive(
    am: f64,
    geom: &Geometry,
    bc: BoundaryCondition,
    cfg: &QuadratureConfig,
) -> Result<CasimirResult> {
    if am.is_nan() || am <= 0.0 {
        return Err(invalid(
            "am",
            format!("massive dispersion needs am > 0, got {am}"),
        ));
    }
    casimir_energy(&DispersionSpec::massive(am)?, geom, bc, cfg)
}

/// Returns the result whether or not the quadrature converged.
pub fn best_effort(result: Result<CasimirResult>) -> Result<(CasimirResult, bool)> {
    match result {
        Ok(r) => Ok((r, true)),
        Err(Error::CasimirNotConverged(r)) => Ok((*r, false)),
        Err(e) => Err(e),
    }
}
