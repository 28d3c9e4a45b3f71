//! Uniform periodic-grid quadrature over the Brillouin zone.
//!
//! The rectangle rule on `[0, 2π)^D` is exact for trigonometric polynomials
//! of degree below the number of points per axis, and converges spectrally
//! for smooth periodic integrands. Grids are refined by doubling; every
//! refinement reuses the points already evaluated and the inter-level
//! difference serves as the error estimate.

mod summation;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use summation::{compensated_sum, CompensatedSum};

use crate::error::{invalid, Error, Result};

/// Points per level below which evaluation stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Grid points per axis on the first level.
    pub base_points: usize,
    /// Number of grid doublings allowed after the first level.
    pub max_refinements: u32,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            base_points: 64,
            max_refinements: 6,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.base_points < 4 {
            return Err(invalid("base_points", "need at least 4 points per axis"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(invalid("rel_tol", "must be positive"));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(invalid("abs_tol", "must be positive"));
        }
        Ok(())
    }

    /// Acceptance threshold for a value of the given magnitude.
    pub fn tolerance(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude.abs())
    }

    /// Points per axis after `refinements` doublings.
    pub fn points_after(&self, refinements: u32) -> usize {
        self.base_points << refinements
    }
}

/// A converged quadrature value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Difference between the last two grid levels.
    pub error: f64,
    /// Points per axis on the finest level used.
    pub points: usize,
}

/// Successively refined uniform grid on `[0, 2π)^dim` integrating a vector
/// of `K` functions at once.
///
/// Each level keeps a compensated running sum per component. A refinement
/// only evaluates the points not present on the previous level.
///
/// With `symmetric` set, the integrand is assumed invariant under
/// `k_i → 2π - k_i` on every axis and under permutations of the axes. Only
/// one representative of each orbit is evaluated (non-decreasing indices in
/// `[0, N/2]`) and weighted by the orbit size; every orbit size is a power
/// of two, so the weighting is exact.
pub(crate) struct NestedGrid<const K: usize> {
    dim: usize,
    points: usize,
    symmetric: bool,
    sums: [CompensatedSum; K],
}

impl<const K: usize> NestedGrid<K> {
    /// Evaluates the first level with `points` per axis.
    pub(crate) fn new<F>(dim: usize, points: usize, symmetric: bool, f: &F) -> Self
    where
        F: Fn(&[f64]) -> [f64; K] + Sync,
    {
        let mut grid = Self {
            dim,
            points,
            symmetric,
            sums: [CompensatedSum::new(); K],
        };
        grid.accumulate(points, false, f);
        grid
    }

    /// Doubles the number of points per axis.
    pub(crate) fn refine<F>(&mut self, f: &F)
    where
        F: Fn(&[f64]) -> [f64; K] + Sync,
    {
        if self.dim == 0 {
            return;
        }
        self.points *= 2;
        self.accumulate(self.points, true, f);
    }

    pub(crate) fn points(&self) -> usize {
        self.points
    }

    /// Grid averages of every component.
    pub(crate) fn averages(&self) -> [f64; K] {
        let count = (self.points as f64).powi(self.dim as i32);
        std::array::from_fn(|k| self.sums[k].value() / count)
    }

    fn accumulate<F>(&mut self, n: usize, only_new: bool, f: &F)
    where
        F: Fn(&[f64]) -> [f64; K] + Sync,
    {
        if self.dim == 0 {
            let v = f(&[]);
            for (acc, x) in self.sums.iter_mut().zip(v) {
                acc.add(x);
            }
            return;
        }
        let axis = AxisLayout::new(n, self.symmetric);
        let dim = self.dim;
        let symmetric = self.symmetric;
        let row = |i0: usize| -> [CompensatedSum; K] {
            let mut partial = [CompensatedSum::new(); K];
            let mut idx = vec![if symmetric { i0 } else { 0 }; dim];
            idx[0] = i0;
            let mut coords = vec![0.0f64; dim];
            loop {
                let include = !only_new || idx.iter().any(|&j| j % 2 == 1);
                if include {
                    for (c, &j) in coords.iter_mut().zip(&idx) {
                        *c = axis.coordinate(j);
                    }
                    let weight = if symmetric {
                        axis.orbit_weight(&idx)
                    } else {
                        1.0
                    };
                    let v = f(&coords);
                    for (acc, x) in partial.iter_mut().zip(v) {
                        acc.add(weight * x);
                    }
                }
                if !axis.advance(&mut idx[1..], symmetric) {
                    break;
                }
            }
            partial
        };
        let rows = axis.len;
        let work = rows.pow(dim as u32);
        let partials: Vec<[CompensatedSum; K]> = if work >= PARALLEL_THRESHOLD {
            (0..rows).into_par_iter().map(row).collect()
        } else {
            (0..rows).map(row).collect()
        };
        for partial in &partials {
            for (acc, p) in self.sums.iter_mut().zip(partial) {
                acc.merge(p);
            }
        }
    }
}

/// Index range of one axis at `n` points, optionally folded by reflection.
struct AxisLayout {
    n: usize,
    len: usize,
    step: f64,
}

impl AxisLayout {
    fn new(n: usize, folded: bool) -> Self {
        let len = if folded { n / 2 + 1 } else { n };
        Self {
            n,
            len,
            step: 2.0 * PI / n as f64,
        }
    }

    fn coordinate(&self, j: usize) -> f64 {
        j as f64 * self.step
    }

    /// Number of grid points in the reflection orbit of index `j`.
    fn reflection_count(&self, j: usize) -> f64 {
        if j == 0 || 2 * j == self.n {
            1.0
        } else {
            2.0
        }
    }

    /// Size of the orbit of a non-decreasing index tuple under reflections
    /// and axis permutations.
    fn orbit_weight(&self, idx: &[usize]) -> f64 {
        let reflections: f64 = idx.iter().map(|&j| self.reflection_count(j)).product();
        // distinct permutations of a sorted tuple
        let mut perms = (1..=idx.len()).product::<usize>();
        let mut run = 1;
        for w in idx.windows(2) {
            if w[0] == w[1] {
                run += 1;
                perms /= run;
            } else {
                run = 1;
            }
        }
        reflections * perms as f64
    }

    /// Odometer step over the trailing axes. In symmetric mode the tuple
    /// stays non-decreasing.
    fn advance(&self, tail: &mut [usize], symmetric: bool) -> bool {
        for axis in (0..tail.len()).rev() {
            tail[axis] += 1;
            if tail[axis] < self.len {
                let reset = if symmetric { tail[axis] } else { 0 };
                for t in tail[axis + 1..].iter_mut() {
                    *t = reset;
                }
                return true;
            }
        }
        false
    }
}

fn integrate_periodic<F>(dim: usize, f: F, cfg: &QuadratureConfig) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    let g = |x: &[f64]| [f(x)];
    let mut grid = NestedGrid::<1>::new(dim, cfg.base_points, false, &g);
    let mut previous = grid.averages()[0];
    if dim == 0 {
        return Ok(Estimate {
            value: previous,
            error: 0.0,
            points: 1,
        });
    }
    let mut error = f64::INFINITY;
    for _ in 0..cfg.max_refinements {
        grid.refine(&g);
        let value = grid.averages()[0];
        error = (value - previous).abs();
        previous = value;
        if error <= cfg.tolerance(value) {
            return Ok(Estimate {
                value,
                error,
                points: grid.points(),
            });
        }
    }
    Err(Error::NotConverged {
        value: previous,
        error_estimate: error,
        points: grid.points(),
    })
}

/// Brillouin-zone average `(2π)^{-(d-1)} ∫ f` over the `d - 1` transverse
/// axes of a `d`-dimensional lattice. For `d = 1` this is `f(&[])`.
pub fn integrate_bz<F>(f: F, d: usize, cfg: &QuadratureConfig) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if !(1..=3).contains(&d) {
        return Err(invalid(
            "d",
            format!("dimension must be 1, 2 or 3, got {d}"),
        ));
    }
    integrate_periodic(d - 1, f, cfg)
}

/// Period average `(2π)^{-1} ∫_0^{2π} f`.
pub fn integrate_kz<F>(f: F, cfg: &QuadratureConfig) -> Result<Estimate>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate_periodic(1, |x: &[f64]| f(x[0]), cfg)
}
