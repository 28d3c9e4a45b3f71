//! Lattice-regularized Casimir energies for power-law dispersions
//! `aω = [Σ(2 - 2cos ak_i) + (am)²]^{s/2}` in a slab of `Nz` sites with
//! periodic, antiperiodic or phenomenological boundaries.
//!
//! ```
//! use lattice_casimir::{casimir_energy, BoundaryCondition, DispersionSpec, Geometry, QuadratureConfig};
//!
//! let r = casimir_energy(
//!     &DispersionSpec::massless(2),
//!     &Geometry::new(3, 1).unwrap(),
//!     BoundaryCondition::Periodic,
//!     &QuadratureConfig::default(),
//! )
//! .unwrap();
//! assert!((r.e_cas + 1.0).abs() < 1e-12);
//! ```

pub mod casimir;
pub mod classify;
pub mod continuum;
pub mod error;
pub mod massexp;
pub mod model;
pub mod modes;
pub mod quadrature;
pub mod report;
pub mod special;

pub use casimir::{
    best_effort, casimir_energy, casimir_energy_massive, zero_point_int, zero_point_sum,
};
pub use classify::{classify_behavior, classify_rows, BehaviorKind, Classification, Thresholds};
pub use continuum::{continuum_casimir, ContinuumParams};
pub use error::{Error, Result};
pub use massexp::{
    convergence_check, expansion_coefficients, remnant_expansion, remnant_partial_sum,
    ConvergenceCheck, ExpansionTerm, RemnantExpansion, RemnantTerm,
};
pub use model::{
    casimir_coefficient, coefficient_exponent, eval_lattice_dispersion, lattice_kernel,
    CasimirResult, DispersionSpec, Geometry,
};
pub use modes::{generate_modes, BoundaryCondition, Mode, ModeSet, PhenomenologicalRange};
pub use quadrature::{integrate_bz, integrate_kz, Estimate, QuadratureConfig};
pub use report::{rectangle_decomposition, sweep, RectangleDecomposition, SweepRow};
