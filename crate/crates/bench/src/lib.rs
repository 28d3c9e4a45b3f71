//! Fixed workloads shared by the benchmarks.

use lattice_casimir::{BoundaryCondition, DispersionSpec, Geometry};

/// A named Casimir evaluation.
pub struct Workload {
    pub name: &'static str,
    pub spec: DispersionSpec,
    pub geom: Geometry,
    pub bc: BoundaryCondition,
}

pub fn workloads() -> Vec<Workload> {
    let w = |name, s, d, nz, bc| Workload {
        name,
        spec: DispersionSpec::massless(s),
        geom: Geometry::new(d, nz).expect("valid geometry"),
        bc,
    };
    vec![
        w("quadratic_nz1", 2, 3, 1, BoundaryCondition::Periodic),
        w("sextic_nz16", 6, 3, 16, BoundaryCondition::Periodic),
        w("linear_nz8", 1, 3, 8, BoundaryCondition::Periodic),
        w("linear_nz32", 1, 3, 32, BoundaryCondition::Periodic),
        w(
            "linear_antiperiodic_nz32",
            1,
            3,
            32,
            BoundaryCondition::Antiperiodic,
        ),
        w(
            "cubic_phen_nz8",
            3,
            3,
            8,
            BoundaryCondition::phenomenological(),
        ),
    ]
}
