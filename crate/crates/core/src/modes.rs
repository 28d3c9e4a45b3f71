//! Discrete `ak_z` mode sets for a slab of `Nz` sites.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Index range used by the phenomenological prescription `ak_z = lπ/Nz`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhenomenologicalRange {
    /// `l = 1, ..., 2Nz`
    #[default]
    OneTo2Nz,
    /// `l = 0, ..., 2Nz - 1`
    ZeroTo2NzMinus1,
}

/// Momentum quantization rule along the compact direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCondition {
    /// `ak_z = 2lπ/Nz`, `l = 0..Nz`.
    Periodic,
    /// `ak_z = (2l+1)π/Nz`, `l = 0..Nz`.
    Antiperiodic,
    /// `ak_z = lπ/Nz` over `2Nz` indices, each mode weighted by one half.
    Phenomenological(PhenomenologicalRange),
}

impl BoundaryCondition {
    pub fn phenomenological() -> Self {
        Self::Phenomenological(PhenomenologicalRange::default())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Periodic => "periodic",
            Self::Antiperiodic => "antiperiodic",
            Self::Phenomenological(_) => "phenomenological",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" | "p" => Ok(Self::Periodic),
            "antiperiodic" | "ap" => Ok(Self::Antiperiodic),
            "phenomenological" | "phen" => Ok(Self::phenomenological()),
            "phenomenological0" | "phen0" => Ok(Self::Phenomenological(
                PhenomenologicalRange::ZeroTo2NzMinus1,
            )),
            other => Err(invalid(
                "bc",
                format!("unknown boundary condition `{other}` (expected periodic, antiperiodic or phenomenological)"),
            )),
        }
    }
}

/// One discrete momentum `ak_z ∈ [0, 2π)` and its weight in the mode sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub akz: f64,
    pub weight: f64,
}

/// Ordered list of modes. The weights always sum to `Nz`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSet {
    pub modes: Vec<Mode>,
}

impl ModeSet {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.modes.iter().map(|m| m.weight).sum()
    }

    /// `Σ w · f(ak_z)` over the modes, in order.
    pub fn weighted_sum(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.modes.iter().map(|m| m.weight * f(m.akz)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Mode> {
        self.modes.iter()
    }
}

/// Builds the mode set of `bc` for a slab of `nz` sites.
///
/// Mode positions are computed from reduced integer indices, so values
/// that land on `2π` come out as exactly `0`.
pub fn generate_modes(bc: BoundaryCondition, nz: usize) -> Result<ModeSet> {
    if nz == 0 {
        return Err(invalid("nz", "slab thickness must be >= 1"));
    }
    let n = nz as f64;
    let modes = match bc {
        BoundaryCondition::Periodic => (0..nz)
            .map(|l| Mode {
                akz: 2.0 * PI * l as f64 / n,
                weight: 1.0,
            })
            .collect(),
        BoundaryCondition::Antiperiodic => (0..nz)
            .map(|l| Mode {
                akz: (2 * l + 1) as f64 * PI / n,
                weight: 1.0,
            })
            .collect(),
        BoundaryCondition::Phenomenological(range) => {
            let indices: Box<dyn Iterator<Item = usize>> = match range {
                PhenomenologicalRange::OneTo2Nz => Box::new(1..=2 * nz),
                PhenomenologicalRange::ZeroTo2NzMinus1 => Box::new(0..2 * nz),
            };
            indices
                .map(|l| Mode {
                    akz: (l % (2 * nz)) as f64 * PI / n,
                    weight: 0.5,
                })
                .collect()
        }
    };
    Ok(ModeSet { modes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn positions(set: &ModeSet) -> Vec<f64> {
        set.iter().map(|m| m.akz).collect()
    }

    #[test]
    fn periodic_four_sites() {
        let set = generate_modes(BoundaryCondition::Periodic, 4).unwrap();
        assert_eq!(positions(&set), vec![0.0, PI / 2.0, PI, 1.5 * PI]);
        assert!(set.iter().all(|m| m.weight == 1.0));
    }

    #[test]
    fn antiperiodic_two_sites() {
        let set = generate_modes(BoundaryCondition::Antiperiodic, 2).unwrap();
        assert_eq!(positions(&set), vec![PI / 2.0, 1.5 * PI]);
    }

    #[test]
    fn phenomenological_single_site() {
        let set = generate_modes(BoundaryCondition::phenomenological(), 1).unwrap();
        assert_eq!(positions(&set), vec![PI, 0.0]);
        assert!(set.iter().all(|m| m.weight == 0.5));
    }

    #[test]
    fn phenomenological_ranges_cover_same_points() {
        let a = generate_modes(BoundaryCondition::phenomenological(), 3).unwrap();
        let b = generate_modes(
            BoundaryCondition::Phenomenological(PhenomenologicalRange::ZeroTo2NzMinus1),
            3,
        )
        .unwrap();
        let mut pa = positions(&a);
        let mut pb = positions(&b);
        pa.sort_by(f64::total_cmp);
        pb.sort_by(f64::total_cmp);
        assert_eq!(pa, pb);
    }

    #[test]
    fn zero_thickness_rejected() {
        assert!(generate_modes(BoundaryCondition::Periodic, 0).is_err());
    }

    #[test]
    fn parses_names() {
        assert_eq!(
            "periodic".parse::<BoundaryCondition>().unwrap(),
            BoundaryCondition::Periodic
        );
        assert_eq!(
            "Antiperiodic".parse::<BoundaryCondition>().unwrap(),
            BoundaryCondition::Antiperiodic
        );
        assert!("dirichlet".parse::<BoundaryCondition>().is_err());
    }

    fn any_bc() -> impl Strategy<Value = BoundaryCondition> {
        prop_oneof![
            Just(BoundaryCondition::Periodic),
            Just(BoundaryCondition::Antiperiodic),
            Just(BoundaryCondition::Phenomenological(
                PhenomenologicalRange::OneTo2Nz
            )),
            Just(BoundaryCondition::Phenomenological(
                PhenomenologicalRange::ZeroTo2NzMinus1
            )),
        ]
    }

    proptest! {
        #[test]
        fn weights_sum_to_thickness(bc in any_bc(), nz in 1usize..200) {
            let set = generate_modes(bc, nz).unwrap();
            prop_assert!((set.total_weight() - nz as f64).abs() < 1e-12);
            prop_assert!(set.iter().all(|m| (0.0..2.0 * PI).contains(&m.akz)));
        }

        #[test]
        fn periodic_and_antiperiodic_interleave(nz in 1usize..100) {
            let mut union: Vec<f64> = generate_modes(BoundaryCondition::Periodic, nz).unwrap().iter()
                .chain(generate_modes(BoundaryCondition::Antiperiodic, nz).unwrap().iter())
                .map(|m| m.akz)
                .collect();
            union.sort_by(f64::total_cmp);
            let doubled = positions(&generate_modes(BoundaryCondition::Periodic, 2 * nz).unwrap());
            prop_assert_eq!(union.len(), doubled.len());
            for (a, b) in union.iter().zip(&doubled) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        // The periodic mode average is a trapezoidal rule: exact for
        // trigonometric polynomials of degree below Nz.
        #[test]
        fn periodic_average_exact_below_degree(nz in 2usize..40, coeffs in prop::collection::vec(-1.0f64..1.0, 1..40)) {
            let degree = coeffs.len().min(nz) - 1;
            let f = |x: f64| coeffs[..=degree].iter().enumerate()
                .map(|(j, c)| c * (j as f64 * x).cos() + 0.5 * c * (j as f64 * x).sin())
                .sum::<f64>();
            let set = generate_modes(BoundaryCondition::Periodic, nz).unwrap();
            let avg = set.weighted_sum(f) / nz as f64;
            prop_assert!((avg - coeffs[0]).abs() < 1e-12);
        }
    }
}
