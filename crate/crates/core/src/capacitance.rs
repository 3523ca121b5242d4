//! Gate capacitance stack: structure, quantum and screening capacitances in series.

use std::f64::consts::PI;

use crate::constants::{EPS0, E_CHARGE, HBAR, M_E, V_FERMI};
use crate::error::{ensure_positive, Error, Result};
use crate::model::Geometry;

/// Carrier density used for monolayer C_q when none is given, m⁻².
pub const DEFAULT_CARRIER_DENSITY: f64 = 1e16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrapheneLayers {
    Monolayer,
    Bilayer,
    Trilayer,
}

impl GrapheneLayers {
    /// Effective carrier mass m*/m_e of the multilayer band, `None` for the
    /// linear-dispersion monolayer.
    pub fn default_effective_mass_ratio(self) -> Option<f64> {
        match self {
            GrapheneLayers::Monolayer => None,
            GrapheneLayers::Bilayer => Some(0.037),
            GrapheneLayers::Trilayer => Some(0.053),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChargeModel {
    /// m⁻²
    pub carrier_density: Option<f64>,
    /// m*/m_e
    pub effective_mass_ratio: Option<f64>,
    pub include_quantum: bool,
    /// F; `None` leaves the screening capacitance out of the series sum.
    pub screen_capacitance: Option<f64>,
}

impl ChargeModel {
    /// Only the structure capacitance contributes.
    pub fn excluded() -> Self {
        Self::default()
    }

    /// Quantum capacitance enabled with the preset parameters for `layers`.
    pub fn graphene(layers: GrapheneLayers) -> Self {
        Self {
            carrier_density: match layers {
                GrapheneLayers::Monolayer => Some(DEFAULT_CARRIER_DENSITY),
                _ => None,
            },
            effective_mass_ratio: layers.default_effective_mass_ratio(),
            include_quantum: true,
            screen_capacitance: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitanceStack {
    /// C_0, F
    pub c_structure: f64,
    pub c_quantum: Option<f64>,
    pub c_screen: Option<f64>,
    /// C_T, F
    pub c_total: f64,
}

impl CapacitanceStack {
    /// 1/C_T as the sum of the included inverse capacitances.
    pub fn inverse_total(&self) -> f64 {
        1.0 / self.c_structure
            + self.c_quantum.map_or(0.0, |c| 1.0 / c)
            + self.c_screen.map_or(0.0, |c| 1.0 / c)
    }
}

/// Parallel-plate capacitance ε0·L·W/d.
pub fn structure_capacitance(geometry: &Geometry) -> f64 {
    EPS0 * geometry.area() / geometry.gap
}

/// Quantum capacitance per unit area, F/m².
pub fn quantum_capacitance_per_area(layers: GrapheneLayers, model: &ChargeModel) -> Result<f64> {
    match layers {
        GrapheneLayers::Monolayer => {
            let n = model.carrier_density.ok_or(Error::MissingCarrierDensity)?;
            ensure_positive("carrier_density", n)?;
            Ok(2.0 * E_CHARGE * E_CHARGE * n.sqrt() / (HBAR * V_FERMI * PI.sqrt()))
        }
        GrapheneLayers::Bilayer | GrapheneLayers::Trilayer => {
            let ratio = model
                .effective_mass_ratio
                .ok_or(Error::MissingEffectiveMass)?;
            ensure_positive("effective_mass_ratio", ratio)?;
            Ok(2.0 * ratio * M_E * E_CHARGE * E_CHARGE / (PI * HBAR * HBAR))
        }
    }
}

/// Quantum capacitance of the whole film, per-area value times L·W.
pub fn quantum_capacitance(
    layers: GrapheneLayers,
    model: &ChargeModel,
    geometry: &Geometry,
) -> Result<f64> {
    Ok(quantum_capacitance_per_area(layers, model)? * geometry.area())
}

/// Series combination of C_0 with the optional C_q and C_s.
pub fn series_total(c0: f64, cq: Option<f64>, cs: Option<f64>) -> CapacitanceStack {
    let mut stack = CapacitanceStack {
        c_structure: c0,
        c_quantum: cq,
        c_screen: cs,
        c_total: 0.0,
    };
    stack.c_total = 1.0 / stack.inverse_total();
    stack
}

/// Builds the stack for a device. `layers` is `None` for non-graphene films.
pub fn build_stack(
    layers: Option<GrapheneLayers>,
    model: &ChargeModel,
    geometry: &Geometry,
) -> Result<CapacitanceStack> {
    let c0 = structure_capacitance(geometry);
    let cq = if model.include_quantum {
        let layers = layers.ok_or(Error::QuantumCapacitanceUnavailable)?;
        Some(quantum_capacitance(layers, model, geometry)?)
    } else {
        None
    };
    if let Some(cs) = model.screen_capacitance {
        ensure_positive("screen_capacitance", cs)?;
    }
    Ok(series_total(c0, cq, model.screen_capacitance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Clamping;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn graphene_geometry() -> Geometry {
        Geometry::new(1.8e-6, 0.2e-6, 0.335e-9, 0.1e-6, Clamping::DoublyClamped).unwrap()
    }

    #[test]
    fn structure_capacitance_reference() {
        let g = graphene_geometry();
        assert!(rel(structure_capacitance(&g), 3.187_507_612_608e-17) < 1e-12);
        let half = Geometry {
            gap: g.gap / 2.0,
            ..g
        };
        assert!(
            rel(
                structure_capacitance(&half),
                2.0 * structure_capacitance(&g)
            ) < 1e-15
        );
        let cube = Geometry::new(1e-6, 1e-6, 1e-9, 1e-6, Clamping::Cantilever).unwrap();
        assert!(rel(structure_capacitance(&cube), EPS0 * 1e-6) < 1e-15);
    }

    #[test]
    fn monolayer_quantum_capacitance() {
        let model = ChargeModel::graphene(GrapheneLayers::Monolayer);
        let per_area = quantum_capacitance_per_area(GrapheneLayers::Monolayer, &model).unwrap();
        // hand evaluation of 2 e^2 sqrt(n) / (hbar v_F sqrt(pi)) at n = 1e16
        assert!(rel(per_area, 2.748_528_456_746e-2) < 1e-9);
        assert!(rel(per_area, 2.75e-2) < 0.01);
        let quad = ChargeModel {
            carrier_density: Some(4e16),
            ..model
        };
        let per_area4 = quantum_capacitance_per_area(GrapheneLayers::Monolayer, &quad).unwrap();
        assert!(rel(per_area4, 2.0 * per_area) < 1e-14);
    }

    #[test]
    fn bilayer_quantum_capacitance() {
        let model = ChargeModel::graphene(GrapheneLayers::Bilayer);
        let per_area = quantum_capacitance_per_area(GrapheneLayers::Bilayer, &model).unwrap();
        assert!(rel(per_area, 4.952_669_052_6e-2) < 1e-9);
        let tri = quantum_capacitance_per_area(
            GrapheneLayers::Trilayer,
            &ChargeModel::graphene(GrapheneLayers::Trilayer),
        )
        .unwrap();
        assert!(rel(tri / per_area, 0.053 / 0.037) < 1e-14);
    }

    #[test]
    fn missing_parameters() {
        let empty = ChargeModel {
            include_quantum: true,
            ..ChargeModel::default()
        };
        assert_eq!(
            quantum_capacitance_per_area(GrapheneLayers::Monolayer, &empty),
            Err(Error::MissingCarrierDensity)
        );
        assert_eq!(
            quantum_capacitance_per_area(GrapheneLayers::Trilayer, &empty),
            Err(Error::MissingEffectiveMass)
        );
        assert_eq!(
            build_stack(
                None,
                &ChargeModel::graphene(GrapheneLayers::Monolayer),
                &graphene_geometry()
            ),
            Err(Error::QuantumCapacitanceUnavailable)
        );
    }

    #[test]
    fn series_examples() {
        let s = series_total(3e-17, None, None);
        assert_eq!(s.c_total, 3e-17);
        let s = series_total(4e-17, Some(4e-17), None);
        assert!(rel(s.c_total, 2e-17) < 1e-15);

        let g = graphene_geometry();
        let stack = build_stack(
            Some(GrapheneLayers::Monolayer),
            &ChargeModel::graphene(GrapheneLayers::Monolayer),
            &g,
        )
        .unwrap();
        assert!(rel(stack.c_quantum.unwrap(), 9.9e-15) < 0.01);
        assert!(rel(stack.c_total, 3.177e-17) < 1e-3);
        assert!(rel(stack.c_total, stack.c_structure) < 0.004);
    }

    #[test]
    fn silicon_default_is_structure_only() {
        let g = graphene_geometry();
        let stack = build_stack(None, &ChargeModel::excluded(), &g).unwrap();
        assert_eq!(stack.c_total, stack.c_structure);
        assert!(stack.c_quantum.is_none() && stack.c_screen.is_none());
    }

    fn series(cs: &[f64]) -> f64 {
        1.0 / cs.iter().map(|c| 1.0 / c).sum::<f64>()
    }

    proptest! {
        #[test]
        fn series_is_symmetric(a in 1e-18f64..1e-12, b in 1e-18f64..1e-12, c in 1e-18f64..1e-12) {
            let base = series_total(a, Some(b), Some(c)).c_total;
            for perm in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                let other = series_total(perm[0], Some(perm[1]), Some(perm[2])).c_total;
                prop_assert!(rel(other, base) < 1e-14);
            }
            prop_assert!(rel(series(&[series(&[a, b]), c]), series(&[a, series(&[b, c])])) < 1e-14);
            prop_assert!(base <= a.min(b).min(c));
            let inv = series_total(a, Some(b), Some(c)).inverse_total();
            prop_assert!(rel(1.0 / base, inv) < 1e-14);
        }

        #[test]
        fn series_monotone(a in 1e-18f64..1e-12, b in 1e-18f64..1e-12, k in 1.0f64..10.0) {
            prop_assert!(series_total(a * k, Some(b), None).c_total >= series_total(a, Some(b), None).c_total);
            prop_assert!(series_total(a, Some(b * k), None).c_total >= series_total(a, Some(b), None).c_total);
        }
    }
}
