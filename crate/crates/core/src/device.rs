//! A complete device description and its derived analysis chain.

use crate::capacitance::{build_stack, CapacitanceStack, ChargeModel, GrapheneLayers};
use crate::dynamics::{
    evolve_variances, modulation_depth, ModulationConvention, Pump, PumpCoupling,
    QuadratureVariance,
};
use crate::error::Result;
use crate::model::{Clamping, DerivedModal, Environment, Geometry, Material, MaterialPreset};
use crate::squeezing::{squeeze_factor, SqueezeSummary};
use crate::thermal::{brownian_amplitude, BrownianResult, DEFAULT_MODES};

#[derive(Debug, Clone, PartialEq)]
pub struct Device {
    pub material: Material,
    pub geometry: Geometry,
    pub environment: Environment,
    pub pump: Pump,
    pub charge: ChargeModel,
    /// Set for graphene presets; needed for the quantum capacitance.
    pub layers: Option<GrapheneLayers>,
    pub convention: ModulationConvention,
}

/// Time scale used to normalise time axes: t_c when defined, τ otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeUnit {
    Characteristic(f64),
    Relaxation(f64),
}

impl TimeUnit {
    pub fn seconds(self) -> f64 {
        match self {
            TimeUnit::Characteristic(t) | TimeUnit::Relaxation(t) => t,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TimeUnit::Characteristic(_) => "t_c",
            TimeUnit::Relaxation(_) => "tau",
        }
    }
}

impl Device {
    /// Doubly clamped film of a preset material at its default thickness, with
    /// quantum capacitance excluded.
    pub fn from_preset(
        preset: MaterialPreset,
        length: f64,
        width: f64,
        gap: f64,
        environment: Environment,
        pump: Pump,
    ) -> Result<Self> {
        let device = Self {
            material: preset.material(),
            geometry: Geometry::new(
                length,
                width,
                preset.default_thickness(),
                gap,
                Clamping::DoublyClamped,
            )?,
            environment,
            pump,
            charge: ChargeModel::excluded(),
            layers: preset.graphene_layers(),
            convention: ModulationConvention::default(),
        };
        device.validate()?;
        Ok(device)
    }

    /// Monolayer graphene, L = 1.8 μm, W = 0.2 μm, d = 0.1 μm, T = 5 K,
    /// Q = 14000, V = 0.5 V.
    pub fn reference_graphene() -> Self {
        Self::reference(MaterialPreset::GrapheneMonolayer)
    }

    /// Silicon film, h = 0.1 μm, with the same plan geometry and environment as
    /// the graphene reference.
    pub fn reference_silicon() -> Self {
        Self::reference(MaterialPreset::Silicon)
    }

    /// The reference geometry and environment with another preset material.
    pub fn reference(preset: MaterialPreset) -> Self {
        Self::from_preset(
            preset,
            1.8e-6,
            0.2e-6,
            0.1e-6,
            Environment::new(5.0, 14000.0).expect("reference environment is valid"),
            Pump::new(0.5, 0.0).expect("reference pump is valid"),
        )
        .expect("reference device is valid")
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.environment.temperature = temperature;
        self
    }

    pub fn with_voltage(mut self, voltage: f64) -> Self {
        self.pump.voltage = voltage;
        self
    }

    pub fn with_convention(mut self, convention: ModulationConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        self.geometry.validate()?;
        self.environment.validate()?;
        self.pump.validate()
    }

    /// Runs the full derivation chain once.
    pub fn analyze(&self) -> Result<Analysis> {
        self.validate()?;
        let modal = DerivedModal::derive(&self.material, &self.geometry, &self.environment);
        let capacitance = build_stack(self.layers, &self.charge, &self.geometry)?;
        let coupling = PumpCoupling::new(
            modulation_depth(&capacitance, &self.pump, &self.geometry),
            &modal,
        );
        let squeeze = squeeze_factor(&modal, &coupling, &self.environment, self.convention);
        let thermal = match self.geometry.clamping {
            Clamping::DoublyClamped => Some(brownian_amplitude(
                &self.material,
                &self.geometry,
                self.environment.temperature,
                DEFAULT_MODES,
            )?),
            Clamping::Cantilever => None,
        };
        Ok(Analysis {
            modal,
            capacitance,
            coupling,
            squeeze,
            thermal,
            phase: self.pump.phase,
        })
    }
}

/// Every derived quantity of one device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Analysis {
    pub modal: DerivedModal,
    pub capacitance: CapacitanceStack,
    pub coupling: PumpCoupling,
    pub squeeze: SqueezeSummary,
    /// `None` for cantilevers.
    pub thermal: Option<BrownianResult>,
    /// Pump phase of the device, rad.
    pub phase: f64,
}

impl Analysis {
    pub fn time_unit(&self) -> TimeUnit {
        match self.coupling.t_char {
            Some(tc) => TimeUnit::Characteristic(tc),
            None => TimeUnit::Relaxation(self.modal.tau),
        }
    }

    pub fn variances(&self, phase: f64, time: f64) -> Result<QuadratureVariance> {
        evolve_variances(&self.modal, &self.coupling, phase, time)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references_analyze() {
        let g = Device::reference_graphene().analyze().unwrap();
        assert!(matches!(g.time_unit(), TimeUnit::Characteristic(_)));
        assert!(g.squeeze.squeezed);
        assert!(g.thermal.is_some());
        let s = Device::reference_silicon().analyze().unwrap();
        assert_eq!(s.time_unit(), TimeUnit::Relaxation(s.modal.tau));
        assert!(!s.squeeze.squeezed);
    }

    #[test]
    fn cantilever_has_no_thermal() {
        let mut d = Device::reference_graphene();
        d.geometry.clamping = Clamping::Cantilever;
        assert!(d.analyze().unwrap().thermal.is_none());
    }

    #[test]
    fn quantum_capacitance_barely_moves_r() {
        let plain = Device::reference_graphene().analyze().unwrap();
        let mut d = Device::reference_graphene();
        d.charge = ChargeModel::graphene(GrapheneLayers::Monolayer);
        let with_cq = d.analyze().unwrap();
        let shift =
            (with_cq.squeeze.r_factor - plain.squeeze.r_factor).abs() / plain.squeeze.r_factor;
        assert!(shift > 0.0 && shift < 0.005);
    }

    #[test]
    fn invalid_device_rejected() {
        let d = Device::reference_graphene().with_voltage(-1.0);
        assert!(d.analyze().is_err());
        let d = Device::reference_silicon();
        let d = Device {
            charge: ChargeModel::graphene(GrapheneLayers::Monolayer),
            ..d
        };
        assert!(d.analyze().is_err());
    }
}
