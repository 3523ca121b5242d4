//! Device description and the derived modal quantities of the fundamental
//! flexural mode.

use std::f64::consts::PI;

use crate::capacitance::GrapheneLayers;
use crate::constants::{HBAR, K_B};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Elastic constants of the film material.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    /// Young's modulus, Pa.
    pub youngs_modulus: f64,
    /// Volumetric mass density, kg/m³.
    pub density: f64,
}

impl Material {
    pub fn new(name: impl Into<String>, youngs_modulus: f64, density: f64) -> Result<Self> {
        let material = Self {
            name: name.into(),
            youngs_modulus,
            density,
        };
        material.validate()?;
        Ok(material)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("youngs_modulus", self.youngs_modulus)?;
        ensure_positive("density", self.density)
    }
}

/// Built-in materials.
///
/// The graphene density is the literal 2.21 kg/m³ that the reference numbers
/// are computed with. `GrapheneMonolayerPhysical` carries the bulk value
/// 2.21e3 kg/m³ and is not used for reproduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaterialPreset {
    Silicon,
    GrapheneMonolayer,
    GrapheneBilayer,
    GrapheneTrilayer,
    GrapheneMonolayerPhysical,
}

const GRAPHENE_E: f64 = 1.03e12;
const GRAPHENE_RHO: f64 = 2.21;
const GRAPHENE_RHO_PHYSICAL: f64 = 2.21e3;
const GRAPHENE_LAYER_H: f64 = 0.335e-9;
const SILICON_E: f64 = 1.50e11;
const SILICON_RHO: f64 = 2.33e3;
const SILICON_H: f64 = 0.1e-6;

impl MaterialPreset {
    pub const ALL: [MaterialPreset; 5] = [
        MaterialPreset::Silicon,
        MaterialPreset::GrapheneMonolayer,
        MaterialPreset::GrapheneBilayer,
        MaterialPreset::GrapheneTrilayer,
        MaterialPreset::GrapheneMonolayerPhysical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MaterialPreset::Silicon => "silicon",
            MaterialPreset::GrapheneMonolayer => "graphene_monolayer",
            MaterialPreset::GrapheneBilayer => "graphene_bilayer",
            MaterialPreset::GrapheneTrilayer => "graphene_trilayer",
            MaterialPreset::GrapheneMonolayerPhysical => "graphene_monolayer_physical",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn material(self) -> Material {
        let (e, rho) = match self {
            MaterialPreset::Silicon => (SILICON_E, SILICON_RHO),
            MaterialPreset::GrapheneMonolayerPhysical => (GRAPHENE_E, GRAPHENE_RHO_PHYSICAL),
            _ => (GRAPHENE_E, GRAPHENE_RHO),
        };
        Material {
            name: self.name().to_string(),
            youngs_modulus: e,
            density: rho,
        }
    }

    /// Film thickness the preset is normally used with, m.
    pub fn default_thickness(self) -> f64 {
        match self {
            MaterialPreset::Silicon => SILICON_H,
            MaterialPreset::GrapheneMonolayer | MaterialPreset::GrapheneMonolayerPhysical => {
                GRAPHENE_LAYER_H
            }
            MaterialPreset::GrapheneBilayer => 2.0 * GRAPHENE_LAYER_H,
            MaterialPreset::GrapheneTrilayer => 3.0 * GRAPHENE_LAYER_H,
        }
    }

    pub fn graphene_layers(self) -> Option<GrapheneLayers> {
        match self {
            MaterialPreset::Silicon => None,
            MaterialPreset::GrapheneMonolayer | MaterialPreset::GrapheneMonolayerPhysical => {
                Some(GrapheneLayers::Monolayer)
            }
            MaterialPreset::GrapheneBilayer => Some(GrapheneLayers::Bilayer),
            MaterialPreset::GrapheneTrilayer => Some(GrapheneLayers::Trilayer),
        }
    }
}

/// Returns the preset material together with its default thickness.
pub fn material_preset(preset: MaterialPreset) -> (Material, f64) {
    (preset.material(), preset.default_thickness())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Clamping {
    Cantilever,
    #[default]
    DoublyClamped,
}

impl Clamping {
    /// Prefactor of h·sqrt(E/ρ)/L² for the fundamental flexural mode.
    pub fn frequency_coefficient(self) -> f64 {
        match self {
            Clamping::Cantilever => 3.52,
            Clamping::DoublyClamped => 6.48,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Clamping::Cantilever => "cantilever",
            Clamping::DoublyClamped => "doubly_clamped",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "cantilever" => Some(Clamping::Cantilever),
            "doubly_clamped" => Some(Clamping::DoublyClamped),
            _ => None,
        }
    }
}

/// Film dimensions, all in metres. `gap` is the film–substrate distance d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub length: f64,
    pub width: f64,
    pub thickness: f64,
    pub gap: f64,
    pub clamping: Clamping,
}

impl Geometry {
    pub fn new(
        length: f64,
        width: f64,
        thickness: f64,
        gap: f64,
        clamping: Clamping,
    ) -> Result<Self> {
        let geometry = Self {
            length,
            width,
            thickness,
            gap,
            clamping,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("length", self.length)?;
        ensure_positive("width", self.width)?;
        ensure_positive("thickness", self.thickness)?;
        ensure_positive("gap", self.gap)
    }

    pub fn area(&self) -> f64 {
        self.length * self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    /// Absolute temperature, K.
    pub temperature: f64,
    pub quality_factor: f64,
    /// Applied strain ε, dimensionless.
    pub strain: f64,
    /// Effective density after straining, kg/m³. Falls back to the material density.
    pub strained_density: Option<f64>,
}

impl Environment {
    pub fn new(temperature: f64, quality_factor: f64) -> Result<Self> {
        let env = Self {
            temperature,
            quality_factor,
            strain: 0.0,
            strained_density: None,
        };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("temperature", self.temperature)?;
        if !(self.quality_factor.is_finite() && self.quality_factor >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "quality_factor",
                reason: format!("must be finite and >= 1, got {}", self.quality_factor),
            });
        }
        ensure_non_negative("strain", self.strain)?;
        if let Some(rho) = self.strained_density {
            ensure_positive("strained_density", rho)?;
        }
        Ok(())
    }

    pub fn strained_density_or(&self, material: &Material) -> f64 {
        self.strained_density.unwrap_or(material.density)
    }
}

/// Fundamental flexural angular frequency, rad/s.
pub fn modal_frequency(material: &Material, geometry: &Geometry) -> f64 {
    geometry.clamping.frequency_coefficient()
        * geometry.thickness
        * (material.youngs_modulus / material.density).sqrt()
        / (geometry.length * geometry.length)
}

/// Frequency of the strained film, sqrt(ω² + E·ε·π²/(ρ′·L²)).
pub fn strained_frequency(
    omega: f64,
    material: &Material,
    geometry: &Geometry,
    env: &Environment,
) -> f64 {
    if env.strain == 0.0 {
        return omega;
    }
    let rho = env.strained_density_or(material);
    let tension =
        material.youngs_modulus * env.strain * PI * PI / (rho * geometry.length * geometry.length);
    (omega * omega + tension).sqrt()
}

/// Effective motional mass ρLWh/4, kg.
pub fn effective_mass(material: &Material, geometry: &Geometry) -> f64 {
    material.density * geometry.length * geometry.width * geometry.thickness / 4.0
}

/// Zero-point displacement uncertainty sqrt(ħ/(2·m·ω)), m.
pub fn zero_point_uncertainty(m_eff: f64, omega: f64) -> f64 {
    (HBAR / (2.0 * m_eff * omega)).sqrt()
}

/// Bose–Einstein occupation of a mode at `omega` and `temperature`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> f64 {
    let x = HBAR * omega / (K_B * temperature);
    // exp_m1 keeps full precision for x -> 0 and saturates to inf (N = 0) for large x.
    1.0 / x.exp_m1()
}

pub fn relaxation_time(quality_factor: f64, omega: f64) -> f64 {
    quality_factor / omega
}

/// Quantities of the fundamental mode that every downstream stage consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedModal {
    /// rad/s
    pub omega: f64,
    /// rad/s, equal to `omega` without strain
    pub omega_strained: f64,
    /// kg
    pub m_eff: f64,
    /// m
    pub dx_zp: f64,
    pub n_quanta: f64,
    /// s
    pub tau: f64,
}

impl DerivedModal {
    pub fn derive(material: &Material, geometry: &Geometry, env: &Environment) -> Self {
        let omega = modal_frequency(material, geometry);
        let m_eff = effective_mass(material, geometry);
        Self {
            omega,
            omega_strained: strained_frequency(omega, material, geometry, env),
            m_eff,
            dx_zp: zero_point_uncertainty(m_eff, omega),
            n_quanta: thermal_occupation(omega, env.temperature),
            tau: relaxation_time(env.quality_factor, omega),
        }
    }

    /// Physical mass of the film, 4·M_eff.
    pub fn physical_mass(&self) -> f64 {
        4.0 * self.m_eff
    }

    /// ħ/(2·M_eff·ω), the zero-point variance in m².
    pub fn zero_point_variance(&self) -> f64 {
        HBAR / (2.0 * self.m_eff * self.omega)
    }

    /// Thermal-equilibrium variance (2N+1)·Δx_zp².
    pub fn thermal_variance(&self) -> f64 {
        self.zero_point_variance() * (2.0 * self.n_quanta + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn graphene_ref() -> (Material, Geometry, Environment) {
        let (m, h) = material_preset(MaterialPreset::GrapheneMonolayer);
        let g = Geometry::new(1.8e-6, 0.2e-6, h, 0.1e-6, Clamping::DoublyClamped).unwrap();
        (m, g, Environment::new(5.0, 14000.0).unwrap())
    }

    fn silicon_ref() -> (Material, Geometry, Environment) {
        let (m, h) = material_preset(MaterialPreset::Silicon);
        let g = Geometry::new(1.8e-6, 0.2e-6, h, 0.1e-6, Clamping::DoublyClamped).unwrap();
        (m, g, Environment::new(5.0, 14000.0).unwrap())
    }

    #[test]
    fn preset_constants_are_pinned() {
        let (g, h) = material_preset(MaterialPreset::GrapheneMonolayer);
        assert_eq!((g.youngs_modulus, g.density, h), (1.03e12, 2.21, 0.335e-9));
        let (s, h) = material_preset(MaterialPreset::Silicon);
        assert_eq!((s.youngs_modulus, s.density, h), (1.50e11, 2.33e3, 0.1e-6));
        assert_eq!(
            MaterialPreset::GrapheneBilayer.default_thickness(),
            0.670e-9
        );
        assert!(
            rel(
                MaterialPreset::GrapheneTrilayer.default_thickness(),
                1.005e-9
            ) < 1e-15
        );
        assert_eq!(
            MaterialPreset::GrapheneTrilayer.default_thickness(),
            3.0 * MaterialPreset::GrapheneMonolayer.default_thickness()
        );
        assert_eq!(
            MaterialPreset::GrapheneMonolayerPhysical.material().density,
            2.21e3
        );
        for p in MaterialPreset::ALL {
            assert_eq!(MaterialPreset::from_name(p.name()), Some(p));
        }
    }

    #[test]
    fn graphene_reference_frequency() {
        let (m, g, _) = graphene_ref();
        let w = modal_frequency(&m, &g);
        assert!(rel(w, 4.574_011_774_187_65e8) < 1e-12);
    }

    #[test]
    fn frequency_scaling_laws() {
        let (m, g, _) = graphene_ref();
        let w = modal_frequency(&m, &g);
        let g2 = Geometry {
            length: 2.0 * g.length,
            ..g
        };
        assert!(rel(modal_frequency(&m, &g2), w / 4.0) < 1e-12);
        let g3 = Geometry {
            thickness: 2.0 * g.thickness,
            ..g
        };
        assert!(rel(modal_frequency(&m, &g3), 2.0 * w) < 1e-12);
        let m2 = Material {
            density: 2.0 * m.density,
            ..m.clone()
        };
        assert!(rel(modal_frequency(&m2, &g), w / 2f64.sqrt()) < 1e-12);
        let m3 = Material {
            youngs_modulus: 2.0 * m.youngs_modulus,
            ..m.clone()
        };
        assert!(rel(modal_frequency(&m3, &g), w * 2f64.sqrt()) < 1e-12);
        let cant = Geometry {
            clamping: Clamping::Cantilever,
            ..g
        };
        assert!(rel(modal_frequency(&m, &cant) / w, 3.52 / 6.48) < 1e-12);
    }

    #[test]
    fn strain_raises_frequency() {
        let (m, g, mut env) = graphene_ref();
        let w = modal_frequency(&m, &g);
        assert_eq!(strained_frequency(w, &m, &g, &env), w);
        env.strain = 1e-4;
        // hand evaluation of sqrt(w^2 + E eps pi^2 / (rho' L^2))
        assert!(
            rel(
                strained_frequency(w, &m, &g, &env),
                1.192_393_519_308_235_7e10
            ) < 1e-12
        );
        env.strained_density = Some(2.21e3);
        assert!(rel(strained_frequency(w, &m, &g, &env), 5.926_102_022_036_041e8) < 1e-12);
        let mut last = w;
        for k in 1..20 {
            env.strain = k as f64 * 1e-6;
            let ws = strained_frequency(w, &m, &g, &env);
            assert!(ws > last);
            last = ws;
        }
    }

    #[test]
    fn effective_mass_references() {
        let (m, g, _) = graphene_ref();
        assert!(rel(effective_mass(&m, &g), 6.66315e-23) < 1e-12);
        let (m, g, _) = silicon_ref();
        assert!(rel(effective_mass(&m, &g), 2.097e-17) < 1e-12);
        let g2 = Geometry {
            width: 3.0 * g.width,
            ..g
        };
        assert!(rel(effective_mass(&m, &g2), 3.0 * effective_mass(&m, &g)) < 1e-12);
    }

    #[test]
    fn zero_point_references() {
        let (m, g, env) = graphene_ref();
        let d = DerivedModal::derive(&m, &g, &env);
        assert!(rel(d.dx_zp, 0.0416e-9) < 0.01);
        let (m, g, env) = silicon_ref();
        let d = DerivedModal::derive(&m, &g, &env);
        assert!(rel(d.dx_zp, 3.9594e-14) < 0.01);
        assert!(
            rel(
                zero_point_uncertainty(4e-20, 1e8),
                zero_point_uncertainty(1e-20, 1e8) / 2.0
            ) < 1e-12
        );
    }

    #[test]
    fn occupation_references() {
        let w = 4.574_011_774_187_65e8;
        assert!(rel(thermal_occupation(w, 5.0), 1_430.632_570_239_780_5) < 1e-9);
        assert!(rel(thermal_occupation(w, 0.02), 5.239_079_885_459_16) < 1e-9);
        assert_eq!(thermal_occupation(1e15, 1e-3), 0.0);
        // classical limit kT/(hbar w) - 1/2
        let x: f64 = 1e-9;
        let n = thermal_occupation(x * K_B / HBAR, 1.0);
        assert!(rel(n, 1.0 / x - 0.5) < 1e-12);
    }

    #[test]
    fn occupation_monotone_on_grid() {
        let temps: Vec<f64> = (0..10).map(|i| 0.01 * 3f64.powi(i)).collect();
        let omegas: Vec<f64> = (0..10).map(|i| 1e6 * 4f64.powi(i)).collect();
        for &w in &omegas {
            for pair in temps.windows(2) {
                assert!(thermal_occupation(w, pair[1]) > thermal_occupation(w, pair[0]));
            }
        }
        for &t in &temps {
            for pair in omegas.windows(2) {
                assert!(thermal_occupation(pair[1], t) < thermal_occupation(pair[0], t));
            }
        }
    }

    #[test]
    fn relaxation_references() {
        let (m, g, env) = graphene_ref();
        let d = DerivedModal::derive(&m, &g, &env);
        assert!(rel(d.tau, 30.51e-6) < 0.01);
        let (m, g, env) = silicon_ref();
        let d = DerivedModal::derive(&m, &g, &env);
        assert!(rel(d.tau, 8.724_295_578e-6) < 1e-9);
        assert_eq!(
            relaxation_time(2.0 * 14000.0, 1e8),
            2.0 * relaxation_time(14000.0, 1e8)
        );
    }

    #[test]
    fn zero_point_identity() {
        for (m, g, env) in [graphene_ref(), silicon_ref()] {
            let d = DerivedModal::derive(&m, &g, &env);
            assert!(rel(d.dx_zp * d.dx_zp * 2.0 * d.m_eff * d.omega, HBAR) < 1e-12);
            assert_eq!(d.tau, env.quality_factor / d.omega);
            assert_eq!(d.physical_mass(), 4.0 * d.m_eff);
        }
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(Material::new("x", -1.0, 1.0).is_err());
        assert!(Geometry::new(1e-6, 1e-6, 1e-9, 0.0, Clamping::Cantilever).is_err());
        assert!(Environment::new(0.0, 100.0).is_err());
        assert!(Environment::new(1.0, 0.5).is_err());
        let mut env = Environment::new(1.0, 10.0).unwrap();
        env.strain = -1e-3;
        assert!(env.validate().is_err());
    }
}
