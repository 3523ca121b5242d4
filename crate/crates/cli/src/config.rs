//! JSON device configuration files.
//!
//! Every numeric key carries its SI unit as a suffix (`length_m`,
//! `voltage_v`, ...). Unknown keys are rejected, and every error names the
//! offending field path.

use std::fmt;
use std::path::Path;

use nemsqueeze_core::capacitance::build_stack;
use nemsqueeze_core::{
    ChargeModel, Clamping, Device, Environment, Error, Geometry, Material, MaterialPreset,
    ModulationConvention, Pump,
};
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceConfigFile {
    pub material: MaterialSpec,
    pub geometry: GeometryConfig,
    pub environment: EnvironmentConfig,
    pub pump: PumpConfig,
    #[serde(default)]
    pub charge_model: ChargeModelConfig,
    #[serde(default)]
    pub convention: ConventionName,
}

/// A preset name, or explicit elastic constants.
#[derive(Debug, Clone, PartialEq)]
pub enum MaterialSpec {
    Preset(MaterialPreset),
    Custom(CustomMaterial),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomMaterial {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub youngs_modulus_pa: f64,
    pub density_kg_m3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub length_m: f64,
    pub width_m: f64,
    /// Optional for presets, which supply their own film thickness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickness_m: Option<f64>,
    pub gap_m: f64,
    #[serde(default)]
    pub clamping: ClampingName,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentConfig {
    pub temperature_k: f64,
    pub quality_factor: f64,
    #[serde(default)]
    pub strain: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strained_density_kg_m3: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpConfig {
    pub voltage_v: f64,
    #[serde(default)]
    pub phase_rad: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeModelConfig {
    #[serde(default)]
    pub include_quantum_capacitance: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier_density_m2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_mass_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub screen_capacitance_f: Option<f64>,
}

macro_rules! named_enum {
    ($wrapper:ident, $inner:ty, $expecting:literal) => {
        #[derive(Debug, Clone, Copy, PartialEq, Default)]
        pub struct $wrapper(pub $inner);

        impl Serialize for $wrapper {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.0.name())
            }
        }

        impl<'de> Deserialize<'de> for $wrapper {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let name = String::deserialize(d)?;
                <$inner>::from_name(&name).map($wrapper).ok_or_else(|| {
                    de::Error::custom(format!("unknown value `{name}`, expected {}", $expecting))
                })
            }
        }
    };
}

named_enum!(ClampingName, Clamping, "doubly_clamped or cantilever");
named_enum!(
    ConventionName,
    ModulationConvention,
    "as_printed or paper_numbers"
);

impl Serialize for MaterialSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MaterialSpec::Preset(p) => s.serialize_str(p.name()),
            MaterialSpec::Custom(c) => c.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for MaterialSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct SpecVisitor;

        impl<'de> Visitor<'de> for SpecVisitor {
            type Value = MaterialSpec;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a material preset name or {youngs_modulus_pa, density_kg_m3}")
            }

            fn visit_str<E: de::Error>(self, name: &str) -> Result<MaterialSpec, E> {
                MaterialPreset::from_name(name)
                    .map(MaterialSpec::Preset)
                    .ok_or_else(|| {
                        let known: Vec<&str> =
                            MaterialPreset::ALL.iter().map(|p| p.name()).collect();
                        E::custom(format!(
                            "unknown material preset `{name}`, expected one of {}",
                            known.join(", ")
                        ))
                    })
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<MaterialSpec, A::Error> {
                CustomMaterial::deserialize(de::value::MapAccessDeserializer::new(map))
                    .map(MaterialSpec::Custom)
            }
        }

        d.deserialize_any(SpecVisitor)
    }
}

/// Config path of a core parameter name, for error messages.
fn field_path(name: &str) -> &'static str {
    match name {
        "youngs_modulus" => "material.youngs_modulus_pa",
        "density" => "material.density_kg_m3",
        "length" => "geometry.length_m",
        "width" => "geometry.width_m",
        "thickness" => "geometry.thickness_m",
        "gap" => "geometry.gap_m",
        "temperature" => "environment.temperature_k",
        "quality_factor" => "environment.quality_factor",
        "strain" => "environment.strain",
        "strained_density" => "environment.strained_density_kg_m3",
        "voltage" => "pump.voltage_v",
        "phase" => "pump.phase_rad",
        "carrier_density" => "charge_model.carrier_density_m2",
        "effective_mass_ratio" => "charge_model.effective_mass_ratio",
        "screen_capacitance" => "charge_model.screen_capacitance_f",
        _ => "",
    }
}

fn as_validation(err: Error) -> CliError {
    match err {
        Error::InvalidParameter { name, reason } => CliError::validation(field_path(name), reason),
        Error::MissingCarrierDensity => CliError::validation(
            "charge_model.carrier_density_m2",
            "required for the monolayer quantum capacitance",
        ),
        Error::MissingEffectiveMass => CliError::validation(
            "charge_model.effective_mass_ratio",
            "required for the multilayer quantum capacitance",
        ),
        Error::QuantumCapacitanceUnavailable => CliError::validation(
            "charge_model.include_quantum_capacitance",
            "quantum capacitance is only modelled for graphene presets",
        ),
        other => CliError::Computation(other),
    }
}

impl DeviceConfigFile {
    /// Parses and validates config text.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let config: Self = serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            CliError::validation(path, e.into_inner().to_string())
        })?;
        config.to_device()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// The config with every default written out explicitly.
    pub fn resolved(&self) -> Self {
        let mut out = self.clone();
        if let MaterialSpec::Preset(p) = self.material {
            out.geometry
                .thickness_m
                .get_or_insert(p.default_thickness());
        }
        if out.charge_model.include_quantum_capacitance {
            if let Some(layers) = self.preset().and_then(MaterialPreset::graphene_layers) {
                let defaults = ChargeModel::graphene(layers);
                let cm = &mut out.charge_model;
                cm.carrier_density_m2 = cm.carrier_density_m2.or(defaults.carrier_density);
                cm.effective_mass_ratio = cm.effective_mass_ratio.or(defaults.effective_mass_ratio);
            }
        }
        out
    }

    fn preset(&self) -> Option<MaterialPreset> {
        match self.material {
            MaterialSpec::Preset(p) => Some(p),
            MaterialSpec::Custom(_) => None,
        }
    }

    /// Builds and validates the core device.
    pub fn to_device(&self) -> Result<Device, CliError> {
        let cfg = self.resolved();
        let material = match &cfg.material {
            MaterialSpec::Preset(p) => p.material(),
            MaterialSpec::Custom(c) => Material {
                name: c.name.clone().unwrap_or_else(|| "custom".into()),
                youngs_modulus: c.youngs_modulus_pa,
                density: c.density_kg_m3,
            },
        };
        let thickness = cfg.geometry.thickness_m.ok_or_else(|| {
            CliError::validation("geometry.thickness_m", "required for custom materials")
        })?;
        let charge = ChargeModel {
            carrier_density: cfg.charge_model.carrier_density_m2,
            effective_mass_ratio: cfg.charge_model.effective_mass_ratio,
            include_quantum: cfg.charge_model.include_quantum_capacitance,
            screen_capacitance: cfg.charge_model.screen_capacitance_f,
        };
        let device = Device {
            material,
            geometry: Geometry {
                length: cfg.geometry.length_m,
                width: cfg.geometry.width_m,
                thickness,
                gap: cfg.geometry.gap_m,
                clamping: cfg.geometry.clamping.0,
            },
            environment: Environment {
                temperature: cfg.environment.temperature_k,
                quality_factor: cfg.environment.quality_factor,
                strain: cfg.environment.strain,
                strained_density: cfg.environment.strained_density_kg_m3,
            },
            pump: Pump {
                voltage: cfg.pump.voltage_v,
                phase: cfg.pump.phase_rad,
            },
            charge,
            layers: cfg.preset().and_then(MaterialPreset::graphene_layers),
            convention: cfg.convention.0,
        };
        device.validate().map_err(as_validation)?;
        build_stack(device.layers, &device.charge, &device.geometry).map_err(as_validation)?;
        Ok(device)
    }
}

pub fn load_config(path: &Path) -> Result<DeviceConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    DeviceConfigFile::from_json(&text)
}
