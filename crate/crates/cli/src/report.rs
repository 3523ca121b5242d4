//! The JSON report written by `compute`.

use nemsqueeze_core::squeezing::phase_window;
use nemsqueeze_core::{Error, ModulationConvention};
use serde::{Deserialize, Serialize};

use crate::config::{ConventionName, DeviceConfigFile};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    /// The input config with defaults applied.
    pub inputs: DeviceConfigFile,
    pub derived: DerivedReport,
    pub capacitance: CapacitanceReport,
    pub coupling: CouplingReport,
    pub squeeze: SqueezeReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thermal: Option<ThermalReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivedReport {
    /// rad/s
    pub omega: f64,
    /// rad/s, including the strain correction
    pub omega_strained: f64,
    /// kg
    pub m_eff: f64,
    pub dx_zp_m: f64,
    pub n_quanta: f64,
    pub tau_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacitanceReport {
    pub c0_f: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cq_f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cs_f: Option<f64>,
    pub ct_f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingReport {
    /// N/m
    pub delta_k: f64,
    /// 1/s
    pub alpha: f64,
    /// α·τ
    pub s: f64,
    /// Absent when the pump never outruns the damping.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_char_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqueezeReport {
    pub r: f64,
    pub db: f64,
    pub squeezed: bool,
    pub convention: ConventionName,
    /// Half-width of the pump-phase window that still squeezes at t = 2·t_c.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_window_rad: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalReport {
    pub x_b_m: f64,
    pub coefficient: f64,
    pub modes: usize,
}

impl Report {
    pub fn compute(config: &DeviceConfigFile) -> Result<Self, CliError> {
        let inputs = config.resolved();
        let a = inputs.to_device()?.analyze()?;
        let phase_window_rad = match a.coupling.t_char {
            Some(tc) => match phase_window(&a.modal, &a.coupling, 2.0 * tc) {
                Ok(w) => Some(w),
                Err(Error::NeverSqueezed { .. } | Error::PhaseNotMonotone) => None,
                Err(e) => return Err(e.into()),
            },
            None => None,
        };
        Ok(Report {
            derived: DerivedReport {
                omega: a.modal.omega,
                omega_strained: a.modal.omega_strained,
                m_eff: a.modal.m_eff,
                dx_zp_m: a.modal.dx_zp,
                n_quanta: a.modal.n_quanta,
                tau_s: a.modal.tau,
            },
            capacitance: CapacitanceReport {
                c0_f: a.capacitance.c_structure,
                cq_f: a.capacitance.c_quantum,
                cs_f: a.capacitance.c_screen,
                ct_f: a.capacitance.c_total,
            },
            coupling: CouplingReport {
                delta_k: a.coupling.delta_k,
                alpha: a.coupling.alpha,
                s: a.coupling.gain_product,
                t_char_s: a.coupling.t_char,
            },
            squeeze: SqueezeReport {
                r: a.squeeze.r_factor,
                db: a.squeeze.db,
                squeezed: a.squeeze.squeezed,
                convention: ConventionName(a.squeeze.convention),
                phase_window_rad,
            },
            thermal: a.thermal.map(|t| ThermalReport {
                x_b_m: t.x_b,
                coefficient: t.coefficient,
                modes: t.modes_used,
            }),
            inputs,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }

    pub fn convention(&self) -> ModulationConvention {
        self.squeeze.convention.0
    }
}
