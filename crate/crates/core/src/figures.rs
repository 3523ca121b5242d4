//! Named presets that regenerate each figure's data as one or more tables.
//!
//! * `fig2a`, `fig2b_*` — Δx_zp over L × W for silicon and graphene stacks.
//! * `fig3a`–`fig3d` — ΔX₁/Δx_zp and ΔX₂/Δx_zp versus pump phase at 0.2 and 2
//!   time units (a, c: silicon; b, d: graphene).
//! * `fig4a`, `fig4b_*` — log₁₀ R over L × V.
//! * `fig5a`, `fig5b` — ΔX₁/Δx_zp and ΔX₂/Δx_zp versus t/t_c at θ = 0.
//!
//! Time-resolved panels use t_c as their time unit, or τ for devices where t_c
//! is undefined; the unit is recorded in the table metadata.

use std::f64::consts::PI;

use crate::device::Device;
use crate::error::Result;
use crate::model::MaterialPreset;
use crate::sweep::{
    evaluate_point, run_grid, run_table, AxisScale, Metric, SweepAxis, SweepParameter,
};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig3,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5a,
        FigureId::Fig5b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig5a => "fig5a",
            FigureId::Fig5b => "fig5b",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// One output table of a figure preset.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePanel {
    /// File stem, e.g. `fig4b_bilayer`.
    pub name: String,
    pub table: Table,
}

const GRAPHENE_STACKS: [(MaterialPreset, &str); 3] = [
    (MaterialPreset::GrapheneMonolayer, "monolayer"),
    (MaterialPreset::GrapheneBilayer, "bilayer"),
    (MaterialPreset::GrapheneTrilayer, "trilayer"),
];

/// L axis shared by the geometry figures.
pub fn length_axis() -> SweepAxis {
    SweepAxis {
        parameter: SweepParameter::Length,
        min: 1e-7,
        max: 1e-5,
        scale: AxisScale::Log,
        samples: 41,
    }
}

fn width_axis() -> SweepAxis {
    SweepAxis {
        parameter: SweepParameter::Width,
        min: 5e-8,
        max: 2e-6,
        scale: AxisScale::Log,
        samples: 33,
    }
}

/// V axis of the squeezing-map figures.
pub fn voltage_axis() -> SweepAxis {
    SweepAxis {
        parameter: SweepParameter::Voltage,
        min: 1e-2,
        max: 10.0,
        scale: AxisScale::Log,
        samples: 31,
    }
}

/// Full pump-phase circle.
pub fn phase_axis() -> SweepAxis {
    SweepAxis {
        parameter: SweepParameter::Phase,
        min: -PI,
        max: PI,
        scale: AxisScale::Linear,
        samples: 721,
    }
}

/// Normalised time axis of the transient figures.
pub fn time_axis() -> SweepAxis {
    SweepAxis {
        parameter: SweepParameter::TimeTc,
        min: 0.0,
        max: 5.0,
        scale: AxisScale::Linear,
        samples: 101,
    }
}

fn grid_panel(
    name: String,
    device: &Device,
    axes: &[SweepAxis],
    metric: Metric,
) -> Result<FigurePanel> {
    Ok(FigurePanel {
        name,
        table: run_grid(device, axes, metric)?.to_table(),
    })
}

/// ΔX₁/Δx_zp and ΔX₂/Δx_zp over one axis, with `fixed` pinned at every point.
/// The table records the device time unit used by any `time_tc` values.
pub fn quadrature_table(
    device: &Device,
    fixed: &[(SweepParameter, f64)],
    axis: SweepAxis,
) -> Result<Table> {
    run_table(device, fixed, axis, &[Metric::Dx1Ratio, Metric::Dx2Ratio])
}

fn quadrature_panel(
    name: String,
    device: &Device,
    fixed: &[(SweepParameter, f64)],
    axis: SweepAxis,
) -> Result<FigurePanel> {
    Ok(FigurePanel {
        name,
        table: quadrature_table(device, fixed, axis)?,
    })
}

/// All panels of figure `id`, computed from the reference devices.
pub fn figure_preset(id: FigureId) -> Result<Vec<FigurePanel>> {
    match id {
        FigureId::Fig2a => Ok(vec![grid_panel(
            "fig2a".into(),
            &Device::reference_silicon(),
            &[length_axis(), width_axis()],
            Metric::DxZp,
        )?]),
        FigureId::Fig2b => GRAPHENE_STACKS
            .iter()
            .map(|&(preset, label)| {
                grid_panel(
                    format!("fig2b_{label}"),
                    &Device::reference(preset),
                    &[length_axis(), width_axis()],
                    Metric::DxZp,
                )
            })
            .collect(),
        FigureId::Fig3 => {
            let panels = [
                ("fig3a", Device::reference_silicon(), 0.2),
                ("fig3b", Device::reference_graphene(), 0.2),
                ("fig3c", Device::reference_silicon(), 2.0),
                ("fig3d", Device::reference_graphene(), 2.0),
            ];
            panels
                .into_iter()
                .map(|(name, device, units)| {
                    quadrature_panel(
                        name.into(),
                        &device,
                        &[(SweepParameter::TimeTc, units)],
                        phase_axis(),
                    )
                })
                .collect()
        }
        FigureId::Fig4a => Ok(vec![grid_panel(
            "fig4a".into(),
            &Device::reference_silicon(),
            &[length_axis(), voltage_axis()],
            Metric::Log10R,
        )?]),
        FigureId::Fig4b => GRAPHENE_STACKS
            .iter()
            .map(|&(preset, label)| {
                grid_panel(
                    format!("fig4b_{label}"),
                    &Device::reference(preset),
                    &[length_axis(), voltage_axis()],
                    Metric::Log10R,
                )
            })
            .collect(),
        FigureId::Fig5a => Ok(vec![quadrature_panel(
            "fig5a".into(),
            &Device::reference_silicon(),
            &[(SweepParameter::Phase, 0.0)],
            time_axis(),
        )?]),
        FigureId::Fig5b => Ok(vec![quadrature_panel(
            "fig5b".into(),
            &Device::reference_graphene(),
            &[(SweepParameter::Phase, 0.0)],
            time_axis(),
        )?]),
    }
}

/// ΔX₁/Δx_zp of the reference graphene device at θ = 0 after `units` t_c.
pub fn graphene_transient_ratio(units: f64) -> Result<Option<f64>> {
    evaluate_point(
        &Device::reference_graphene(),
        &[
            (SweepParameter::Phase, 0.0),
            (SweepParameter::TimeTc, units),
        ],
        Metric::Dx1Ratio,
    )
}
