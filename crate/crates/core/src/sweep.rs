//! One- and two-axis grid evaluation over device and drive parameters.
//!
//! Every grid cell rebuilds the derivation chain from the base device, so a
//! cell is bit-identical to analysing that device directly. Cells are
//! evaluated in parallel and collected in row-major order (first axis outer).

use rayon::prelude::*;

use crate::device::{Analysis, Device};
use crate::dynamics::ModulationConvention;
use crate::error::{Error, Result};
use crate::model::Clamping;
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    Length,
    Width,
    Thickness,
    Gap,
    Voltage,
    Temperature,
    Phase,
    /// Evaluation time in seconds.
    Time,
    /// Evaluation time in units of the device time scale (t_c, or τ when t_c is undefined).
    TimeTc,
    QualityFactor,
    Strain,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 11] = [
        SweepParameter::Length,
        SweepParameter::Width,
        SweepParameter::Thickness,
        SweepParameter::Gap,
        SweepParameter::Voltage,
        SweepParameter::Temperature,
        SweepParameter::Phase,
        SweepParameter::Time,
        SweepParameter::TimeTc,
        SweepParameter::QualityFactor,
        SweepParameter::Strain,
    ];

    /// Column name, carrying the SI unit suffix.
    pub fn column(self) -> &'static str {
        match self {
            SweepParameter::Length => "length_m",
            SweepParameter::Width => "width_m",
            SweepParameter::Thickness => "thickness_m",
            SweepParameter::Gap => "gap_m",
            SweepParameter::Voltage => "voltage_v",
            SweepParameter::Temperature => "temperature_k",
            SweepParameter::Phase => "phase_rad",
            SweepParameter::Time => "time_s",
            SweepParameter::TimeTc => "time_tc",
            SweepParameter::QualityFactor => "quality_factor",
            SweepParameter::Strain => "strain",
        }
    }

    fn short(self) -> &'static str {
        match self {
            SweepParameter::Length => "length",
            SweepParameter::Width => "width",
            SweepParameter::Thickness => "thickness",
            SweepParameter::Gap => "gap",
            SweepParameter::Voltage => "voltage",
            SweepParameter::Temperature => "temperature",
            SweepParameter::Phase => "phase",
            SweepParameter::Time => "time",
            SweepParameter::TimeTc => "time_tc",
            SweepParameter::QualityFactor => "quality_factor",
            SweepParameter::Strain => "strain",
        }
    }

    /// Accepts either the bare name (`length`) or the column name (`length_m`).
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.short() == name || p.column() == name)
    }

    fn is_time(self) -> bool {
        matches!(self, SweepParameter::Time | SweepParameter::TimeTc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisScale {
    Linear,
    Log,
}

impl AxisScale {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "linear" | "lin" => Some(AxisScale::Linear),
            "log" => Some(AxisScale::Log),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub min: f64,
    pub max: f64,
    pub scale: AxisScale,
    pub samples: usize,
}

impl SweepAxis {
    pub fn new(
        parameter: SweepParameter,
        min: f64,
        max: f64,
        scale: AxisScale,
        samples: usize,
    ) -> Result<Self> {
        let axis = Self {
            parameter,
            min,
            max,
            scale,
            samples,
        };
        axis.validate()?;
        Ok(axis)
    }

    /// A degenerate axis holding exactly one value.
    pub fn single(parameter: SweepParameter, value: f64) -> Self {
        Self {
            parameter,
            min: value,
            max: value,
            scale: AxisScale::Linear,
            samples: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let name = self.parameter.column();
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidAxis(format!("{name}: bounds must be finite")));
        }
        match self.samples {
            0 => {
                return Err(Error::InvalidAxis(format!(
                    "{name}: needs at least one sample"
                )))
            }
            1 if self.min != self.max => {
                return Err(Error::InvalidAxis(format!(
                    "{name}: a single sample requires min == max"
                )))
            }
            1 => {}
            _ if self.min >= self.max => {
                return Err(Error::InvalidAxis(format!("{name}: min must be below max")))
            }
            _ => {}
        }
        if self.scale == AxisScale::Log && self.min <= 0.0 {
            return Err(Error::InvalidAxis(format!(
                "{name}: log scale requires min > 0"
            )));
        }
        Ok(())
    }

    /// Sample points; both end points are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.samples == 1 {
            return vec![self.min];
        }
        let last = self.samples - 1;
        (0..self.samples)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == last {
                    return self.max;
                }
                let f = i as f64 / last as f64;
                match self.scale {
                    AxisScale::Linear => self.min * (1.0 - f) + self.max * f,
                    AxisScale::Log => (self.min.ln() * (1.0 - f) + self.max.ln() * f).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    DxZp,
    RFactor,
    Log10R,
    Db,
    VarX1,
    VarX2,
    /// ΔX₁/Δx_zp
    Dx1Ratio,
    /// ΔX₂/Δx_zp
    Dx2Ratio,
    XB,
    TChar,
    Tau,
}

impl Metric {
    pub const ALL: [Metric; 11] = [
        Metric::DxZp,
        Metric::RFactor,
        Metric::Log10R,
        Metric::Db,
        Metric::VarX1,
        Metric::VarX2,
        Metric::Dx1Ratio,
        Metric::Dx2Ratio,
        Metric::XB,
        Metric::TChar,
        Metric::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::DxZp => "dx_zp",
            Metric::RFactor => "r_factor",
            Metric::Log10R => "log10_r",
            Metric::Db => "db",
            Metric::VarX1 => "var_x1",
            Metric::VarX2 => "var_x2",
            Metric::Dx1Ratio => "dx1_ratio",
            Metric::Dx2Ratio => "dx2_ratio",
            Metric::XB => "x_b",
            Metric::TChar => "t_char",
            Metric::Tau => "tau",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn units(self) -> &'static str {
        match self {
            Metric::DxZp | Metric::XB => "m",
            Metric::VarX1 | Metric::VarX2 => "m^2",
            Metric::Db => "dB",
            Metric::TChar | Metric::Tau => "s",
            Metric::RFactor | Metric::Log10R | Metric::Dx1Ratio | Metric::Dx2Ratio => "1",
        }
    }

    /// Whether the value changes with the modulation convention.
    pub fn uses_convention(self) -> bool {
        matches!(self, Metric::RFactor | Metric::Log10R | Metric::Db)
    }

    fn uses_time(self) -> bool {
        matches!(
            self,
            Metric::VarX1 | Metric::VarX2 | Metric::Dx1Ratio | Metric::Dx2Ratio
        )
    }

    /// Value of the metric for an analysed device. Time-resolved metrics are
    /// evaluated at `time` seconds.
    pub fn evaluate(self, analysis: &Analysis, time: f64) -> Result<Option<f64>> {
        let value = match self {
            Metric::DxZp => analysis.modal.dx_zp,
            Metric::RFactor => analysis.squeeze.r_factor,
            Metric::Log10R => analysis.squeeze.r_factor.log10(),
            Metric::Db => analysis.squeeze.db,
            Metric::VarX1 => analysis.variances(analysis.phase, time)?.var_x1,
            Metric::VarX2 => analysis.variances(analysis.phase, time)?.var_x2,
            Metric::Dx1Ratio => {
                analysis.variances(analysis.phase, time)?.dx1() / analysis.modal.dx_zp
            }
            Metric::Dx2Ratio => {
                analysis.variances(analysis.phase, time)?.dx2() / analysis.modal.dx_zp
            }
            Metric::XB => {
                analysis
                    .thermal
                    .ok_or_else(|| Error::IncompatibleMetric {
                        metric: self.name(),
                        reason: "Brownian amplitude needs a doubly clamped film".into(),
                    })?
                    .x_b
            }
            Metric::TChar => return Ok(analysis.coupling.t_char),
            Metric::Tau => analysis.modal.tau,
        };
        Ok(Some(value))
    }
}

/// Time-resolved metrics default to this many device time units when no time
/// is pinned.
pub const DEFAULT_EVAL_TIME_UNITS: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    pub metric: Metric,
    pub convention: ModulationConvention,
    /// Row-major, first axis outer. `None` marks an undefined cell (t_char).
    pub values: Vec<Option<f64>>,
    /// Unit of a `time_tc` axis: `t_c`, `tau`, or `t_c|tau` when the grid mixes
    /// cells with and without a characteristic time.
    pub time_unit: Option<String>,
}

impl SweepResult {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.samples).collect()
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(
            self.axes
                .iter()
                .map(|a| (a.parameter.column().to_string(), a.values()))
                .collect(),
        );
        table.push_column(self.metric, self.values.clone());
        if self.metric.uses_convention() {
            table.convention = Some(self.convention);
        }
        table.time_unit = self.time_unit.clone();
        table
    }
}

fn apply(device: &mut Device, parameter: SweepParameter, value: f64) {
    match parameter {
        SweepParameter::Length => device.geometry.length = value,
        SweepParameter::Width => device.geometry.width = value,
        SweepParameter::Thickness => device.geometry.thickness = value,
        SweepParameter::Gap => device.geometry.gap = value,
        SweepParameter::Voltage => device.pump.voltage = value,
        SweepParameter::Temperature => device.environment.temperature = value,
        SweepParameter::Phase => device.pump.phase = value,
        SweepParameter::QualityFactor => device.environment.quality_factor = value,
        SweepParameter::Strain => device.environment.strain = value,
        SweepParameter::Time | SweepParameter::TimeTc => {}
    }
}

/// Evaluates `metric` for `base` with `assignments` applied.
pub fn evaluate_point(
    base: &Device,
    assignments: &[(SweepParameter, f64)],
    metric: Metric,
) -> Result<Option<f64>> {
    evaluate_cell(base, assignments, metric).map(|(value, _)| value)
}

fn evaluate_cell(
    base: &Device,
    assignments: &[(SweepParameter, f64)],
    metric: Metric,
) -> Result<(Option<f64>, &'static str)> {
    let mut device = base.clone();
    for &(p, v) in assignments {
        apply(&mut device, p, v);
    }
    let analysis = device.analyze()?;
    let time = if metric.uses_time() {
        let pinned = assignments.iter().rev().find(|(p, _)| p.is_time());
        match pinned {
            Some(&(SweepParameter::Time, t)) => t,
            Some(&(_, units)) => units * analysis.time_unit().seconds(),
            None => DEFAULT_EVAL_TIME_UNITS * analysis.time_unit().seconds(),
        }
    } else {
        0.0
    };
    Ok((
        metric.evaluate(&analysis, time)?,
        analysis.time_unit().label(),
    ))
}

/// Evaluates `metric` over the grid spanned by one or two `axes`.
pub fn run_grid(base: &Device, axes: &[SweepAxis], metric: Metric) -> Result<SweepResult> {
    run_grid_with(base, &[], axes, metric)
}

/// Like [`run_grid`], with extra parameters pinned at every cell (applied
/// before the axis values).
pub fn run_grid_with(
    base: &Device,
    fixed: &[(SweepParameter, f64)],
    axes: &[SweepAxis],
    metric: Metric,
) -> Result<SweepResult> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::InvalidAxis(format!(
            "expected 1 or 2 axes, got {}",
            axes.len()
        )));
    }
    for axis in axes {
        axis.validate()?;
    }
    if axes.len() == 2 && axes[0].parameter == axes[1].parameter {
        return Err(Error::InvalidAxis(format!(
            "axis `{}` given twice",
            axes[0].parameter.column()
        )));
    }
    if metric == Metric::XB && base.geometry.clamping != Clamping::DoublyClamped {
        return Err(Error::IncompatibleMetric {
            metric: metric.name(),
            reason: "Brownian amplitude needs a doubly clamped film".into(),
        });
    }

    let columns: Vec<Vec<f64>> = axes.iter().map(SweepAxis::values).collect();
    let inner = if axes.len() == 2 { columns[1].len() } else { 1 };
    let cell_count = columns[0].len() * inner;

    let cells = (0..cell_count)
        .into_par_iter()
        .map(|cell| {
            let mut assignments = fixed.to_vec();
            assignments.push((axes[0].parameter, columns[0][cell / inner]));
            if axes.len() == 2 {
                assignments.push((axes[1].parameter, columns[1][cell % inner]));
            }
            evaluate_cell(base, &assignments, metric)
        })
        .collect::<Result<Vec<_>>>()?;

    let time_unit = if fixed
        .iter()
        .map(|f| f.0)
        .chain(axes.iter().map(|a| a.parameter))
        .any(|p| p == SweepParameter::TimeTc)
    {
        let first = cells.first().map(|c| c.1).unwrap_or("t_c");
        Some(if cells.iter().all(|c| c.1 == first) {
            first.to_string()
        } else {
            "t_c|tau".to_string()
        })
    } else {
        None
    };
    let values = cells.into_iter().map(|c| c.0).collect();

    Ok(SweepResult {
        axes: axes.to_vec(),
        metric,
        convention: base.convention,
        values,
        time_unit,
    })
}

/// Several metrics over one axis, as one table with a column per metric.
pub fn run_table(
    base: &Device,
    fixed: &[(SweepParameter, f64)],
    axis: SweepAxis,
    metrics: &[Metric],
) -> Result<Table> {
    let mut table = Table::new(vec![(axis.parameter.column().to_string(), axis.values())]);
    for &metric in metrics {
        let result = run_grid_with(base, fixed, &[axis], metric)?;
        table.push_column(metric, result.values);
        table.time_unit = result.time_unit;
    }
    if metrics.iter().any(|m| m.uses_convention()) {
        table.convention = Some(base.convention);
    }
    Ok(table)
}
