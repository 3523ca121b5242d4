//! Shared inputs for the `nemsqueeze` benchmarks.

use nemsqueeze_core::{AxisScale, SweepAxis, SweepParameter};

/// Length × voltage grid of `n` × `n` log-spaced cells.
pub fn length_voltage_axes(n: usize) -> [SweepAxis; 2] {
    [
        SweepAxis::new(SweepParameter::Length, 1e-7, 1e-5, AxisScale::Log, n).expect("valid axis"),
        SweepAxis::new(SweepParameter::Voltage, 1e-2, 10.0, AxisScale::Log, n).expect("valid axis"),
    ]
}
