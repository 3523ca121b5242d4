use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid value for `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("monolayer quantum capacitance requires a carrier density")]
    MissingCarrierDensity,

    #[error("multilayer quantum capacitance requires an effective mass ratio")]
    MissingEffectiveMass,

    #[error("quantum capacitance is only defined for graphene layer presets")]
    QuantumCapacitanceUnavailable,

    #[error("time horizon too long: exponent {exponent:.1} exceeds 700, cap the evaluation time")]
    TimeHorizonOverflow { exponent: f64 },

    #[error("adaptive quadrature did not converge after {intervals} subdivisions (error estimate {error:e})")]
    QuadratureNonConvergence { intervals: usize, error: f64 },

    #[error("ratio must be positive, got {0}")]
    NonPositiveRatio(f64),

    #[error("device is not squeezed at the evaluation time (R = {ratio})")]
    NeverSqueezed { ratio: f64 },

    #[error("squeezed-quadrature variance is not monotone in |phase|; phase window undefined")]
    PhaseNotMonotone,

    #[error("operation requires a doubly clamped film")]
    WrongClamping,

    #[error("metric `{metric}` cannot be computed for this device: {reason}")]
    IncompatibleMetric {
        metric: &'static str,
        reason: String,
    },

    #[error("invalid sweep axis: {0}")]
    InvalidAxis(String),
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and > 0, got {value}"),
        })
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and >= 0, got {value}"),
        })
    }
}
