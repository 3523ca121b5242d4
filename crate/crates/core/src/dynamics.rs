//! Parametric pump coupling and the time evolution of the quadrature variances.
//!
//! A pump voltage `V·sin(2ωt + θ)` modulates the spring constant by
//! `k_a(t) = −Δk·sin(2ωt + θ)` with `Δk = C_T·V²/(2d²)`. Starting from thermal
//! equilibrium, the variance of each quadrature evolves as
//!
//! ```text
//! Var X₁,₂(t, θ) = σ²(2N+1)·e^{−t/τ}·[cosh αt ∓ cosθ·sinh αt + τ⁻¹(I_a ± cosθ·I_b)]
//! I_a = ∫₀ᵗ e^{ξ/τ} cosh α(ξ−t) dξ,   I_b = ∫₀ᵗ e^{ξ/τ} sinh α(ξ−t) dξ
//! ```
//!
//! with `σ² = ħ/(2·M_eff·ω)` and `α = Δk/(2·M_eff·ω)`. Writing
//! `cosh y ± cosθ·sinh y` as a positive combination of `e^{±y}` with weights
//! `cos²(θ/2)` and `sin²(θ/2)` removes every cancellation, and the integrals
//! reduce to `(1 − e^{−x·t})/x` with `x = 1/τ ± α`. Everything is folded into
//! exponents before exponentiation, so the only failure mode is a genuinely
//! unrepresentable result, reported as [`Error::TimeHorizonOverflow`].

use crate::capacitance::CapacitanceStack;
use crate::error::{ensure_non_negative, Error, Result};
use crate::model::{DerivedModal, Geometry};
use crate::quadrature;

/// Largest exponent the evolution accepts before refusing to evaluate.
pub const MAX_EXPONENT: f64 = 700.0;

/// Relative tolerance of the quadrature oracle.
pub const ORACLE_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pump {
    /// Amplitude V of the pump voltage, volts.
    pub voltage: f64,
    /// Pump phase θ, rad.
    pub phase: f64,
}

impl Pump {
    pub fn new(voltage: f64, phase: f64) -> Result<Self> {
        let pump = Self { voltage, phase };
        pump.validate()?;
        Ok(pump)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("voltage", self.voltage)?;
        if !(self.phase.is_finite() && self.phase.abs() <= std::f64::consts::PI) {
            return Err(Error::InvalidParameter {
                name: "phase",
                reason: format!("must lie in [-pi, pi], got {}", self.phase),
            });
        }
        Ok(())
    }
}

/// How the modulation depth enters the steady-state squeezing factor.
///
/// `AsPrinted` uses Δk = C_T·V²/(2d²) throughout. `PaperNumbers` scales the
/// gain term of the squeezing-factor denominator by 1/4, which is what the
/// published R values correspond to. The time evolution and t_c always use
/// the unscaled Δk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModulationConvention {
    AsPrinted,
    #[default]
    PaperNumbers,
}

impl ModulationConvention {
    pub const ALL: [ModulationConvention; 2] = [
        ModulationConvention::AsPrinted,
        ModulationConvention::PaperNumbers,
    ];

    pub fn denominator_scale(self) -> f64 {
        match self {
            ModulationConvention::AsPrinted => 1.0,
            ModulationConvention::PaperNumbers => 0.25,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModulationConvention::AsPrinted => "as_printed",
            ModulationConvention::PaperNumbers => "paper_numbers",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpCoupling {
    /// Δk, N/m
    pub delta_k: f64,
    /// α, s⁻¹
    pub alpha: f64,
    /// S = α·τ
    pub gain_product: f64,
    /// t_c in seconds; `None` when the gain never exceeds the loss.
    pub t_char: Option<f64>,
}

impl PumpCoupling {
    pub fn new(delta_k: f64, modal: &DerivedModal) -> Self {
        let alpha = pump_rate(delta_k, modal.m_eff, modal.omega);
        let mut coupling = Self {
            delta_k,
            alpha,
            gain_product: alpha * modal.tau,
            t_char: None,
        };
        coupling.t_char = characteristic_time(&coupling, modal);
        coupling
    }
}

/// Δk = C_T·V²/(2d²).
pub fn modulation_depth(stack: &CapacitanceStack, pump: &Pump, geometry: &Geometry) -> f64 {
    stack.c_total * pump.voltage * pump.voltage / (2.0 * geometry.gap * geometry.gap)
}

/// α = Δk/(2·M_eff·ω).
pub fn pump_rate(delta_k: f64, m_eff: f64, omega: f64) -> f64 {
    delta_k / (2.0 * m_eff * omega)
}

/// t_c = ln(Q·α/ω)/α, the time after which pumping should stop.
pub fn characteristic_time(coupling: &PumpCoupling, modal: &DerivedModal) -> Option<f64> {
    // Q·α/ω == α·τ
    let gain = modal.tau * coupling.alpha;
    (gain > 1.0).then(|| gain.ln() / coupling.alpha)
}

/// Samples of the spring modulation −Δk·sin(2·ω_a·t + θ).
pub fn modulation_waveform(delta_k: f64, pump: &Pump, omega_a: f64, times: &[f64]) -> Vec<f64> {
    times
        .iter()
        .map(|&t| -delta_k * (2.0 * omega_a * t + pump.phase).sin())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureVariance {
    /// s
    pub time: f64,
    /// m²
    pub var_x1: f64,
    /// m²
    pub var_x2: f64,
}

impl QuadratureVariance {
    pub fn dx1(&self) -> f64 {
        self.var_x1.sqrt()
    }

    pub fn dx2(&self) -> f64 {
        self.var_x2.sqrt()
    }
}

/// Weights (cos²(θ/2), sin²(θ/2)) = ((1+cosθ)/2, (1−cosθ)/2) without cancellation near θ = 0, π.
fn phase_weights(phase: f64) -> (f64, f64) {
    let (s, c) = (0.5 * phase).sin_cos();
    (c * c, s * s)
}

/// (1 − e^{−x·t})/x, finite as x → 0.
fn relaxed_integral(x: f64, t: f64) -> f64 {
    let xt = x * t;
    if xt.abs() < 1e-8 {
        t * (1.0 - 0.5 * xt + xt * xt / 6.0)
    } else {
        -(-xt).exp_m1() / x
    }
}

fn check_horizon(modal: &DerivedModal, coupling: &PumpCoupling, t: f64) -> Result<()> {
    ensure_non_negative("time", t)?;
    let exponent = (coupling.alpha + 1.0 / modal.tau) * t;
    if exponent > MAX_EXPONENT {
        return Err(Error::TimeHorizonOverflow { exponent });
    }
    Ok(())
}

/// Closed-form variance bracket e^{−t/τ}[…] for the quadrature whose sinh term
/// carries weight `grow` on e^{αt} and `shrink` on e^{−αt}.
fn bracket(rate: f64, decay: f64, grow: f64, shrink: f64, t: f64) -> f64 {
    let fast = decay + rate; // X₊
    let slow = decay - rate; // X₋
    grow * (-slow * t).exp()
        + shrink * (-fast * t).exp()
        + decay * (shrink * relaxed_integral(fast, t) + grow * relaxed_integral(slow, t))
}

/// Variances of both quadratures at time `t` under pump phase `phase`.
pub fn evolve_variances(
    modal: &DerivedModal,
    coupling: &PumpCoupling,
    phase: f64,
    t: f64,
) -> Result<QuadratureVariance> {
    check_horizon(modal, coupling, t)?;
    let (cos_half_sq, sin_half_sq) = phase_weights(phase);
    let decay = 1.0 / modal.tau;
    let scale = modal.thermal_variance();
    Ok(QuadratureVariance {
        time: t,
        var_x1: scale * bracket(coupling.alpha, decay, sin_half_sq, cos_half_sq, t),
        var_x2: scale * bracket(coupling.alpha, decay, cos_half_sq, sin_half_sq, t),
    })
}

/// The pump integrals (I_a, I_b) evaluated by adaptive quadrature.
///
/// The integrands grow like e^{t/τ}·e^{αt}, so this is only usable for
/// moderate horizons.
pub fn pump_integrals(modal: &DerivedModal, coupling: &PumpCoupling, t: f64) -> Result<(f64, f64)> {
    check_horizon(modal, coupling, t)?;
    let alpha = coupling.alpha;
    let tau = modal.tau;
    let i_a = quadrature::integrate(
        |xi| (xi / tau).exp() * (alpha * (xi - t)).cosh(),
        0.0,
        t,
        ORACLE_REL_TOL,
        0.0,
    )?;
    let i_b = quadrature::integrate(
        |xi| (xi / tau).exp() * (alpha * (xi - t)).sinh(),
        0.0,
        t,
        ORACLE_REL_TOL,
        0.0,
    )?;
    Ok((i_a, i_b))
}

/// Same result as [`evolve_variances`] with the pump integrals computed by
/// adaptive Gauss–Kronrod quadrature instead of in closed form.
///
/// `I_a ± cosθ·I_b` is integrated as a single sign-definite integrand
/// (cosh y ± cosθ·sinh y = cos²(θ/2)e^{±y} + sin²(θ/2)e^{∓y}), with the
/// leading e^{−t/τ} moved under the integral. Integrating I_a and I_b
/// separately and combining afterwards loses every significant digit once
/// αt exceeds about 18.
pub fn evolve_variances_quadrature_oracle(
    modal: &DerivedModal,
    coupling: &PumpCoupling,
    phase: f64,
    t: f64,
) -> Result<QuadratureVariance> {
    check_horizon(modal, coupling, t)?;
    let (cos_half_sq, sin_half_sq) = phase_weights(phase);
    let alpha = coupling.alpha;
    let tau = modal.tau;
    let scale = modal.thermal_variance();

    let quadrature_variance = |grow: f64, shrink: f64| -> Result<f64> {
        // e^{−t/τ}(cosh αt ∓ cosθ sinh αt)
        let free = (-t / tau).exp() * (grow * (alpha * t).exp() + shrink * (-alpha * t).exp());
        let driven = quadrature::integrate(
            |xi| {
                let y = alpha * (xi - t);
                ((xi - t) / tau).exp() * (shrink * y.exp() + grow * (-y).exp())
            },
            0.0,
            t,
            ORACLE_REL_TOL,
            0.0,
        )?;
        Ok(scale * (free + driven / tau))
    };

    Ok(QuadratureVariance {
        time: t,
        var_x1: quadrature_variance(sin_half_sq, cos_half_sq)?,
        var_x2: quadrature_variance(cos_half_sq, sin_half_sq)?,
    })
}

/// Limit of Var X₁ as t → ∞ at θ = 0: σ²(2N+1)/(1 + α·τ).
pub fn steady_state_var_x1(modal: &DerivedModal, coupling: &PumpCoupling) -> f64 {
    modal.thermal_variance() / (1.0 + coupling.gain_product)
}
