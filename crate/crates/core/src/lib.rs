//! Quantum and thermal noise squeezing in silicon and graphene nanoresonators.
//!
//! The crate models a thin film clamped over a conducting substrate and pumped
//! parametrically at twice its fundamental flexural frequency. From a device
//! description it derives the mode frequency, effective mass and zero-point
//! displacement, the gate capacitance stack, the pump coupling, the time
//! evolution of both quadrature variances, the steady-state squeezing factor
//! and the Brownian amplitude of a doubly clamped film.
//!
//! All quantities are SI internally. Every operation is a pure function of its
//! inputs, so grids can be evaluated in any order or in parallel.
//!
//! ```
//! use nemsqueeze_core::{Device, ModulationConvention};
//!
//! let device = Device::reference_graphene();
//! let analysis = device.analyze().unwrap();
//! assert!(analysis.squeeze.squeezed);
//! assert_eq!(analysis.squeeze.convention, ModulationConvention::PaperNumbers);
//! ```

pub mod capacitance;
pub mod constants;
pub mod device;
pub mod dynamics;
mod error;
pub mod figures;
pub mod model;
pub mod quadrature;
pub mod squeezing;
pub mod sweep;
pub mod table;
pub mod thermal;

pub use capacitance::{CapacitanceStack, ChargeModel, GrapheneLayers};
pub use device::{Analysis, Device, TimeUnit};
pub use dynamics::{ModulationConvention, Pump, PumpCoupling, QuadratureVariance};
pub use error::{Error, Result};
pub use figures::{figure_preset, FigureId, FigurePanel};
pub use model::{Clamping, DerivedModal, Environment, Geometry, Material, MaterialPreset};
pub use squeezing::SqueezeSummary;
pub use sweep::{run_grid, AxisScale, Metric, SweepAxis, SweepParameter, SweepResult};
pub use thermal::{BrownianResult, ClampedModeTable};
