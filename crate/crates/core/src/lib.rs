//! Directional-to-omnidirectional synthesis for millimeter-wave channel
//! measurements.
//!
//! * [`antenna`]: canonical horn patterns, pointing-grid combination, beam
//!   integrals.
//! * [`channel`]: synthetic multipath realizations, omnidirectional and
//!   directional received power, power delay profiles.
//! * [`sweep`]: HPBW-stepped sweep plans, sweep emulation, omnidirectional
//!   synthesis and strongest-plane analysis.
//! * [`pathloss`]: free-space reference, close-in (CI) and floating-intercept
//!   (FI) fits.
//! * [`io`]: CSV/JSON formats, embedded measurement tables and the fixture
//!   checks behind `omnisynth verify`.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases below fix the scalar to `f64`; `*F32` variants exist for the
//! core value types.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0)` also rejects NaN

pub mod antenna;
pub mod channel;
mod error;
pub mod io;
pub mod pathloss;
mod scalar;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type HornPattern = antenna::HornPattern<f64>;
pub type HornPatternF32 = antenna::HornPattern<f32>;
pub type GainMap = antenna::GainMap<f64>;
pub type GainMapF32 = antenna::GainMap<f32>;
pub type Pointing = antenna::Pointing<f64>;
pub type AngularGrid = antenna::AngularGrid<f64>;

pub type MultipathComponent = channel::MultipathComponent<f64>;
pub type MultipathComponentF32 = channel::MultipathComponent<f32>;
pub type ChannelRealization = channel::ChannelRealization<f64>;
pub type ChannelRealizationF32 = channel::ChannelRealization<f32>;
pub type PowerDelayProfile = channel::PowerDelayProfile<f64>;
pub type GeneratorConfig = channel::GeneratorConfig<f64>;

pub type SweepPlan = sweep::SweepPlan<f64>;
pub type PointingGrid = sweep::PointingGrid<f64>;
pub type DirectionalMeasurement = sweep::DirectionalMeasurement<f64>;
pub type DirectionalMeasurementF32 = sweep::DirectionalMeasurement<f32>;
pub type SynthesisResult = sweep::SynthesisResult<f64>;
pub type PlaneRatio = sweep::PlaneRatio<f64>;

pub type PathLossSample = pathloss::PathLossSample<f64>;
pub type PathLossSampleF32 = pathloss::PathLossSample<f32>;
pub type CiFit = pathloss::CiFit<f64>;
pub type CiFitF32 = pathloss::CiFit<f32>;
pub type FiFit = pathloss::FiFit<f64>;
pub type FiFitF32 = pathloss::FiFit<f32>;
