//! Horn-antenna far-field patterns, pattern combination over pointing grids,
//! and beam-integral comparisons.
//!
//! The power pattern is the separable sinc model
//!
//! ```text
//! f(phi, theta) = G * [sinc^2(a sin phi) cos^2 phi] * [sinc^2(b sin theta) cos^2 theta]
//! ```
//!
//! with the **normalized** sinc, `sinc(u) = sin(pi u) / (pi u)`. With that
//! convention a 10 degree HPBW gives `a ~= 5.06`; the unnormalized sinc would
//! give roughly pi times that. Angles are offsets from boresight in degrees,
//! and each axis is evaluated on [-90, 90]; outside that the gain is zero.

mod combine;
mod integrate;
mod pattern;

pub use combine::{
    combine_patterns, combined_gain_offset_db, ripple, AngularGrid, AngularRegion, Axis, GainMap,
};
pub use integrate::{
    beam_power_ratio_db, integrate_beam, integrated_beam_power, CombinedBeam, DEFAULT_REL_TOL,
};
pub use pattern::{make_pattern, pattern_gain, sinc, solve_beamwidth_param, HornPattern, Radiator};

/// A boresight direction, degrees. Azimuth is a bearing, elevation is
/// horizon-relative (positive up).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Pointing<T> {
    pub az: T,
    pub el: T,
}

impl<T> Pointing<T> {
    pub const fn new(az: T, el: T) -> Self {
        Self { az, el }
    }
}
