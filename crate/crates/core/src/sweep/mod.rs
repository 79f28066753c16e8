//! Directional sweeps: planning pointings in HPBW steps, emulating a sweep
//! over a synthetic channel, synthesizing the omnidirectional received power
//! and path loss, and the strongest-elevation-plane analysis.

mod emulate;
mod planes;
mod plan;
mod synthesize;

pub use emulate::{run_sweep, SweepOptions, DEFAULT_NOISE_FLOOR_DBM};
pub use plan::{nearest_divisor_step, plan_sweep, ElevationCoverage, PointingGrid, SweepPlan};
pub use planes::{strongest_plane_ratio, PlaneRatio};
pub use synthesize::{synthesize_omni, DirectionalMeasurement, SynthesisResult};
