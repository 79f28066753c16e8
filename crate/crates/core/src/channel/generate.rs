//! Seeded synthetic channels.
//!
//! Each realization draws from its own ChaCha20 stream keyed by
//! `(seed, index)`, so ensembles come out identical however they are
//! partitioned across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ChannelRealization, MultipathComponent};
use crate::pathloss::fspl;
use crate::units::db_to_linear;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig<T> {
    pub mpc_count: usize,
    /// Path loss exponent of the CI model the total power is drawn from.
    pub ple: T,
    /// Shadowing standard deviation, dB.
    pub sigma_db: T,
    pub carrier_ghz: T,
    pub distance_m: T,
    pub d0_m: T,
    /// Mean of the exponential delay distribution, ns.
    pub mean_delay_ns: T,
    /// Elevations are uniform on `[-band, band]`.
    pub elevation_band_deg: T,
}

impl<T: Scalar> GeneratorConfig<T> {
    /// 28 GHz defaults: 25 paths, n = 3.4, sigma = 9.7 dB, 100 m, +-20 deg.
    pub fn new(distance_m: T) -> Self {
        Self {
            mpc_count: 25,
            ple: T::of(3.4),
            sigma_db: T::of(9.7),
            carrier_ghz: T::of(28.0),
            distance_m,
            d0_m: T::one(),
            mean_delay_ns: T::of(30.0),
            elevation_band_deg: T::of(20.0),
        }
    }

    pub fn at_distance(mut self, distance_m: T) -> Self {
        self.distance_m = distance_m;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.mpc_count == 0 {
            return Err(Error::domain("generator needs at least one multipath component"));
        }
        if !(self.distance_m > T::zero()) {
            return Err(Error::domain(format!("distance must be positive, got {}", self.distance_m)));
        }
        if !(self.d0_m > T::zero()) || !(self.carrier_ghz > T::zero()) {
            return Err(Error::domain("reference distance and carrier must be positive"));
        }
        if self.sigma_db < T::zero() || self.mean_delay_ns < T::zero() {
            return Err(Error::domain("sigma and mean delay must be non-negative"));
        }
        if !(self.elevation_band_deg >= T::zero() && self.elevation_band_deg <= T::of(90.0)) {
            return Err(Error::domain("elevation band must lie in [0, 90]"));
        }
        Ok(())
    }
}

fn stream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Realization 0 of `seed`.
pub fn generate_channel<T: Scalar>(
    config: &GeneratorConfig<T>,
    seed: u64,
) -> Result<ChannelRealization<T>> {
    generate_channel_indexed(config, seed, 0)
}

/// Draws one channel. The total power is `-PL` dBm (for 0 dBm transmit) with
/// `PL = FSPL(d0) + 10 n log10(d/d0) + X`, `X ~ N(0, sigma)`; it is split over
/// the paths by Dirichlet(1, ..., 1) fractions.
pub fn generate_channel_indexed<T: Scalar>(
    config: &GeneratorConfig<T>,
    seed: u64,
    index: u64,
) -> Result<ChannelRealization<T>> {
    config.validate()?;
    let mut rng = stream(seed, index);
    let c = |v: f64| T::of(v);

    let shadow: f64 = StandardNormal.sample(&mut rng);
    let mean_pl = fspl(config.d0_m, config.carrier_ghz)?
        + T::of(10.0) * config.ple * (config.distance_m / config.d0_m).log10();
    let pl = mean_pl + config.sigma_db * c(shadow);
    let total = db_to_linear(-pl);

    let weights: Vec<f64> = (0..config.mpc_count)
        .map(|_| {
            let e: f64 = Exp1.sample(&mut rng);
            // Exp1 can return 0; keep every path strictly positive
            e.max(f64::MIN_POSITIVE)
        })
        .collect();
    let wsum: f64 = weights.iter().sum();

    let band = config.elevation_band_deg.to_f64_lossy();
    let mean_delay = config.mean_delay_ns.to_f64_lossy();
    let mut components = Vec::with_capacity(config.mpc_count);
    for w in weights {
        let phase = rng.random::<f64>() * std::f64::consts::TAU;
        let delay = mean_delay * Distribution::<f64>::sample(&Exp1, &mut rng);
        let aod_az = rng.random::<f64>() * 360.0;
        let aoa_az = rng.random::<f64>() * 360.0;
        let aod_el = (rng.random::<f64>() * 2.0 - 1.0) * band;
        let aoa_el = (rng.random::<f64>() * 2.0 - 1.0) * band;
        components.push(MultipathComponent {
            amplitude: (total * c(w / wsum)).sqrt(),
            phase_rad: c(phase),
            delay_ns: c(delay),
            aod_az_deg: crate::units::wrap_azimuth(c(aod_az)),
            aod_el_deg: c(aod_el),
            aoa_az_deg: crate::units::wrap_azimuth(c(aoa_az)),
            aoa_el_deg: c(aoa_el),
        });
    }
    ChannelRealization::new(components, config.carrier_ghz, config.distance_m)
}

/// One channel per distance; realization `i` uses stream `(seed, i)`.
pub fn generate_ensemble<T: Scalar>(
    config: &GeneratorConfig<T>,
    distances_m: &[T],
    seed: u64,
) -> Result<Vec<ChannelRealization<T>>> {
    distances_m
        .par_iter()
        .enumerate()
        .map(|(i, &d)| generate_channel_indexed(&config.at_distance(d), seed, i as u64))
        .collect()
}

/// `count` distances log-uniform on `[lo, hi]`, from a stream separate from
/// the channel streams of the same seed.
pub fn log_uniform_distances<T: Scalar>(count: usize, lo: T, hi: T, seed: u64) -> Result<Vec<T>> {
    if !(lo > T::zero() && hi >= lo) {
        return Err(Error::domain("distance range must satisfy 0 < lo <= hi"));
    }
    let mut rng = stream(seed ^ 0x5eed_d15a_7a11_ce00, u64::MAX);
    let (l, h) = (lo.to_f64_lossy().ln(), hi.to_f64_lossy().ln());
    Ok((0..count)
        .map(|_| T::of((l + (h - l) * rng.random::<f64>()).exp()).max(lo).min(hi))
        .collect())
}
