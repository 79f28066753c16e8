use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DirectionalMeasurement, PointingGrid, SweepPlan};
use crate::antenna::HornPattern;
use crate::channel::{ChannelRealization, PowerMode, Steered};
use crate::units::mw_to_dbm;
use crate::{Result, Scalar};

/// Gain-removed level below which a sample is flagged, dBm.
pub const DEFAULT_NOISE_FLOOR_DBM: f64 = -100.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions<T> {
    pub pt_dbm: T,
    pub mode: PowerMode,
    /// `None` keeps every non-zero sample.
    pub noise_floor_dbm: Option<T>,
}

impl<T: Scalar> SweepOptions<T> {
    pub fn new(pt_dbm: T, mode: PowerMode) -> Self {
        Self {
            pt_dbm,
            mode,
            noise_floor_dbm: Some(T::of(DEFAULT_NOISE_FLOOR_DBM)),
        }
    }

    pub fn without_floor(mut self) -> Self {
        self.noise_floor_dbm = None;
        self
    }
}

/// Per-pointing path weights: boresight gain inside the sector (sector
/// mode) or the pattern gain (weighted mode), for every path.
fn weights<T: Scalar>(
    pattern: &HornPattern<T>,
    grid: &PointingGrid<T>,
    angles: &[(T, T)],
    mode: PowerMode,
) -> Vec<Vec<T>> {
    grid.pointings
        .par_iter()
        .map(|&p| {
            let s = Steered::new(pattern, p).with_sector(grid.az_step_deg, grid.el_step_deg);
            angles
                .iter()
                .map(|&(az, el)| match mode {
                    PowerMode::Sector => {
                        if s.contains(az, el) {
                            T::one()
                        } else {
                            T::zero()
                        }
                    }
                    PowerMode::Weighted => s.gain_toward(az, el),
                })
                .collect()
        })
        .collect()
}

/// Emulates a sweep: one measurement per (TX, RX) pointing pair, TX-major.
/// Sector mode uses the plan's steps as sector widths, so a full-sphere plan
/// partitions every path exactly once.
pub fn run_sweep<T: Scalar>(
    channel: &ChannelRealization<T>,
    tx: &HornPattern<T>,
    rx: &HornPattern<T>,
    plan: &SweepPlan<T>,
    options: &SweepOptions<T>,
) -> Result<Vec<DirectionalMeasurement<T>>> {
    channel.require_non_empty()?;
    let powers: Vec<T> = channel.components.iter().map(|c| c.power()).collect();
    let aods: Vec<(T, T)> = channel.components.iter().map(|c| (c.aod_az_deg, c.aod_el_deg)).collect();
    let aoas: Vec<(T, T)> = channel.components.iter().map(|c| (c.aoa_az_deg, c.aoa_el_deg)).collect();
    let tx_w = weights(tx, &plan.tx, &aods, options.mode);
    let rx_w = weights(rx, &plan.rx, &aoas, options.mode);
    let sector_gain = match options.mode {
        PowerMode::Sector => tx.boresight_gain_linear() * rx.boresight_gain_linear(),
        PowerMode::Weighted => T::one(),
    };
    let gt = tx.boresight_gain_dbi;
    let gr = rx.boresight_gain_dbi;

    let rows: Vec<Vec<DirectionalMeasurement<T>>> = plan
        .tx
        .pointings
        .par_iter()
        .zip(tx_w.par_iter())
        .map(|(&tp, tw)| {
            // paths the TX pointing sees at all
            let live: Vec<usize> = (0..powers.len()).filter(|&m| tw[m] != T::zero()).collect();
            plan.rx
                .pointings
                .iter()
                .zip(&rx_w)
                .map(|(&rp, rw)| {
                    let p = live
                        .iter()
                        .fold(T::zero(), |acc, &m| acc + tw[m] * rw[m] * powers[m]);
                    let received = sector_gain * p;
                    let pr_dbm = options.pt_dbm + mw_to_dbm(received);
                    let gain_removed = pr_dbm - gt - gr;
                    let below_floor = !(received > T::zero())
                        || options.noise_floor_dbm.is_some_and(|f| gain_removed < f);
                    DirectionalMeasurement {
                        tx_point: tp,
                        rx_point: rp,
                        pr_dbm,
                        gt_dbi: gt,
                        gr_dbi: gr,
                        pt_dbm: options.pt_dbm,
                        tr_separation_m: channel.tr_separation_m,
                        below_floor,
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows.concat())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::{make_pattern, Pointing};
    use crate::channel::{omni_power, MultipathComponent};
    use crate::sweep::{plan_sweep, synthesize_omni, ElevationCoverage};

    fn one_path(amp: f64, aod: (f64, f64), aoa: (f64, f64)) -> ChannelRealization<f64> {
        ChannelRealization::new(
            vec![MultipathComponent {
                amplitude: amp,
                phase_rad: 0.0,
                delay_ns: 12.0,
                aod_az_deg: aod.0,
                aod_el_deg: aod.1,
                aoa_az_deg: aoa.0,
                aoa_el_deg: aoa.1,
            }],
            28.0,
            60.0,
        )
        .unwrap()
    }

    #[test]
    fn boresight_path_lights_one_pair() {
        let p = make_pattern(24.5, 10.9, 8.6).unwrap();
        let g = plan_sweep(10.9, 8.6, &ElevationCoverage::Planes(vec![0.0])).unwrap();
        let plan = SweepPlan::new(g.clone(), g).unwrap();
        let ch = one_path(1e-4, (40.0, 0.0), (130.0, 0.0));
        let opts = SweepOptions::new(30.0, PowerMode::Sector).without_floor();
        let ms = run_sweep(&ch, &p, &p, &plan, &opts).unwrap();
        assert_eq!(ms.len(), 36 * 36);
        let lit: Vec<_> = ms.iter().filter(|m| !m.below_floor).collect();
        assert_eq!(lit.len(), 1);
        assert_eq!(lit[0].tx_point, Pointing::new(40.0, 0.0));
        assert_eq!(lit[0].rx_point, Pointing::new(130.0, 0.0));
        let want = 30.0 + 24.5 + 24.5 + 20.0 * 1e-4_f64.log10();
        assert!((lit[0].pr_dbm - want).abs() < 1e-9);
    }

    #[test]
    fn zero_amplitude_channel_is_all_below_floor() {
        let p = make_pattern(15.0, 28.8, 30.0).unwrap();
        let g = plan_sweep(28.8, 30.0, &ElevationCoverage::FullSphere).unwrap();
        let plan = SweepPlan::new(g.clone(), g).unwrap();
        let ch = one_path(0.0, (10.0, 0.0), (10.0, 0.0));
        for mode in [PowerMode::Sector, PowerMode::Weighted] {
            let ms = run_sweep(&ch, &p, &p, &plan, &SweepOptions::new(30.0, mode).without_floor()).unwrap();
            assert!(ms.iter().all(|m| m.below_floor));
            assert!(synthesize_omni(&ms, None).is_err());
        }
    }

    #[test]
    fn full_partition_recovers_omni() {
        let p = make_pattern(15.0, 28.8, 30.0).unwrap();
        let g = plan_sweep(28.8, 30.0, &ElevationCoverage::FullSphere).unwrap();
        let plan = SweepPlan::new(g.clone(), g).unwrap();
        let ch = one_path(3e-5, (359.9, -14.9), (15.0, 15.0));
        let ms = run_sweep(&ch, &p, &p, &plan, &SweepOptions::new(10.0, PowerMode::Sector).without_floor())
            .unwrap();
        let r = synthesize_omni(&ms, None).unwrap();
        let omni = -10.0 * omni_power(&ch).unwrap().log10();
        assert!((r.omni_path_loss_db - omni).abs() < 1e-9);
        assert_eq!(r.contributing_count, 1);
    }

    #[test]
    fn floor_flags_weak_samples() {
        let p = make_pattern(0.0, 10.0, 10.0).unwrap();
        let g = PointingGrid::fixed(Pointing::new(0.0, 0.0), 10.0, 10.0);
        let plan = SweepPlan::new(g.clone(), g).unwrap();
        let ch = one_path(1e-6, (0.0, 0.0), (0.0, 0.0)); // -120 dBm
        let ms = run_sweep(&ch, &p, &p, &plan, &SweepOptions::new(0.0, PowerMode::Sector)).unwrap();
        assert!(ms[0].below_floor);
        let ms = run_sweep(&ch, &p, &p, &plan, &SweepOptions::new(30.0, PowerMode::Sector)).unwrap();
        assert!(!ms[0].below_floor);
    }
}
