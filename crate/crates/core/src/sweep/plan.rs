use serde::{Deserialize, Serialize};

use crate::antenna::Pointing;
use crate::{Error, Result, Scalar};

/// Which elevations an azimuth sweep visits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ElevationCoverage<T> {
    /// One azimuth ring per listed elevation (e.g. 0 and +-20 deg).
    Planes(Vec<T>),
    /// Rings at elevation-HPBW increments tiling [-90, 90].
    FullSphere,
}

/// The pointings one antenna visits, and the sector each pointing claims.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointingGrid<T> {
    pub pointings: Vec<Pointing<T>>,
    pub az_step_deg: T,
    /// Sector height claimed by each ring: the ring spacing for full-sphere
    /// grids, the elevation HPBW for plane lists.
    pub el_step_deg: T,
    pub el_planes_deg: Vec<T>,
}

impl<T: Scalar> PointingGrid<T> {
    /// A stationary antenna.
    pub fn fixed(pointing: Pointing<T>, sector_az_deg: T, sector_el_deg: T) -> Self {
        Self {
            pointings: vec![pointing],
            az_step_deg: sector_az_deg,
            el_step_deg: sector_el_deg,
            el_planes_deg: vec![pointing.el],
        }
    }

    pub fn len(&self) -> usize {
        self.pointings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pointings.is_empty()
    }
}

/// TX and RX pointing grids; a sweep visits every (TX, RX) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan<T> {
    pub tx: PointingGrid<T>,
    pub rx: PointingGrid<T>,
}

impl<T: Scalar> SweepPlan<T> {
    pub fn new(tx: PointingGrid<T>, rx: PointingGrid<T>) -> Result<Self> {
        if tx.is_empty() || rx.is_empty() {
            return Err(Error::domain("sweep plan needs TX and RX pointings"));
        }
        Ok(Self { tx, rx })
    }

    pub fn pair_count(&self) -> usize {
        self.tx.len() * self.rx.len()
    }
}

/// The integer divisor of `total` nearest to `hpbw` (ties go to the larger
/// step). Below one degree the step is `total / round(total / hpbw)`.
pub fn nearest_divisor_step<T: Scalar>(hpbw_deg: T, total_deg: u32) -> T {
    let h = hpbw_deg.to_f64_lossy();
    let total = total_deg as f64;
    if h < 1.0 {
        return T::of(total / (total / h).round().max(1.0));
    }
    let mut best = 1u32;
    let mut best_err = f64::INFINITY;
    for d in 1..=total_deg {
        if !total_deg.is_multiple_of(d) {
            continue;
        }
        let err = (d as f64 - h).abs();
        if err <= best_err + 1e-12 {
            best = d;
            best_err = err.min(best_err);
        }
    }
    T::of(best as f64)
}

/// Azimuth rings stepped by the HPBW rounded to a divisor of 360, one per
/// elevation plane (or per full-sphere ring).
pub fn plan_sweep<T: Scalar>(
    az_hpbw_deg: T,
    el_hpbw_deg: T,
    coverage: &ElevationCoverage<T>,
) -> Result<PointingGrid<T>> {
    if !(az_hpbw_deg > T::zero() && az_hpbw_deg < T::of(360.0)) {
        return Err(Error::domain(format!(
            "azimuth HPBW must lie in (0, 360), got {az_hpbw_deg}"
        )));
    }
    if !(el_hpbw_deg > T::zero() && el_hpbw_deg < T::of(180.0)) {
        return Err(Error::domain(format!(
            "elevation HPBW must lie in (0, 180), got {el_hpbw_deg}"
        )));
    }
    let az_step = nearest_divisor_step(az_hpbw_deg, 360);
    let n_az = (T::of(360.0) / az_step).round().to_usize().unwrap();

    let (planes, el_step) = match coverage {
        ElevationCoverage::Planes(p) => {
            if p.is_empty() {
                return Err(Error::domain("at least one elevation plane is required"));
            }
            for (i, e) in p.iter().enumerate() {
                if !(e.abs() <= T::of(90.0)) {
                    return Err(Error::domain(format!("elevation plane {e} outside [-90, 90]")));
                }
                if p[..i].contains(e) {
                    return Err(Error::domain(format!("duplicate elevation plane {e}")));
                }
            }
            (p.clone(), el_hpbw_deg)
        }
        ElevationCoverage::FullSphere => {
            let step = nearest_divisor_step(el_hpbw_deg, 180);
            let k_max = (T::of(90.0) / step - T::of(0.5)).ceil().to_i64().unwrap();
            let planes = (-k_max..=k_max)
                .map(|k| T::from_i64(k).unwrap() * step)
                .collect();
            (planes, step)
        }
    };

    let pointings = planes
        .iter()
        .flat_map(|&el| {
            (0..n_az).map(move |k| Pointing::new(T::from_usize(k).unwrap() * az_step, el))
        })
        .collect();
    Ok(PointingGrid {
        pointings,
        az_step_deg: az_step,
        el_step_deg: el_step,
        el_planes_deg: planes,
    })
}
