use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HornPattern, Pointing};
use crate::units::{azimuth_difference, linear_to_db};
use crate::{Error, Result, Scalar};

/// A uniformly sampled axis `min, min + step, ..., max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis<T> {
    pub min: T,
    pub max: T,
    pub step: T,
}

impl<T: Scalar> Axis<T> {
    pub fn new(min: T, max: T, step: T) -> Result<Self> {
        if !(step > T::zero()) || !step.is_finite() {
            return Err(Error::domain(format!("grid step must be positive, got {step}")));
        }
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(Error::domain(format!("invalid axis range [{min}, {max}]")));
        }
        Ok(Self { min, max, step })
    }

    /// A single sample at `value`.
    pub fn point(value: T) -> Self {
        Self {
            min: value,
            max: value,
            step: T::one(),
        }
    }

    pub fn len(&self) -> usize {
        let n = ((self.max - self.min) / self.step + T::of(1e-9)).floor();
        n.to_usize().unwrap_or(0) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> T {
        self.min + T::from_usize(i).expect("index fits the scalar") * self.step
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }
}

/// Azimuth/elevation offset grid. The default resolution is 0.01 degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularGrid<T> {
    pub az: Axis<T>,
    pub el: Axis<T>,
}

impl<T: Scalar> AngularGrid<T> {
    pub const DEFAULT_STEP_DEG: f64 = 0.01;

    pub fn new(az: Axis<T>, el: Axis<T>) -> Self {
        Self { az, el }
    }

    /// Symmetric grid `[-az_half, az_half] x [-el_half, el_half]` at `step`.
    pub fn symmetric(az_half: T, el_half: T, step: T) -> Result<Self> {
        let az = Axis::new(-az_half, az_half, step)?;
        let el = if el_half == T::zero() {
            Axis::point(T::zero())
        } else {
            Axis::new(-el_half, el_half, step)?
        };
        Ok(Self { az, el })
    }

    /// Azimuth cut at zero elevation.
    pub fn azimuth_cut(az_half: T, step: T) -> Result<Self> {
        Self::symmetric(az_half, T::zero(), step)
    }
}

/// Closed rectangle of (azimuth, elevation) offsets, degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularRegion<T> {
    pub az_min: T,
    pub az_max: T,
    pub el_min: T,
    pub el_max: T,
}

impl<T: Scalar> AngularRegion<T> {
    pub fn symmetric(az_half: T, el_half: T) -> Self {
        Self {
            az_min: -az_half,
            az_max: az_half,
            el_min: -el_half,
            el_max: el_half,
        }
    }
}

/// Linear power gains sampled on an [`AngularGrid`], stored row-major with
/// one row per elevation sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainMap<T> {
    pub az_grid_deg: Vec<T>,
    pub el_grid_deg: Vec<T>,
    pub gain_linear: Vec<T>,
}

impl<T: Scalar> GainMap<T> {
    pub fn get(&self, az_idx: usize, el_idx: usize) -> T {
        self.gain_linear[el_idx * self.az_grid_deg.len() + az_idx]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.gain_linear.chunks(self.az_grid_deg.len())
    }

    pub fn peak(&self) -> T {
        self.gain_linear.iter().copied().fold(T::zero(), T::max)
    }

    /// Writes `az_deg,el_deg,gain_db`, one row per grid point, 6 decimals.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "az_deg,el_deg,gain_db")?;
        for (j, row) in self.rows().enumerate() {
            let el = self.el_grid_deg[j];
            for (i, g) in row.iter().enumerate() {
                writeln!(
                    out,
                    "{:.6},{:.6},{:.6}",
                    self.az_grid_deg[i].to_f64_lossy(),
                    el.to_f64_lossy(),
                    linear_to_db(*g).to_f64_lossy()
                )?;
            }
        }
        Ok(())
    }
}

/// Sums the pattern, re-pointed at each boresight in `pointings`, over the
/// grid. Each cell is the in-order sum over pointings of the pattern gain at
/// that cell's offset from the pointing (azimuth differences wrap).
pub fn combine_patterns<T: Scalar>(
    pattern: &HornPattern<T>,
    pointings: &[Pointing<T>],
    grid: &AngularGrid<T>,
) -> Result<GainMap<T>> {
    if pointings.is_empty() {
        return Err(Error::domain("combine_patterns needs at least one pointing"));
    }
    let az = grid.az.values();
    let el = grid.el.values();
    let g = pattern.boresight_gain_linear();

    // separable: tabulate each pointing's azimuth and elevation cuts once
    let az_cuts: Vec<Vec<T>> = pointings
        .iter()
        .map(|p| az.iter().map(|&x| pattern.az_factor(azimuth_difference(x, p.az))).collect())
        .collect();
    let el_cuts: Vec<Vec<T>> = pointings
        .iter()
        .map(|p| el.iter().map(|&y| pattern.el_factor(y - p.el)).collect())
        .collect();

    let rows: Vec<Vec<T>> = (0..el.len())
        .into_par_iter()
        .map(|j| {
            (0..az.len())
                .map(|i| {
                    let mut acc = T::zero();
                    for k in 0..pointings.len() {
                        acc = acc + g * az_cuts[k][i] * el_cuts[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect();

    Ok(GainMap {
        az_grid_deg: az,
        el_grid_deg: el,
        gain_linear: rows.concat(),
    })
}

/// Peak-to-trough spread, dB, of the map inside `region`.
pub fn ripple<T: Scalar>(map: &GainMap<T>, region: &AngularRegion<T>) -> Result<T> {
    let eps = T::of(1e-9);
    let inside = |v: T, lo: T, hi: T| v >= lo - eps && v <= hi + eps;
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    let mut any = false;
    for (j, &el) in map.el_grid_deg.iter().enumerate() {
        if !inside(el, region.el_min, region.el_max) {
            continue;
        }
        for (i, &az) in map.az_grid_deg.iter().enumerate() {
            if !inside(az, region.az_min, region.az_max) {
                continue;
            }
            let db = linear_to_db(map.get(i, j));
            lo = lo.min(db);
            hi = hi.max(db);
            any = true;
        }
    }
    if !any {
        return Err(Error::domain("ripple region does not intersect the map grid"));
    }
    Ok(hi - lo)
}

/// Mean gain, dB relative to boresight, that a pattern swept on an infinite
/// rectangular lattice of pointings (`az_step` x `el_step`) adds over a
/// single beam. This is the constant offset a weighted-pattern synthesis
/// carries and that is removed after summing.
///
/// Averaged over one lattice cell sampled at `samples` x `samples` midpoints;
/// neighbours out to `reach` cells are included (the sinc tails decay fast).
pub fn combined_gain_offset_db<T: Scalar>(
    pattern: &HornPattern<T>,
    az_step_deg: T,
    el_step_deg: T,
    samples: usize,
    reach: usize,
) -> Result<T> {
    if !(az_step_deg > T::zero() && el_step_deg > T::zero()) || samples == 0 {
        return Err(Error::domain("lattice steps and sample count must be positive"));
    }
    let n = T::from_usize(samples).expect("sample count fits");
    let r = reach as i64;
    let mean_cut = |step: T, factor: &dyn Fn(T) -> T| -> T {
        let mut total = T::zero();
        for s in 0..samples {
            let x = (T::from_usize(s).unwrap() + T::of(0.5)) / n * step - step / T::of(2.0);
            let mut acc = T::zero();
            for k in -r..=r {
                acc = acc + factor(x - T::from_i64(k).unwrap() * step);
            }
            total = total + acc;
        }
        total / n
    };
    // lattice sum of a separable pattern is a product of per-axis sums
    let az_mean = mean_cut(az_step_deg, &|x| pattern.az_factor(x));
    let el_mean = mean_cut(el_step_deg, &|y| pattern.el_factor(y));
    Ok(linear_to_db(az_mean * el_mean))
}
