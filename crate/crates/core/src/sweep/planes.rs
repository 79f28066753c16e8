use serde::{Deserialize, Serialize};

use super::synthesize::sorted_sum;
use super::DirectionalMeasurement;
use crate::units::linear_to_db;
use crate::{Error, Result, Scalar};

/// Share of power captured by the strongest RX elevation plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneRatio<T> {
    /// `P(strongest) / P(window)`, in [0, 1].
    pub ratio: T,
    pub ratio_db: T,
    pub strongest_el_deg: T,
    /// Elevations summed in the denominator.
    pub window_el_deg: Vec<T>,
    /// Every plane's gain-removed power, mW, ascending elevation.
    pub plane_powers_mw: Vec<(T, T)>,
}

/// Groups samples by RX elevation, sums each plane's gain-removed power, and
/// compares the strongest plane with itself plus its two neighbours.
///
/// The window is three consecutive planes containing the strongest, centred
/// on it unless it is the lowest or highest plane. With fewer than three
/// planes every plane is in the window.
pub fn strongest_plane_ratio<T: Scalar>(
    measurements: &[DirectionalMeasurement<T>],
    floor_dbm: Option<T>,
) -> Result<PlaneRatio<T>> {
    if measurements.is_empty() {
        return Err(Error::domain("no measurements to group into planes"));
    }
    let mut by_el: Vec<(T, Vec<T>)> = Vec::new();
    let mut sorted: Vec<&DirectionalMeasurement<T>> = measurements.iter().collect();
    sorted.sort_by(|a, b| a.rx_point.el.partial_cmp(&b.rx_point.el).expect("finite elevation"));
    for m in sorted {
        let p = m.contribution_mw(floor_dbm).unwrap_or_else(T::zero);
        match by_el.last_mut() {
            Some((el, v)) if *el == m.rx_point.el => v.push(p),
            _ => by_el.push((m.rx_point.el, vec![p])),
        }
    }
    let planes: Vec<(T, T)> = by_el.into_iter().map(|(el, v)| (el, sorted_sum(v))).collect();

    let mut best = 0;
    for (i, &(_, p)) in planes.iter().enumerate() {
        if p > planes[best].1 {
            best = i;
        }
    }
    let (start, end) = if planes.len() < 3 {
        (0, planes.len())
    } else {
        let s = best.saturating_sub(1).min(planes.len() - 3);
        (s, s + 3)
    };
    let window = &planes[start..end];
    let total = sorted_sum(window.iter().map(|&(_, p)| p).collect());
    if !(total > T::zero()) {
        return Err(Error::domain("strongest-plane window carries no power"));
    }
    let ratio = planes[best].1 / total;
    Ok(PlaneRatio {
        ratio,
        ratio_db: linear_to_db(ratio),
        strongest_el_deg: planes[best].0,
        window_el_deg: window.iter().map(|&(e, _)| e).collect(),
        plane_powers_mw: planes,
    })
}
