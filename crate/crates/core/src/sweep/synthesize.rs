use serde::{Deserialize, Serialize};

use crate::antenna::Pointing;
use crate::units::{dbm_to_mw, mw_to_dbm};
use crate::{Error, Result, Scalar};

/// One sweep sample. `pr_dbm` includes both antenna gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionalMeasurement<T> {
    pub tx_point: Pointing<T>,
    pub rx_point: Pointing<T>,
    pub pr_dbm: T,
    pub gt_dbi: T,
    pub gr_dbi: T,
    pub pt_dbm: T,
    pub tr_separation_m: T,
    /// Set when the sample carried no usable power; such samples are kept
    /// but contribute nothing to sums.
    #[serde(default)]
    pub below_floor: bool,
}

impl<T: Scalar> DirectionalMeasurement<T> {
    /// Received power with both antenna gains removed, dBm.
    pub fn gain_removed_dbm(&self) -> T {
        self.pr_dbm - self.gt_dbi - self.gr_dbi
    }

    /// Gain-removed power in mW, or `None` when the sample is flagged,
    /// non-finite, or under `floor_dbm`.
    pub fn contribution_mw(&self, floor_dbm: Option<T>) -> Option<T> {
        if self.below_floor {
            return None;
        }
        let p = self.gain_removed_dbm();
        if !p.is_finite() {
            return None;
        }
        if floor_dbm.is_some_and(|f| p < f) {
            return None;
        }
        Some(dbm_to_mw(p))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisResult<T> {
    /// Summed gain-removed received power, dBm.
    pub omni_power_dbm: T,
    /// `pt_dbm - omni_power_dbm`.
    pub omni_path_loss_db: T,
    pub contributing_count: usize,
    pub pt_dbm: T,
    pub tr_separation_m: T,
    /// Distinct RX elevation planes present, ascending.
    pub rx_planes_deg: Vec<T>,
    /// Smallest spacing between adjacent RX planes, if there are several.
    pub rx_plane_spacing_deg: Option<T>,
}

pub(crate) fn sorted_sum<T: Scalar>(mut values: Vec<T>) -> T {
    // fixed order makes the sum independent of input order
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite contributions"));
    values.into_iter().fold(T::zero(), |a, v| a + v)
}

pub(crate) fn distinct_sorted<T: Scalar>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    values.dedup();
    values
}

/// Omnidirectional power and path loss from directional samples:
/// gains are removed from each sample, the powers summed in mW, and
/// `PL = Pt - 10 log10(sum)`.
///
/// All samples must share one transmit power. Samples flagged or below
/// `floor_dbm` (gain-removed) contribute zero; if none remain the result is
/// degenerate.
pub fn synthesize_omni<T: Scalar>(
    measurements: &[DirectionalMeasurement<T>],
    floor_dbm: Option<T>,
) -> Result<SynthesisResult<T>> {
    let first = measurements
        .first()
        .ok_or_else(|| Error::domain("no measurements to synthesize"))?;
    let pt = first.pt_dbm;
    if let Some(m) = measurements.iter().find(|m| m.pt_dbm != pt) {
        return Err(Error::domain(format!(
            "mixed transmit powers ({} and {} dBm)",
            pt, m.pt_dbm
        )));
    }
    let contributions: Vec<T> = measurements
        .iter()
        .filter_map(|m| m.contribution_mw(floor_dbm))
        .collect();
    if contributions.is_empty() {
        return Err(Error::DegenerateResult(
            "every measurement is below the noise floor".into(),
        ));
    }
    let count = contributions.len();
    let total = sorted_sum(contributions);
    let omni_dbm = mw_to_dbm(total);

    let planes = distinct_sorted(measurements.iter().map(|m| m.rx_point.el).collect());
    let spacing = planes
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(None, |acc: Option<T>, d| Some(acc.map_or(d, |a| a.min(d))));
    Ok(SynthesisResult {
        omni_power_dbm: omni_dbm,
        omni_path_loss_db: pt - omni_dbm,
        contributing_count: count,
        pt_dbm: pt,
        tr_separation_m: first.tr_separation_m,
        rx_planes_deg: planes,
        rx_plane_spacing_deg: spacing,
    })
}
