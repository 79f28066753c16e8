//! JSON reports emitted by the CLI. Keys are lowercase snake case.

use serde::{Deserialize, Serialize};

use crate::pathloss::{CiFit, FiFit};
use crate::sweep::{PlaneRatio, SynthesisResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum FitReport {
    Ci {
        ple_n: f64,
        d0_m: f64,
        frequency_ghz: f64,
        sigma_db: f64,
        sample_count: usize,
        distance_range_m: [f64; 2],
        warnings: Vec<String>,
    },
    Fi {
        alpha_db: f64,
        beta: f64,
        sigma_db: f64,
        sample_count: usize,
        distance_range_m: [f64; 2],
    },
}

impl From<&CiFit<f64>> for FitReport {
    fn from(f: &CiFit<f64>) -> Self {
        FitReport::Ci {
            ple_n: f.ple_n,
            d0_m: f.d0_m,
            frequency_ghz: f.frequency_ghz,
            sigma_db: f.sigma_db,
            sample_count: f.sample_count,
            distance_range_m: [f.distance_range_m.0, f.distance_range_m.1],
            warnings: f.warnings.clone(),
        }
    }
}

impl From<&FiFit<f64>> for FitReport {
    fn from(f: &FiFit<f64>) -> Self {
        FitReport::Fi {
            alpha_db: f.alpha_db,
            beta: f.beta,
            sigma_db: f.sigma_db,
            sample_count: f.sample_count,
            distance_range_m: [f.distance_range_m.0, f.distance_range_m.1],
        }
    }
}

/// Synthesis results, one per T-R separation found in the input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub groups: Vec<SynthesisResult<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneReport {
    pub tr_separation_m: f64,
    #[serde(flatten)]
    pub ratio: PlaneRatio<f64>,
    pub ratio_percent: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_report_shape() {
        let r = FitReport::Fi {
            alpha_db: 70.0,
            beta: 2.9,
            sigma_db: 0.0,
            sample_count: 3,
            distance_range_m: [10.0, 100.0],
        };
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["model"], "fi");
        assert_eq!(v["beta"], 2.9);
        assert_eq!(v["distance_range_m"][1], 100.0);
    }
}
