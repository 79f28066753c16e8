//! Free-space reference loss and the two empirical large-scale models:
//!
//! * close-in (CI): `PL(d) = FSPL(d0) + 10 n log10(d/d0) + X`, one free
//!   parameter `n` fitted by minimum mean-square error;
//! * floating-intercept (FI): `PL(d) = alpha + 10 beta log10(d) + X`, fitted by
//!   ordinary least squares. `beta` may come out near zero or negative on
//!   clustered data; that is a valid fit, not an error.
//!
//! `sigma` is the RMS residual about the fit, population-normalized unless
//! [`SigmaNormalization::Sample`] is requested.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Default close-in reference distance.
pub const DEFAULT_D0_M: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossSample<T> {
    pub distance_m: T,
    pub path_loss_db: T,
}

impl<T: Scalar> PathLossSample<T> {
    pub fn new(distance_m: T, path_loss_db: T) -> Result<Self> {
        if !(distance_m > T::zero()) || !distance_m.is_finite() {
            return Err(Error::domain(format!("distance must be positive, got {distance_m}")));
        }
        if !path_loss_db.is_finite() {
            return Err(Error::domain("path loss must be finite"));
        }
        Ok(Self {
            distance_m,
            path_loss_db,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaNormalization {
    /// Divide by the sample count.
    #[default]
    Population,
    /// Divide by the sample count minus the number of fitted parameters.
    Sample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiFit<T> {
    pub ple_n: T,
    pub sigma_db: T,
    pub d0_m: T,
    pub frequency_ghz: T,
    pub sample_count: usize,
    pub distance_range_m: (T, T),
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiFit<T> {
    pub alpha_db: T,
    pub beta: T,
    pub sigma_db: T,
    pub sample_count: usize,
    pub distance_range_m: (T, T),
}

/// Mean path loss of a fitted model (no shadowing term).
pub trait PathLossModel<T: Scalar> {
    fn predict(&self, distance_m: T) -> Result<T>;
}

fn check_distance<T: Scalar>(d: T) -> Result<()> {
    if !(d > T::zero()) || !d.is_finite() {
        return Err(Error::domain(format!("distance must be positive, got {d}")));
    }
    Ok(())
}

/// Free-space path loss `20 log10(4 pi d / lambda)`, dB.
pub fn fspl<T: Scalar>(distance_m: T, frequency_ghz: T) -> Result<T> {
    check_distance(distance_m)?;
    if !(frequency_ghz > T::zero()) || !frequency_ghz.is_finite() {
        return Err(Error::domain(format!("frequency must be positive, got {frequency_ghz}")));
    }
    let lambda = T::of(SPEED_OF_LIGHT_M_PER_S) / (frequency_ghz * T::of(1e9));
    Ok(T::of(20.0) * (T::of(4.0) * T::PI() * distance_m / lambda).log10())
}

fn distance_range<T: Scalar>(samples: &[PathLossSample<T>]) -> (T, T) {
    samples.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), s| {
        (lo.min(s.distance_m), hi.max(s.distance_m))
    })
}

fn rms<T: Scalar>(sum_sq: T, n: usize, params: usize, norm: SigmaNormalization) -> T {
    let denom = match norm {
        SigmaNormalization::Population => n,
        SigmaNormalization::Sample => n.saturating_sub(params).max(1),
    };
    (sum_sq / T::from_usize(denom).unwrap()).sqrt()
}

/// Closed-form MMSE fit of the CI model with population sigma.
pub fn fit_ci<T: Scalar>(samples: &[PathLossSample<T>], d0_m: T, frequency_ghz: T) -> Result<CiFit<T>> {
    fit_ci_with(samples, d0_m, frequency_ghz, SigmaNormalization::Population)
}

/// `n = sum((PL_i - FSPL(d0)) D_i) / sum(D_i^2)` with `D_i = 10 log10(d_i/d0)`.
pub fn fit_ci_with<T: Scalar>(
    samples: &[PathLossSample<T>],
    d0_m: T,
    frequency_ghz: T,
    norm: SigmaNormalization,
) -> Result<CiFit<T>> {
    check_distance(d0_m)?;
    let anchor = fspl(d0_m, frequency_ghz)?;
    let ten = T::of(10.0);
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    let mut below_d0 = 0usize;
    for s in samples {
        check_distance(s.distance_m)?;
        let d = ten * (s.distance_m / d0_m).log10();
        if s.distance_m < d0_m {
            below_d0 += 1;
        }
        sxy = sxy + (s.path_loss_db - anchor) * d;
        sxx = sxx + d * d;
    }
    if !(sxx > T::zero()) {
        return Err(Error::DegenerateDesign(
            "CI fit needs at least one sample away from the reference distance".into(),
        ));
    }
    let n = sxy / sxx;
    let sum_sq = samples
        .iter()
        .map(|s| {
            let r = s.path_loss_db - (anchor + n * ten * (s.distance_m / d0_m).log10());
            r * r
        })
        .sum();
    let mut warnings = Vec::new();
    if below_d0 > 0 {
        warnings.push(format!(
            "{below_d0} sample(s) closer than the {d0_m} m reference distance"
        ));
    }
    Ok(CiFit {
        ple_n: n,
        sigma_db: rms(sum_sq, samples.len(), 1, norm),
        d0_m,
        frequency_ghz,
        sample_count: samples.len(),
        distance_range_m: distance_range(samples),
        warnings,
    })
}

/// Least-squares fit of the FI model with population sigma.
pub fn fit_fi<T: Scalar>(samples: &[PathLossSample<T>]) -> Result<FiFit<T>> {
    fit_fi_with(samples, SigmaNormalization::Population)
}

/// Centered least squares of PL on `x = 10 log10(d)`: slope `beta`,
/// intercept `alpha`.
pub fn fit_fi_with<T: Scalar>(samples: &[PathLossSample<T>], norm: SigmaNormalization) -> Result<FiFit<T>> {
    if samples.len() < 2 {
        return Err(Error::DegenerateDesign("FI fit needs at least two samples".into()));
    }
    let ten = T::of(10.0);
    let mut xs = Vec::with_capacity(samples.len());
    for s in samples {
        check_distance(s.distance_m)?;
        xs.push(ten * s.distance_m.log10());
    }
    let n = T::from_usize(samples.len()).unwrap();
    let x_mean = xs.iter().copied().sum::<T>() / n;
    let y_mean = samples.iter().map(|s| s.path_loss_db).sum::<T>() / n;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (x, s) in xs.iter().zip(samples) {
        let dx = *x - x_mean;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * (s.path_loss_db - y_mean);
    }
    let distinct = samples.iter().any(|s| s.distance_m != samples[0].distance_m);
    if !distinct || !(sxx > T::zero()) {
        return Err(Error::DegenerateDesign(
            "FI fit needs samples at two or more distinct distances".into(),
        ));
    }
    let beta = sxy / sxx;
    let alpha = y_mean - beta * x_mean;
    let sum_sq = xs
        .iter()
        .zip(samples)
        .map(|(x, s)| {
            let r = s.path_loss_db - (alpha + beta * *x);
            r * r
        })
        .sum();
    Ok(FiFit {
        alpha_db: alpha,
        beta,
        sigma_db: rms(sum_sq, samples.len(), 2, norm),
        sample_count: samples.len(),
        distance_range_m: distance_range(samples),
    })
}

impl<T: Scalar> PathLossModel<T> for CiFit<T> {
    fn predict(&self, distance_m: T) -> Result<T> {
        check_distance(distance_m)?;
        Ok(fspl(self.d0_m, self.frequency_ghz)?
            + T::of(10.0) * self.ple_n * (distance_m / self.d0_m).log10())
    }
}

impl<T: Scalar> PathLossModel<T> for FiFit<T> {
    fn predict(&self, distance_m: T) -> Result<T> {
        check_distance(distance_m)?;
        Ok(self.alpha_db + T::of(10.0) * self.beta * distance_m.log10())
    }
}

/// Sum of squared residuals of a model over samples.
pub fn sum_squared_residuals<T: Scalar, M: PathLossModel<T>>(
    model: &M,
    samples: &[PathLossSample<T>],
) -> Result<T> {
    samples.iter().try_fold(T::zero(), |acc, s| {
        let r = s.path_loss_db - model.predict(s.distance_m)?;
        Ok(acc + r * r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: f64, pl: f64) -> PathLossSample<f64> {
        PathLossSample::new(d, pl).unwrap()
    }

    #[test]
    fn fspl_reference_values() {
        // 20 log10(4 pi f / c) at 1 m
        let at28: f64 = 20.0 * (4.0 * std::f64::consts::PI * 28e9 / SPEED_OF_LIGHT_M_PER_S).log10();
        assert!((fspl(1.0_f64, 28.0).unwrap() - at28).abs() < 1e-12);
        assert!((fspl(1.0_f64, 28.0).unwrap() - 61.4).abs() < 0.05);
        assert!((fspl(1.0_f64, 73.0).unwrap() - 69.7).abs() < 0.05);
        for (d, f) in [(1.0_f64, 28.0), (37.0, 73.0), (0.2, 2.4)] {
            let step = fspl(2.0 * d, f).unwrap() - fspl(d, f).unwrap();
            assert!((step - 6.020_599_913_279_624).abs() < 1e-9);
        }
        assert!(fspl(0.0, 28.0).is_err());
        assert!(fspl(1.0, -1.0).is_err());
    }

    #[test]
    fn free_space_ci() {
        let samples: Vec<_> = [5.0, 20.0, 75.0, 180.0]
            .iter()
            .map(|&d| s(d, fspl(d, 28.0).unwrap()))
            .collect();
        let fit = fit_ci(&samples, 1.0, 28.0).unwrap();
        assert!((fit.ple_n - 2.0).abs() < 1e-9);
        assert!(fit.sigma_db.abs() < 1e-9);
        assert!(fit.warnings.is_empty());
    }

    #[test]
    fn two_sample_hand_computation() {
        // d = 10 m, 100 m at 28 GHz, d0 = 1: D = 10, 20.
        // PL - FSPL(1) = 30, 65  =>  n = (300 + 1300) / 500 = 3.2
        // residuals 30 - 32 = -2, 65 - 64 = 1  =>  sigma = sqrt(5/2)
        let a = fspl(1.0, 28.0).unwrap();
        let fit = fit_ci(&[s(10.0, a + 30.0), s(100.0, a + 65.0)], 1.0, 28.0).unwrap();
        assert!((fit.ple_n - 3.2).abs() < 1e-12);
        assert!((fit.sigma_db - 2.5_f64.sqrt()).abs() < 1e-12);
        let sample = fit_ci_with(&[s(10.0, a + 30.0), s(100.0, a + 65.0)], 1.0, 28.0, SigmaNormalization::Sample)
            .unwrap();
        assert!((sample.sigma_db - 5.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ci_degenerate_and_near_field() {
        assert!(matches!(
            fit_ci(&[s(1.0, 70.0), s(1.0, 72.0)], 1.0, 28.0),
            Err(Error::DegenerateDesign(_))
        ));
        assert!(matches!(fit_ci::<f64>(&[], 1.0, 28.0), Err(Error::DegenerateDesign(_))));
        let fit = fit_ci(&[s(0.5, 55.0), s(10.0, 90.0)], 1.0, 28.0).unwrap();
        assert_eq!(fit.warnings.len(), 1);
    }

    #[test]
    fn fi_exact_line() {
        let samples: Vec<_> = [3.0, 40.0, 90.0, 400.0]
            .iter()
            .map(|&d: &f64| s(d, 70.0 + 29.0 * d.log10()))
            .collect();
        let fit = fit_fi(&samples).unwrap();
        assert!((fit.alpha_db - 70.0).abs() < 1e-9);
        assert!((fit.beta - 2.9).abs() < 1e-9);
        assert!(fit.sigma_db < 1e-9);
        assert!((fit.predict(100.0).unwrap() - 128.0).abs() < 1e-9);
    }

    #[test]
    fn fi_degenerate() {
        assert!(matches!(
            fit_fi(&[s(50.0, 100.0), s(50.0, 110.0), s(50.0, 105.0)]),
            Err(Error::DegenerateDesign(_))
        ));
        assert!(matches!(fit_fi(&[s(50.0, 100.0)]), Err(Error::DegenerateDesign(_))));
    }

    #[test]
    fn fi_negative_slope_is_valid() {
        let fit = fit_fi(&[s(100.0, 130.0), s(110.0, 120.0)]).unwrap();
        assert!(fit.beta < 0.0);
    }

    #[test]
    fn ci_predictions() {
        let fit = CiFit {
            ple_n: 2.0,
            sigma_db: 0.0,
            d0_m: 1.0,
            frequency_ghz: 73.0,
            sample_count: 0,
            distance_range_m: (1.0, 1.0),
            warnings: vec![],
        };
        for d in [0.5_f64, 1.0, 13.0, 250.0] {
            assert!((fit.predict(d).unwrap() - fspl(d, 73.0).unwrap()).abs() < 1e-9);
        }
        let far = CiFit { ple_n: 3.1, d0_m: 100.0, ..fit };
        assert_eq!(far.predict(100.0).unwrap(), fspl(100.0, 73.0).unwrap());
        assert!(far.predict(0.0).is_err());
    }

    #[test]
    fn works_in_f32() {
        let samples: Vec<PathLossSample<f32>> = [5.0_f32, 20.0, 75.0]
            .iter()
            .map(|&d| PathLossSample::new(d, fspl(d, 28.0).unwrap() + 1.0).unwrap())
            .collect();
        let fit = fit_fi(&samples).unwrap();
        assert!((fit.beta - 2.0).abs() < 1e-3);
    }
}
