use serde::{Deserialize, Serialize};

use crate::units::db_to_linear;
use crate::{Error, Result, Scalar};

/// Normalized sinc, `sin(pi u) / (pi u)`, with `sinc(0) = 1`.
#[inline]
pub fn sinc<T: Scalar>(u: T) -> T {
    if u == T::zero() {
        T::one()
    } else {
        let x = T::PI() * u;
        x.sin() / x
    }
}

/// One axis of the horn pattern: `sinc^2(k sin x) cos^2 x`, zero outside
/// [-90, 90] degrees.
#[inline]
fn axis_factor<T: Scalar>(shape: T, offset_deg: T) -> T {
    // cos^2 vanishes at +-90; beyond that the back lobe is suppressed
    if offset_deg.abs() >= T::of(90.0) {
        return T::zero();
    }
    let x = offset_deg.to_radians();
    let s = sinc(shape * x.sin());
    let c = x.cos();
    s * s * (c * c)
}

fn check_hpbw<T: Scalar>(hpbw_deg: T) -> Result<()> {
    if !(hpbw_deg > T::zero() && hpbw_deg < T::of(180.0)) {
        return Err(Error::domain(format!(
            "HPBW must lie in (0, 180) degrees, got {hpbw_deg}"
        )));
    }
    Ok(())
}

/// Solves `sinc^2(x sin(h/2)) cos^2(h/2) = 1/2` for the shape parameter `x`
/// of a beam with half-power beamwidth `h`.
///
/// The root lies on the sinc main lobe, `x sin(h/2)` in `[0, 1]`, where the
/// left side is strictly decreasing; bisection on that bracket always
/// converges. No positive root exists once `cos^2(h/2) <= 1/2`, so HPBWs of 90
/// degrees or more are rejected along with the (0, 180) range check.
pub fn solve_beamwidth_param<T: Scalar>(hpbw_deg: T) -> Result<T> {
    check_hpbw(hpbw_deg)?;
    let half = (hpbw_deg / T::of(2.0)).to_radians();
    let s = half.sin();
    let c2 = half.cos() * half.cos();
    let target = T::of(0.5);
    if hpbw_deg >= T::of(90.0) || c2 <= target {
        return Err(Error::domain(format!(
            "no sinc shape parameter gives half power at HPBW {hpbw_deg} deg (cos^2 term alone is already <= 1/2)"
        )));
    }
    let residual = |x: T| {
        let v = sinc(x * s);
        v * v * c2 - target
    };

    let mut lo = T::zero();
    let mut hi = T::one() / s;
    let tol = T::of(1e-12).max(T::epsilon() * hi * T::of(4.0));
    for _ in 0..200 {
        let mid = (lo + hi) / T::of(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol {
            break;
        }
    }
    let root = (lo + hi) / T::of(2.0);

    let check = residual(root).abs();
    let limit = T::of(1e-9).max(T::epsilon().sqrt());
    if check > limit {
        return Err(Error::domain(format!(
            "beamwidth root for HPBW {hpbw_deg} failed verification (residual {check})"
        )));
    }
    Ok(root)
}

/// Canonical horn antenna pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HornPattern<T> {
    pub boresight_gain_dbi: T,
    pub az_hpbw_deg: T,
    pub el_hpbw_deg: T,
    /// Azimuth shape parameter.
    pub a: T,
    /// Elevation shape parameter.
    pub b: T,
}

/// Builds a pattern, solving both shape parameters from the HPBWs.
pub fn make_pattern<T: Scalar>(gain_dbi: T, az_hpbw_deg: T, el_hpbw_deg: T) -> Result<HornPattern<T>> {
    if !gain_dbi.is_finite() {
        return Err(Error::domain(format!("boresight gain must be finite, got {gain_dbi}")));
    }
    let a = solve_beamwidth_param(az_hpbw_deg)?;
    let b = solve_beamwidth_param(el_hpbw_deg)?;
    Ok(HornPattern {
        boresight_gain_dbi: gain_dbi,
        az_hpbw_deg,
        el_hpbw_deg,
        a,
        b,
    })
}

impl<T: Scalar> HornPattern<T> {
    pub fn new(gain_dbi: T, az_hpbw_deg: T, el_hpbw_deg: T) -> Result<Self> {
        make_pattern(gain_dbi, az_hpbw_deg, el_hpbw_deg)
    }

    /// Boresight gain as a linear power factor.
    pub fn boresight_gain_linear(&self) -> T {
        db_to_linear(self.boresight_gain_dbi)
    }

    /// Normalized azimuth cut (peak 1).
    pub fn az_factor(&self, d_az_deg: T) -> T {
        axis_factor(self.a, d_az_deg)
    }

    /// Normalized elevation cut (peak 1).
    pub fn el_factor(&self, d_el_deg: T) -> T {
        axis_factor(self.b, d_el_deg)
    }

    /// Linear power gain at an offset from boresight.
    pub fn gain(&self, d_az_deg: T, d_el_deg: T) -> T {
        pattern_gain(self, d_az_deg, d_el_deg)
    }

    /// Residuals of the two half-power equations at the stored parameters.
    pub fn half_power_residuals(&self) -> (T, T) {
        let half = T::of(0.5);
        (
            self.az_factor(self.az_hpbw_deg / T::of(2.0)) - half,
            self.el_factor(self.el_hpbw_deg / T::of(2.0)) - half,
        )
    }

    /// Same beam shape, different boresight gain.
    pub fn with_gain_dbi(mut self, gain_dbi: T) -> Self {
        self.boresight_gain_dbi = gain_dbi;
        self
    }
}

/// Linear power gain `G * az(d_az) * el(d_el)`.
pub fn pattern_gain<T: Scalar>(pattern: &HornPattern<T>, d_az_deg: T, d_el_deg: T) -> T {
    pattern.boresight_gain_linear() * pattern.az_factor(d_az_deg) * pattern.el_factor(d_el_deg)
}

/// Anything with a far-field power pattern over (azimuth, elevation)
/// offsets in degrees.
pub trait Radiator<T: Scalar>: Sync {
    fn gain_at(&self, d_az_deg: T, d_el_deg: T) -> T;

    /// Linear boresight gain used to normalize cross-pattern comparisons.
    fn reference_gain(&self) -> T;
}

impl<T: Scalar> Radiator<T> for HornPattern<T> {
    fn gain_at(&self, d_az_deg: T, d_el_deg: T) -> T {
        pattern_gain(self, d_az_deg, d_el_deg)
    }

    fn reference_gain(&self) -> T {
        self.boresight_gain_linear()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent bisection on the raw equation over [0.1, 100].
    fn bisection_oracle(hpbw_deg: f64) -> f64 {
        let h: f64 = (hpbw_deg / 2.0).to_radians();
        let f = |x: f64| {
            let u = std::f64::consts::PI * x * h.sin();
            let s = if u == 0.0 { 1.0 } else { u.sin() / u };
            s * s * h.cos().powi(2) - 0.5
        };
        // sidelobes of sinc^2 stay below 1/2, so f < 0 past the root
        let (mut lo, mut hi) = (0.1_f64, 100.0_f64);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn ten_degree_param() {
        let a = solve_beamwidth_param(10.0_f64).unwrap();
        assert!((a - 5.06).abs() <= 0.05, "a = {a}");
    }

    #[test]
    fn widebeam_param_matches_bisection_oracle() {
        let a = solve_beamwidth_param(28.8_f64).unwrap();
        let oracle = bisection_oracle(28.8);
        assert!((a - oracle).abs() < 1e-9, "{a} vs {oracle}");
        // frozen from the oracle
        assert!((a - 1.702_829_252_4).abs() < 1e-8);
    }

    #[test]
    fn param_decreases_with_beamwidth() {
        let mut prev = f64::INFINITY;
        for h in [1.0, 5.0, 7.0, 8.6, 10.0, 10.9, 28.8, 30.0, 60.0, 89.0] {
            let a = solve_beamwidth_param(h).unwrap();
            assert!(a < prev, "not decreasing at {h}");
            prev = a;
        }
    }

    #[test]
    fn out_of_range_hpbw() {
        for h in [0.0, -1.0, 180.0, 200.0, f64::NAN, 90.0, 120.0] {
            assert!(matches!(solve_beamwidth_param(h), Err(Error::Domain(_))), "{h}");
        }
    }

    #[test]
    fn very_narrow_beam_solves() {
        let a = solve_beamwidth_param(0.01_f64).unwrap();
        let p = make_pattern(0.0_f64, 0.01, 0.01).unwrap();
        assert!(a > 1e3);
        assert!(p.half_power_residuals().0.abs() < 1e-9);
    }

    #[test]
    fn measurement_antennas_certify() {
        for (g, az, el) in [(24.5_f64, 10.9, 8.6), (15.0, 28.8, 30.0), (27.0, 7.0, 7.0)] {
            let p = make_pattern(g, az, el).unwrap();
            let (ra, rb) = p.half_power_residuals();
            assert!(ra.abs() <= 1e-9 && rb.abs() <= 1e-9, "{ra} {rb}");
            assert!(p.a > 0.0 && p.b > 0.0);
        }
    }

    #[test]
    fn zero_dbi_has_unit_boresight() {
        let p = make_pattern(0.0_f64, 10.0, 10.0).unwrap();
        assert_eq!(p.boresight_gain_linear(), 1.0);
        assert_eq!(pattern_gain(&p, 0.0, 0.0), 1.0);
    }

    #[test]
    fn gain_landmarks() {
        let p = make_pattern(24.5_f64, 10.9, 8.6).unwrap();
        let g = p.boresight_gain_linear();
        assert_eq!(pattern_gain(&p, 0.0, 0.0), g);
        for s in [-1.0, 1.0] {
            let half_az = pattern_gain(&p, s * 10.9 / 2.0, 0.0);
            let half_el = pattern_gain(&p, 0.0, s * 8.6 / 2.0);
            assert!((half_az / g - 0.5).abs() < 1e-6);
            assert!((half_el / g - 0.5).abs() < 1e-6);
        }
        assert_eq!(pattern_gain(&p, 90.0, 0.0), 0.0);
        assert_eq!(pattern_gain(&p, 0.0, -90.0), 0.0);
        assert_eq!(pattern_gain(&p, 120.0, 0.0), 0.0);
    }

    #[test]
    fn f32_pattern() {
        let p = make_pattern(0.0_f32, 10.0, 8.0).unwrap();
        assert!((p.a - 5.056).abs() < 1e-2);
        assert!((p.az_factor(5.0) - 0.5).abs() < 1e-5);
    }
}
