use rayon::prelude::*;

use super::{HornPattern, Pointing, Radiator};
use crate::units::{azimuth_difference, linear_to_db};
use crate::{Error, Result, Scalar};

/// Relative change between successive refinements at which an integral is
/// considered converged (3 significant figures).
pub const DEFAULT_REL_TOL: f64 = 5e-4;

const START_CELLS: usize = 64;
const MAX_CELLS: usize = 1 << 14;

/// A horn pattern re-pointed at several boresights and summed in power.
#[derive(Debug, Clone)]
pub struct CombinedBeam<T> {
    pub pattern: HornPattern<T>,
    pub pointings: Vec<Pointing<T>>,
}

impl<T: Scalar> CombinedBeam<T> {
    pub fn new(pattern: HornPattern<T>, pointings: Vec<Pointing<T>>) -> Result<Self> {
        if pointings.is_empty() {
            return Err(Error::domain("a combined beam needs at least one pointing"));
        }
        Ok(Self { pattern, pointings })
    }

    /// `n_az x n_el` pointings spaced one HPBW apart, centred on boresight.
    pub fn hpbw_lattice(pattern: HornPattern<T>, n_az: usize, n_el: usize) -> Result<Self> {
        let centred = |n: usize, step: T| -> Vec<T> {
            let mid = T::from_usize(n.saturating_sub(1)).unwrap() / T::of(2.0);
            (0..n).map(|k| (T::from_usize(k).unwrap() - mid) * step).collect()
        };
        let az = centred(n_az, pattern.az_hpbw_deg);
        let el = centred(n_el, pattern.el_hpbw_deg);
        let pointings = el
            .iter()
            .flat_map(|&e| az.iter().map(move |&a| Pointing::new(a, e)))
            .collect();
        Self::new(pattern, pointings)
    }
}

impl<T: Scalar> Radiator<T> for CombinedBeam<T> {
    fn gain_at(&self, d_az_deg: T, d_el_deg: T) -> T {
        self.pointings.iter().fold(T::zero(), |acc, p| {
            acc + self
                .pattern
                .gain(azimuth_difference(d_az_deg, p.az), d_el_deg - p.el)
        })
    }

    fn reference_gain(&self) -> T {
        self.pattern.boresight_gain_linear()
    }
}

fn midpoint_rule<T: Scalar, R: Radiator<T> + ?Sized>(
    beam: &R,
    az: (T, T),
    el: (T, T),
    n: usize,
) -> T {
    let nt = T::from_usize(n).unwrap();
    let h_az = (az.1 - az.0) / nt;
    let h_el = (el.1 - el.0) / nt;
    let half = T::of(0.5);
    // fixed per-row order, rows reduced in index order
    let rows: Vec<T> = (0..n)
        .into_par_iter()
        .map(|j| {
            let y = el.0 + (T::from_usize(j).unwrap() + half) * h_el;
            let mut acc = T::zero();
            for i in 0..n {
                let x = az.0 + (T::from_usize(i).unwrap() + half) * h_az;
                acc = acc + beam.gain_at(x, y);
            }
            acc
        })
        .collect();
    rows.into_iter().fold(T::zero(), |a, r| a + r) * h_az * h_el
}

/// 2-D integral (degrees squared) of a beam over
/// `[-az_half, az_half] x [-el_half, el_half]`, each axis clipped to
/// [-90, 90]. Midpoint rule, doubling the cell count per axis until two
/// successive estimates agree to `rel_tol`.
pub fn integrate_beam<T: Scalar, R: Radiator<T> + ?Sized>(
    beam: &R,
    az_half_deg: T,
    el_half_deg: T,
    rel_tol: T,
) -> Result<T> {
    if !(az_half_deg > T::zero() && el_half_deg > T::zero()) {
        return Err(Error::domain("integration half-widths must be positive"));
    }
    let lim = T::of(90.0);
    let az = (-az_half_deg.min(lim), az_half_deg.min(lim));
    let el = (-el_half_deg.min(lim), el_half_deg.min(lim));

    let mut n = START_CELLS;
    let mut prev = midpoint_rule(beam, az, el, n);
    while n < MAX_CELLS {
        n *= 2;
        let next = midpoint_rule(beam, az, el, n);
        let scale = next.abs().max(T::min_positive_value());
        if (next - prev).abs() / scale <= rel_tol {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

/// Integrated power of a pattern over `+-limits * HPBW` on both axes.
pub fn integrated_beam_power<T: Scalar>(pattern: &HornPattern<T>, limits: T) -> Result<T> {
    if !(limits > T::zero()) {
        return Err(Error::domain(format!("integration limits must be positive, got {limits}")));
    }
    integrate_beam(
        pattern,
        limits * pattern.az_hpbw_deg,
        limits * pattern.el_hpbw_deg,
        T::of(DEFAULT_REL_TOL),
    )
}

/// `10 log10(P_a / P_b)` of two integrated beams, each first normalized to
/// unit boresight gain. Each beam is integrated over its own half-widths.
pub fn beam_power_ratio_db<T: Scalar, A, B>(
    a: &A,
    a_half: (T, T),
    b: &B,
    b_half: (T, T),
) -> Result<T>
where
    A: Radiator<T> + ?Sized,
    B: Radiator<T> + ?Sized,
{
    let tol = T::of(DEFAULT_REL_TOL);
    let pa = integrate_beam(a, a_half.0, a_half.1, tol)? / a.reference_gain();
    let pb = integrate_beam(b, b_half.0, b_half.1, tol)? / b.reference_gain();
    Ok(linear_to_db(pa / pb))
}
