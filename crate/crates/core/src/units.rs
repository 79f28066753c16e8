//! Decibel and angle conversions. Every dB <-> linear conversion in the crate
//! goes through here.

use crate::Scalar;

/// Power ratio in dB to a linear factor.
#[inline]
pub fn db_to_linear<T: Scalar>(db: T) -> T {
    T::of(10.0).powf(db / T::of(10.0))
}

/// Linear power factor to dB. Zero maps to negative infinity.
#[inline]
pub fn linear_to_db<T: Scalar>(lin: T) -> T {
    T::of(10.0) * lin.log10()
}

#[inline]
pub fn dbm_to_mw<T: Scalar>(dbm: T) -> T {
    db_to_linear(dbm)
}

#[inline]
pub fn mw_to_dbm<T: Scalar>(mw: T) -> T {
    linear_to_db(mw)
}

/// Wraps an azimuth into [0, 360).
pub fn wrap_azimuth<T: Scalar>(deg: T) -> T {
    let full = T::of(360.0);
    let w = deg % full;
    let w = if w < T::zero() { w + full } else { w };
    // -tiny % 360 + 360 rounds to 360
    if w >= full {
        T::zero()
    } else {
        w
    }
}

/// Signed azimuth difference `to - from`, mapped into (-180, 180].
pub fn azimuth_difference<T: Scalar>(to: T, from: T) -> T {
    let half = T::of(180.0);
    let full = T::of(360.0);
    let mut d = (to - from) % full;
    if d > half {
        d = d - full;
    } else if d <= -half {
        d = d + full;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_round_trip() {
        for db in [-120.0_f64, -3.0, 0.0, 9.5, 24.5] {
            let back = linear_to_db(db_to_linear(db));
            assert!((back - db).abs() < 1e-12, "{db} -> {back}");
        }
        assert_eq!(db_to_linear(0.0_f64), 1.0);
        assert_eq!(linear_to_db(0.0_f64), f64::NEG_INFINITY);
    }

    #[test]
    fn azimuth_wrapping() {
        assert_eq!(wrap_azimuth(-10.0_f64), 350.0);
        assert_eq!(wrap_azimuth(720.0_f64), 0.0);
        assert_eq!(azimuth_difference(355.0_f64, 0.0), -5.0);
        assert_eq!(azimuth_difference(5.0_f64, 355.0), 10.0);
        assert_eq!(azimuth_difference(180.0_f64, 0.0), 180.0);
        assert_eq!(azimuth_difference(0.0_f64, 180.0), 180.0);
        assert_eq!(azimuth_difference(10.0_f32, 350.0), 20.0);
    }
}
