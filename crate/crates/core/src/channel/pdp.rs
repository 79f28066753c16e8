use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::ChannelRealization;
use crate::{Error, Result, Scalar};

/// Multipath time resolution of an 800 MHz null-to-null sounder.
pub const DEFAULT_BIN_WIDTH_NS: f64 = 2.5;

/// Sparse power delay profile: occupied bins only, sorted by index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerDelayProfile<T> {
    pub bin_width_ns: T,
    pub bins: Vec<(usize, T)>,
}

impl<T: Scalar> PowerDelayProfile<T> {
    /// Area under the profile, mW.
    pub fn total_power(&self) -> T {
        self.bins.iter().map(|&(_, p)| p).sum()
    }

    /// `delay_ns,power_mw`, delay at the start of each occupied bin.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "delay_ns,power_mw")?;
        for &(k, p) in &self.bins {
            let delay = T::from_usize(k).unwrap() * self.bin_width_ns;
            writeln!(out, "{:.6},{:e}", delay.to_f64_lossy(), p.to_f64_lossy())?;
        }
        Ok(())
    }
}

/// Bins path powers at `floor(delay / bin_width)`. Paths sharing a bin add
/// in power, so the profile area equals the omnidirectional power.
pub fn compute_pdp<T: Scalar>(
    channel: &ChannelRealization<T>,
    bin_width_ns: T,
) -> Result<PowerDelayProfile<T>> {
    if !(bin_width_ns > T::zero()) || !bin_width_ns.is_finite() {
        return Err(Error::domain(format!("PDP bin width must be positive, got {bin_width_ns}")));
    }
    let mut bins: BTreeMap<usize, T> = BTreeMap::new();
    for c in &channel.components {
        let k = (c.delay_ns / bin_width_ns)
            .floor()
            .to_usize()
            .ok_or_else(|| Error::domain(format!("delay {} has no bin", c.delay_ns)))?;
        let e = bins.entry(k).or_insert_with(T::zero);
        *e = *e + c.power();
    }
    Ok(PowerDelayProfile {
        bin_width_ns,
        bins: bins.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{omni_power, MultipathComponent};

    fn at(amp: f64, delay: f64) -> MultipathComponent<f64> {
        MultipathComponent {
            amplitude: amp,
            phase_rad: 0.5,
            delay_ns: delay,
            aod_az_deg: 0.0,
            aod_el_deg: 0.0,
            aoa_az_deg: 0.0,
            aoa_el_deg: 0.0,
        }
    }

    #[test]
    fn single_path_lands_in_bin_40() {
        let c = ChannelRealization::new(vec![at(1.5, 100.0)], 28.0, 50.0).unwrap();
        let pdp = compute_pdp(&c, 2.5).unwrap();
        assert_eq!(pdp.bins, vec![(40, 2.25)]);
    }

    #[test]
    fn shared_bin_adds_power() {
        let c = ChannelRealization::new(vec![at(1.0, 10.1), at(1.0, 11.9)], 28.0, 50.0).unwrap();
        let pdp = compute_pdp(&c, 2.5).unwrap();
        assert_eq!(pdp.bins, vec![(4, 2.0)]);
        assert_eq!(pdp.total_power(), omni_power(&c).unwrap());
    }

    #[test]
    fn bad_width() {
        let c = ChannelRealization::new(vec![at(1.0, 1.0)], 28.0, 50.0).unwrap();
        assert!(compute_pdp(&c, 0.0).is_err());
        assert!(compute_pdp(&c, -2.5).is_err());
    }

    #[test]
    fn csv_layout() {
        let c = ChannelRealization::new(vec![at(1.0, 5.0)], 28.0, 50.0).unwrap();
        let mut buf = Vec::new();
        compute_pdp(&c, 2.5).unwrap().write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "delay_ns,power_mw\n5.000000,1e0\n");
    }
}
