use serde::{Deserialize, Serialize};

use super::ChannelRealization;
use crate::antenna::{HornPattern, Pointing};
use crate::units::azimuth_difference;
use crate::{Result, Scalar};

/// How a directional antenna weights the paths it sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerMode {
    /// Boresight gain for every path inside the antenna's sector, zero
    /// outside.
    Sector,
    /// Every path weighted by the continuous pattern at its offset.
    Weighted,
}

impl std::str::FromStr for PowerMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sector" => Ok(Self::Sector),
            "weighted" => Ok(Self::Weighted),
            other => Err(format!("unknown power mode `{other}` (expected sector|weighted)")),
        }
    }
}

/// A pattern steered to a pointing, with the angular sector it claims in
/// sector mode.
#[derive(Debug, Clone, Copy)]
pub struct Steered<'a, T> {
    pub pattern: &'a HornPattern<T>,
    pub pointing: Pointing<T>,
    pub sector_az_deg: T,
    pub sector_el_deg: T,
}

impl<'a, T: Scalar> Steered<'a, T> {
    /// Sector of one HPBW on each axis.
    pub fn new(pattern: &'a HornPattern<T>, pointing: Pointing<T>) -> Self {
        Self {
            pattern,
            pointing,
            sector_az_deg: pattern.az_hpbw_deg,
            sector_el_deg: pattern.el_hpbw_deg,
        }
    }

    pub fn with_sector(mut self, az_deg: T, el_deg: T) -> Self {
        self.sector_az_deg = az_deg;
        self.sector_el_deg = el_deg;
        self
    }

    /// Sector membership on the half-open box `(-w/2, w/2]` per axis: a path
    /// on a shared edge goes to the sector whose centre is below it.
    pub fn contains(&self, az_deg: T, el_deg: T) -> bool {
        let two = T::of(2.0);
        let d_az = azimuth_difference(az_deg, self.pointing.az);
        let d_el = el_deg - self.pointing.el;
        let ha = self.sector_az_deg / two;
        let he = self.sector_el_deg / two;
        d_az > -ha && d_az <= ha && d_el > -he && d_el <= he
    }

    /// Linear pattern gain toward a direction.
    pub fn gain_toward(&self, az_deg: T, el_deg: T) -> T {
        self.pattern.gain(
            azimuth_difference(az_deg, self.pointing.az),
            el_deg - self.pointing.el,
        )
    }
}

/// Omnidirectional received power, mW: the sum of path powers. Phases and
/// delays do not enter because resolvable paths add in power.
pub fn omni_power<T: Scalar>(channel: &ChannelRealization<T>) -> Result<T> {
    channel.require_non_empty()?;
    Ok(channel.components.iter().map(|c| c.power()).sum())
}

/// Received power, mW, for one TX/RX pointing pair (antenna gains included).
///
/// Sector mode applies `G_T G_R` to every path departing inside the TX
/// sector and arriving inside the RX sector. Weighted mode sums
/// `f_tx(aod offset) f_rx(aoa offset) a^2` over all paths.
pub fn directional_power<T: Scalar>(
    channel: &ChannelRealization<T>,
    tx: &Steered<'_, T>,
    rx: &Steered<'_, T>,
    mode: PowerMode,
) -> T {
    match mode {
        PowerMode::Sector => {
            let inside: T = channel
                .components
                .iter()
                .filter(|c| {
                    tx.contains(c.aod_az_deg, c.aod_el_deg) && rx.contains(c.aoa_az_deg, c.aoa_el_deg)
                })
                .map(|c| c.power())
                .sum();
            tx.pattern.boresight_gain_linear() * rx.pattern.boresight_gain_linear() * inside
        }
        PowerMode::Weighted => channel
            .components
            .iter()
            .map(|c| {
                tx.gain_toward(c.aod_az_deg, c.aod_el_deg)
                    * rx.gain_toward(c.aoa_az_deg, c.aoa_el_deg)
                    * c.power()
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::make_pattern;
    use crate::channel::MultipathComponent;
    use crate::Error;

    fn mpc(amp: f64, aod: (f64, f64), aoa: (f64, f64)) -> MultipathComponent<f64> {
        MultipathComponent {
            amplitude: amp,
            phase_rad: 0.0,
            delay_ns: 0.0,
            aod_az_deg: aod.0,
            aod_el_deg: aod.1,
            aoa_az_deg: aoa.0,
            aoa_el_deg: aoa.1,
        }
    }

    fn chan(c: Vec<MultipathComponent<f64>>) -> ChannelRealization<f64> {
        ChannelRealization::new(c, 28.0, 100.0).unwrap()
    }

    #[test]
    fn omni_examples() {
        assert_eq!(omni_power(&chan(vec![mpc(2.0, (0.0, 0.0), (0.0, 0.0))])).unwrap(), 4.0);
        let mut a = mpc(1.0, (0.0, 0.0), (0.0, 0.0));
        let mut b = a;
        a.phase_rad = 1.3;
        b.phase_rad = 4.0;
        b.delay_ns = 77.0;
        assert_eq!(omni_power(&chan(vec![a, b])).unwrap(), 2.0);
        assert!(matches!(omni_power(&chan(vec![])), Err(Error::Domain(_))));
    }

    #[test]
    fn boresight_path_both_modes() {
        let tx = make_pattern(24.5, 10.9, 8.6).unwrap();
        let rx = make_pattern(15.0, 28.8, 30.0).unwrap();
        let c = chan(vec![mpc(0.3, (40.0, -10.0), (200.0, 5.0))]);
        let t = Steered::new(&tx, Pointing::new(40.0, -10.0));
        let r = Steered::new(&rx, Pointing::new(200.0, 5.0));
        let want = tx.boresight_gain_linear() * rx.boresight_gain_linear() * 0.09;
        for mode in [PowerMode::Sector, PowerMode::Weighted] {
            let got = directional_power(&c, &t, &r, mode);
            assert!((got - want).abs() <= 1e-12 * want, "{mode:?}");
        }
    }

    #[test]
    fn outside_tx_sector_is_dark() {
        let p = make_pattern(10.0, 10.0, 10.0).unwrap();
        let c = chan(vec![mpc(1.0, (6.0, 0.0), (0.0, 0.0))]);
        let t = Steered::new(&p, Pointing::new(0.0, 0.0));
        let r = Steered::new(&p, Pointing::new(0.0, 0.0));
        assert_eq!(directional_power(&c, &t, &r, PowerMode::Sector), 0.0);
        assert!(directional_power(&c, &t, &r, PowerMode::Weighted) > 0.0);
    }

    #[test]
    fn half_power_arrival() {
        let p = make_pattern(20.0, 12.0, 9.0).unwrap();
        let c = chan(vec![mpc(1.0, (0.0, 0.0), (6.0, 0.0))]);
        let t = Steered::new(&p, Pointing::new(0.0, 0.0));
        let r = Steered::new(&p, Pointing::new(0.0, 0.0));
        let s = directional_power(&c, &t, &r, PowerMode::Sector);
        let w = directional_power(&c, &t, &r, PowerMode::Weighted);
        assert!(s > 0.0, "edge path belongs to the sector below it");
        assert!((w / s - 0.5).abs() < 1e-6);
    }

    #[test]
    fn edge_ties_go_to_lower_sector() {
        let p = make_pattern(0.0, 10.0, 10.0).unwrap();
        let low = Steered::new(&p, Pointing::new(0.0, 0.0));
        let high = Steered::new(&p, Pointing::new(10.0, 0.0));
        assert!(low.contains(5.0, 0.0));
        assert!(!high.contains(5.0, 0.0));
        let up = Steered::new(&p, Pointing::new(0.0, 10.0));
        assert!(low.contains(0.0, 5.0));
        assert!(!up.contains(0.0, 5.0));
        // across north
        let last = Steered::new(&p, Pointing::new(350.0, 0.0));
        assert!(last.contains(355.0, 0.0));
        assert!(!low.contains(355.0, 0.0));
    }

    #[test]
    fn parse_mode() {
        assert_eq!("sector".parse::<PowerMode>().unwrap(), PowerMode::Sector);
        assert!("omni".parse::<PowerMode>().is_err());
    }
}
