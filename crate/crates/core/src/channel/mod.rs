//! Multipath channel realizations and the received power they produce
//! at omnidirectional and directional antennas.

mod generate;
mod pdp;
mod power;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

pub use generate::{
    generate_channel, generate_channel_indexed, generate_ensemble, log_uniform_distances,
    GeneratorConfig,
};
pub use pdp::{compute_pdp, PowerDelayProfile, DEFAULT_BIN_WIDTH_NS};
pub use power::{directional_power, omni_power, PowerMode, Steered};

/// One resolvable path. `amplitude` is in sqrt(mW) as received by a 0 dBi
/// antenna for a 0 dBm transmitter, so `amplitude^2` is the path's linear
/// power transfer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultipathComponent<T> {
    pub amplitude: T,
    pub phase_rad: T,
    pub delay_ns: T,
    pub aod_az_deg: T,
    pub aod_el_deg: T,
    pub aoa_az_deg: T,
    pub aoa_el_deg: T,
}

impl<T: Scalar> MultipathComponent<T> {
    pub fn power(&self) -> T {
        self.amplitude * self.amplitude
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.amplitude,
            self.phase_rad,
            self.delay_ns,
            self.aod_az_deg,
            self.aod_el_deg,
            self.aoa_az_deg,
            self.aoa_el_deg,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::domain("multipath component has a non-finite field"));
        }
        if self.amplitude < T::zero() || self.delay_ns < T::zero() {
            return Err(Error::domain("amplitude and delay must be non-negative"));
        }
        let full = T::of(360.0);
        let quarter = T::of(90.0);
        for az in [self.aod_az_deg, self.aoa_az_deg] {
            if az < T::zero() || az >= full {
                return Err(Error::domain(format!("azimuth {az} outside [0, 360)")));
            }
        }
        for el in [self.aod_el_deg, self.aoa_el_deg] {
            if el.abs() > quarter {
                return Err(Error::domain(format!("elevation {el} outside [-90, 90]")));
            }
        }
        Ok(())
    }
}

/// The resolvable paths between one TX and one RX location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization<T> {
    pub components: Vec<MultipathComponent<T>>,
    pub carrier_ghz: T,
    pub tr_separation_m: T,
}

impl<T: Scalar> ChannelRealization<T> {
    pub fn new(
        components: Vec<MultipathComponent<T>>,
        carrier_ghz: T,
        tr_separation_m: T,
    ) -> Result<Self> {
        if !(tr_separation_m > T::zero()) {
            return Err(Error::domain(format!(
                "T-R separation must be positive, got {tr_separation_m}"
            )));
        }
        for c in &components {
            c.validate()?;
        }
        Ok(Self {
            components,
            carrier_ghz,
            tr_separation_m,
        })
    }

    /// Every amplitude multiplied by `c`.
    pub fn scaled(&self, c: T) -> Self {
        let mut out = self.clone();
        for m in &mut out.components {
            m.amplitude = m.amplitude * c;
        }
        out
    }

    pub(crate) fn require_non_empty(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::domain("channel has no multipath components"));
        }
        Ok(())
    }
}
