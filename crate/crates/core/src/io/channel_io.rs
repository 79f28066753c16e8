use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{check_header, parse_record};
use crate::channel::{ChannelRealization, MultipathComponent};
use crate::units::wrap_azimuth;
use crate::{Error, Result};

pub const CHANNEL_HEADER: [&str; 7] = [
    "amp_sqrt_mw",
    "phase_rad",
    "delay_ns",
    "aod_az",
    "aod_el",
    "aoa_az",
    "aoa_el",
];

/// JSON written next to a channel CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSidecar {
    pub carrier_ghz: f64,
    pub tr_separation_m: f64,
}

fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes `<path>` (CSV) and `<path>` with a `.json` extension (sidecar).
pub fn write_channel(channel: &ChannelRealization<f64>, csv_path: impl AsRef<Path>) -> Result<()> {
    let csv_path = csv_path.as_ref();
    let mut text = CHANNEL_HEADER.join(",");
    text.push('\n');
    for c in &channel.components {
        text.push_str(&format!(
            "{:.9e},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            c.amplitude, c.phase_rad, c.delay_ns, c.aod_az_deg, c.aod_el_deg, c.aoa_az_deg, c.aoa_el_deg
        ));
    }
    fs::write(csv_path, text)?;
    let side = ChannelSidecar {
        carrier_ghz: channel.carrier_ghz,
        tr_separation_m: channel.tr_separation_m,
    };
    fs::write(sidecar_path(csv_path), serde_json::to_string_pretty(&side)? + "\n")?;
    Ok(())
}

pub fn read_channel(csv_path: impl AsRef<Path>) -> Result<ChannelRealization<f64>> {
    let csv_path = csv_path.as_ref();
    let side: ChannelSidecar = serde_json::from_str(&fs::read_to_string(sidecar_path(csv_path))?)?;
    let text = fs::read_to_string(csv_path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = reader.records();
    let header = rows.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing header".into(),
    })??;
    check_header(&header, &CHANNEL_HEADER, 1)?;
    let mut components = Vec::new();
    for row in rows {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let v = parse_record(&row, &CHANNEL_HEADER, line)?;
        let c = MultipathComponent {
            amplitude: v[0],
            phase_rad: v[1],
            delay_ns: v[2],
            aod_az_deg: wrap_azimuth(v[3]),
            aod_el_deg: v[4],
            aoa_az_deg: wrap_azimuth(v[5]),
            aoa_el_deg: v[6],
        };
        c.validate().map_err(|e| Error::Parse {
            line,
            column: 1,
            message: e.to_string(),
        })?;
        components.push(c);
    }
    ChannelRealization::new(components, side.carrier_ghz, side.tr_separation_m)
}
