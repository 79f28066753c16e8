//! File formats, embedded measurement tables, and fixture verification.
//!
//! * Measurements: `tx_az,tx_el,rx_az,rx_el,pr_dbm,gt_dbi,gr_dbi,pt_dbm,dist_m`,
//!   optionally preceded by `# key: value` metadata lines.
//! * Path-loss samples: `distance_m,path_loss_db`.
//! * Channels: `amp_sqrt_mw,phase_rad,delay_ns,aod_az,aod_el,aoa_az,aoa_el`
//!   plus a JSON sidecar with `carrier_ghz` and `tr_separation_m`.
//!
//! Numbers are written with 6 decimals (amplitudes in scientific notation).

mod channel_io;
pub mod fixtures;
mod measurements;
mod pathloss_io;
mod report;
pub mod verify;

pub use channel_io::{read_channel, write_channel, ChannelSidecar, CHANNEL_HEADER};
pub use measurements::{
    parse_measurements, read_measurements, write_measurements, MeasurementFile,
    MeasurementMetadata, MEASUREMENT_HEADER,
};
pub use pathloss_io::{
    parse_path_loss_samples, read_path_loss_samples, write_path_loss_samples, PATH_LOSS_HEADER};
pub use report::{FitReport, PlaneReport, SynthesisReport};

use crate::Error;

pub(crate) fn parse_field(raw: &str, line: u64, column: usize, name: &str) -> Result<f64, Error> {
    let t = raw.trim();
    if t.is_empty() {
        return Err(Error::Parse {
            line,
            column,
            message: format!("missing value for `{name}`"),
        });
    }
    t.parse::<f64>().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("`{name}` is not a number: `{t}`"),
    })
}

/// Checks a header record against the expected column names.
pub(crate) fn check_header(found: &csv::StringRecord, expected: &[&str], line: u64) -> Result<(), Error> {
    for (i, name) in expected.iter().enumerate() {
        match found.get(i).map(str::trim) {
            Some(f) if f == *name => {}
            Some(f) => {
                return Err(Error::Parse {
                    line,
                    column: i + 1,
                    message: format!("expected column `{name}`, found `{f}`"),
                })
            }
            None => {
                return Err(Error::Parse {
                    line,
                    column: i + 1,
                    message: format!("missing column `{name}`"),
                })
            }
        }
    }
    if found.len() > expected.len() {
        return Err(Error::Parse {
            line,
            column: expected.len() + 1,
            message: "unexpected extra column".into(),
        });
    }
    Ok(())
}

/// Parses one data record into `N` numbers, reporting the first empty or
/// malformed field.
pub(crate) fn parse_record<const N: usize>(
    record: &csv::StringRecord,
    names: &[&str; N],
    line: u64,
) -> Result<[f64; N], Error> {
    let mut out = [0.0; N];
    for (i, name) in names.iter().enumerate() {
        let raw = record.get(i).ok_or_else(|| Error::Parse {
            line,
            column: i + 1,
            message: format!("missing value for `{name}`"),
        })?;
        out[i] = parse_field(raw, line, i + 1, name)?;
    }
    if record.len() > N {
        return Err(Error::Parse {
            line,
            column: N + 1,
            message: "unexpected extra field".into(),
        });
    }
    Ok(out)
}
