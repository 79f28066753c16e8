use std::fs;
use std::io::Write;
use std::path::Path;

use super::{check_header, parse_record};
use crate::pathloss::PathLossSample;
use crate::{Error, Result};

pub const PATH_LOSS_HEADER: [&str; 2] = ["distance_m", "path_loss_db"];

pub fn parse_path_loss_samples(text: &str) -> Result<Vec<PathLossSample<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = reader.records();
    let header = rows.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing header".into(),
    })??;
    check_header(&header, &PATH_LOSS_HEADER, header.position().map_or(1, |p| p.line()))?;
    let mut out = Vec::new();
    for row in rows {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let [d, pl] = parse_record(&row, &PATH_LOSS_HEADER, line)?;
        let s = PathLossSample::new(d, pl).map_err(|e| Error::Parse {
            line,
            column: if d > 0.0 { 2 } else { 1 },
            message: e.to_string(),
        })?;
        out.push(s);
    }
    Ok(out)
}

pub fn read_path_loss_samples(path: impl AsRef<Path>) -> Result<Vec<PathLossSample<f64>>> {
    parse_path_loss_samples(&fs::read_to_string(path)?)
}

pub fn write_path_loss_samples<W: Write>(samples: &[PathLossSample<f64>], mut out: W) -> Result<()> {
    writeln!(out, "{}", PATH_LOSS_HEADER.join(","))?;
    for s in samples {
        writeln!(out, "{:.6},{:.6}", s.distance_m, s.path_loss_db)?;
    }
    Ok(())
}
