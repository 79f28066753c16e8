use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{check_header, parse_record};
use crate::antenna::Pointing;
use crate::sweep::DirectionalMeasurement;
use crate::{Error, Result};

pub const MEASUREMENT_HEADER: [&str; 9] = [
    "tx_az", "tx_el", "rx_az", "rx_el", "pr_dbm", "gt_dbi", "gr_dbi", "pt_dbm", "dist_m",
];

/// Free-form description carried in `# key: value` lines above the header.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasurementMetadata {
    pub campaign: Option<String>,
    pub frequency_ghz: Option<f64>,
    pub tx_antenna: Option<String>,
    pub rx_antenna: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasurementFile {
    pub records: Vec<DirectionalMeasurement<f64>>,
    pub metadata: MeasurementMetadata,
}

fn apply_meta(meta: &mut MeasurementMetadata, line: &str, line_no: u64) -> Result<()> {
    let body = line.trim_start_matches('#').trim();
    let Some((key, value)) = body.split_once(':') else {
        return Ok(());
    };
    let value = value.trim();
    match key.trim() {
        "campaign" => meta.campaign = Some(value.to_string()),
        "frequency_ghz" => {
            meta.frequency_ghz = Some(value.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: 1,
                message: format!("frequency_ghz is not a number: `{value}`"),
            })?)
        }
        "tx_antenna" => meta.tx_antenna = Some(value.to_string()),
        "rx_antenna" => meta.rx_antenna = Some(value.to_string()),
        _ => {}
    }
    Ok(())
}

/// Parses measurement CSV text. Line numbers in errors count from 1 and
/// include metadata lines; columns count from 1.
pub fn parse_measurements(text: &str) -> Result<MeasurementFile> {
    let mut metadata = MeasurementMetadata::default();
    let mut skipped = 0u64;
    let mut body_start = 0usize;
    for line in text.split_inclusive('\n') {
        let t = line.trim();
        if t.starts_with('#') {
            apply_meta(&mut metadata, t, skipped + 1)?;
        } else if !t.is_empty() {
            break;
        }
        skipped += 1;
        body_start += line.len();
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(&text.as_bytes()[body_start..]);
    let mut rows = reader.records();
    let header = match rows.next() {
        Some(h) => h?,
        None => {
            return Err(Error::Parse {
                line: skipped + 1,
                column: 1,
                message: "missing header".into(),
            })
        }
    };
    let header_line = skipped + header.position().map_or(1, |p| p.line());
    check_header(&header, &MEASUREMENT_HEADER, header_line)?;

    let mut records = Vec::new();
    let mut pt_by_distance: BTreeMap<u64, f64> = BTreeMap::new();
    for row in rows {
        let row = row?;
        let line = skipped + row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row.get(0).is_some_and(str::is_empty) {
            continue;
        }
        let v = parse_record(&row, &MEASUREMENT_HEADER, line)?;
        for (i, x) in v.iter().enumerate() {
            // pr_dbm = -inf marks a pointing pair that received nothing
            let allowed = x.is_finite() || (i == 4 && *x == f64::NEG_INFINITY);
            if !allowed {
                return Err(Error::Parse {
                    line,
                    column: i + 1,
                    message: format!("`{}` must be finite", MEASUREMENT_HEADER[i]),
                });
            }
        }
        if v[8] <= 0.0 {
            return Err(Error::Parse {
                line,
                column: 9,
                message: format!("distance must be positive, got {}", v[8]),
            });
        }
        let pt = *pt_by_distance.entry(v[8].to_bits()).or_insert(v[7]);
        if pt != v[7] {
            return Err(Error::Parse {
                line,
                column: 8,
                message: format!("pt_dbm {} differs from {} used earlier at {} m", v[7], pt, v[8]),
            });
        }
        records.push(DirectionalMeasurement {
            tx_point: Pointing::new(v[0], v[1]),
            rx_point: Pointing::new(v[2], v[3]),
            pr_dbm: v[4],
            gt_dbi: v[5],
            gr_dbi: v[6],
            pt_dbm: v[7],
            tr_separation_m: v[8],
            below_floor: v[4] == f64::NEG_INFINITY,
        });
    }
    Ok(MeasurementFile { records, metadata })
}

pub fn read_measurements(path: impl AsRef<Path>) -> Result<MeasurementFile> {
    parse_measurements(&fs::read_to_string(path)?)
}

pub fn write_measurements<W: Write>(file: &MeasurementFile, mut out: W) -> Result<()> {
    let m = &file.metadata;
    if let Some(c) = &m.campaign {
        writeln!(out, "# campaign: {c}")?;
    }
    if let Some(f) = m.frequency_ghz {
        writeln!(out, "# frequency_ghz: {f}")?;
    }
    if let Some(a) = &m.tx_antenna {
        writeln!(out, "# tx_antenna: {a}")?;
    }
    if let Some(a) = &m.rx_antenna {
        writeln!(out, "# rx_antenna: {a}")?;
    }
    writeln!(out, "{}", MEASUREMENT_HEADER.join(","))?;
    for r in &file.records {
        writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.tx_point.az,
            r.tx_point.el,
            r.rx_point.az,
            r.rx_point.el,
            r.pr_dbm,
            r.gt_dbi,
            r.gr_dbi,
            r.pt_dbm,
            r.tr_separation_m
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "tx_az,tx_el,rx_az,rx_el,pr_dbm,gt_dbi,gr_dbi,pt_dbm,dist_m\n";

    #[test]
    fn single_row() {
        let f = parse_measurements(&format!("{HEADER}140,-10,32,0,-65.4,24.5,15,30.1,82\n")).unwrap();
        assert_eq!(f.records.len(), 1);
        let r = f.records[0];
        assert_eq!(r.rx_point, Pointing::new(32.0, 0.0));
        assert_eq!(r.gr_dbi, 15.0);
        assert!(!r.below_floor);
    }

    #[test]
    fn missing_pr_names_line_and_column() {
        let e = parse_measurements(&format!("{HEADER}140,-10,32,0,,24.5,15,30.1,82\n")).unwrap_err();
        match e {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 5)),
            other => panic!("{other}"),
        }
        let e = parse_measurements(&format!("{HEADER}140,-10,32,0\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 5, .. }), "{e}");
    }

    #[test]
    fn metadata_lines_shift_line_numbers() {
        let text = format!("# campaign: nyc\n# frequency_ghz: 28\n{HEADER}1,2,3,4,x,6,7,8,9\n");
        let e = parse_measurements(&text).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, column: 5, .. }), "{e}");
        let ok = parse_measurements(&format!("# campaign: nyc\n# frequency_ghz: 28\n{HEADER}")).unwrap();
        assert_eq!(ok.metadata.campaign.as_deref(), Some("nyc"));
        assert_eq!(ok.metadata.frequency_ghz, Some(28.0));
    }

    #[test]
    fn bad_rows() {
        let e = parse_measurements(&format!("{HEADER}1,2,3,4,5,6,7,8,0\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 9, .. }));
        let e = parse_measurements(&format!("{HEADER}1,2,3,4,5,6,7,8,10\n1,2,3,4,5,6,7,9,10\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 8, .. }));
        let e = parse_measurements("tx_az,tx_el,rx_az,rx_el,pr,gt_dbi,gr_dbi,pt_dbm,dist_m\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 5, .. }));
        let e = parse_measurements(&format!("{HEADER}1,2,3,4,5,6,7,8,10,11\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 10, .. }));
    }

    #[test]
    fn empty_cells_round_trip() {
        let f = parse_measurements(&format!("{HEADER}0,0,0,0,-inf,10,10,30,50\n")).unwrap();
        assert!(f.records[0].below_floor);
        let mut buf = Vec::new();
        write_measurements(&f, &mut buf).unwrap();
        let back = parse_measurements(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
