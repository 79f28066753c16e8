use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use omnisynth::antenna::{combine_patterns, make_pattern, AngularGrid, Axis};
use omnisynth::channel::{
    compute_pdp, generate_ensemble, log_uniform_distances, PowerMode, DEFAULT_BIN_WIDTH_NS,
};
use omnisynth::io::fixtures::{HORN_73GHZ, NARROWBEAM_28GHZ, WIDEBEAM_28GHZ};
use omnisynth::io::{
    read_measurements, read_path_loss_samples, verify, write_channel, write_measurements,
    write_path_loss_samples, FitReport, MeasurementFile, MeasurementMetadata, PlaneReport,
    SynthesisReport,
};
use omnisynth::pathloss::{fit_ci_with, fit_fi_with, SigmaNormalization};
use omnisynth::sweep::{
    plan_sweep, run_sweep, strongest_plane_ratio, synthesize_omni, ElevationCoverage,
    SweepOptions,
};
use omnisynth::{DirectionalMeasurement, GeneratorConfig, HornPattern, Pointing, SweepPlan};

use crate::args::*;
use crate::Failure;

type Outcome = Result<(), Failure>;

pub fn run(cli: Cli) -> Outcome {
    let out = cli.out_dir.as_path();
    match cli.command {
        Command::Pattern(a) => pattern(out, a),
        Command::Simulate(a) => simulate(out, a),
        Command::Synthesize(a) => synthesize(out, a),
        Command::Fit(a) => fit(out, a),
        Command::Planes(a) => planes(out, a),
        Command::Verify(a) => run_verify(a),
    }
}

/// Explicit paths are taken as given; defaults land in the output directory.
fn target(explicit: Option<PathBuf>, out_dir: &Path, default: &str) -> anyhow::Result<PathBuf> {
    let path = explicit.unwrap_or_else(|| out_dir.join(default));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(path)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_pointing(s: &str) -> Result<Pointing, Failure> {
    let bad = || Failure::Usage(format!("pointing `{s}` is not `az` or `az:el`"));
    let mut parts = s.trim().splitn(2, ':');
    let az = parts.next().and_then(|v| v.trim().parse().ok()).ok_or_else(bad)?;
    let el = match parts.next() {
        Some(v) => v.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    Ok(Pointing::new(az, el))
}

fn antenna(spec: &str) -> Result<HornPattern, Failure> {
    let (g, az, el) = match spec {
        "narrow" => NARROWBEAM_28GHZ,
        "wide" => WIDEBEAM_28GHZ,
        "e73" => HORN_73GHZ,
        other => {
            let v: Vec<f64> = other
                .split('/')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("unknown antenna `{other}`")))?;
            match v[..] {
                [g, az, el] => (g, az, el),
                _ => return Err(Failure::Usage(format!("antenna `{other}` is not gain/az/el"))),
            }
        }
    };
    Ok(make_pattern(g, az, el)?)
}

fn coverage(spec: &str) -> Result<ElevationCoverage<f64>, Failure> {
    if spec.trim() == "full" {
        return Ok(ElevationCoverage::FullSphere);
    }
    spec.split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map(ElevationCoverage::Planes)
        .map_err(|_| Failure::Usage(format!("elevation planes `{spec}` are not `full` or a list")))
}

fn describe(p: &HornPattern) -> String {
    format!(
        "{} dBi horn, {}/{} deg HPBW",
        p.boresight_gain_dbi, p.az_hpbw_deg, p.el_hpbw_deg
    )
}

fn pattern(out_dir: &Path, a: PatternArgs) -> Outcome {
    let el_hpbw = a.el_hpbw.unwrap_or(a.az_hpbw);
    let p = make_pattern(a.gain, a.az_hpbw, el_hpbw)?;
    let pts = a
        .pointings
        .iter()
        .map(|s| parse_pointing(s))
        .collect::<Result<Vec<_>, _>>()?;
    let reach = |vals: &mut dyn Iterator<Item = f64>, hpbw: f64| {
        vals.map(f64::abs).fold(0.0, f64::max) + 2.0 * hpbw
    };
    let az_half = a
        .az_half
        .unwrap_or_else(|| reach(&mut pts.iter().map(|q| q.az), a.az_hpbw));
    let el_half = a.el_half.unwrap_or_else(|| {
        if pts.iter().all(|q| q.el == 0.0) {
            0.0
        } else {
            reach(&mut pts.iter().map(|q| q.el), el_hpbw)
        }
    });
    let az_axis = Axis::new(-az_half, az_half, a.step)?;
    let el_axis = if el_half > 0.0 {
        Axis::new(-el_half, el_half, a.step)?
    } else {
        Axis::point(0.0)
    };
    let map = combine_patterns(&p, &pts, &AngularGrid::new(az_axis, el_axis))?;

    let path = target(a.output, out_dir, "pattern.csv")?;
    let mut f = std::io::BufWriter::new(fs::File::create(&path)?);
    map.write_csv(&mut f)?;
    f.flush()?;
    let over = 10.0 * (map.peak() / p.boresight_gain_linear()).log10();
    println!(
        "wrote {}: a = {:.4}, b = {:.4}, peak {:+.3} dB over boresight",
        path.display(),
        p.a,
        p.b,
        over
    );
    Ok(())
}

fn simulate(out_dir: &Path, a: SimulateArgs) -> Outcome {
    if a.count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let tx = antenna(&a.tx)?;
    let rx = antenna(&a.rx)?;
    let plan = SweepPlan::new(
        plan_sweep(tx.az_hpbw_deg, tx.el_hpbw_deg, &coverage(&a.tx_planes)?)?,
        plan_sweep(rx.az_hpbw_deg, rx.el_hpbw_deg, &coverage(&a.rx_planes)?)?,
    )?;
    let mut cfg = GeneratorConfig::new(a.d_min);
    cfg.mpc_count = a.mpcs;
    cfg.ple = a.ple;
    cfg.sigma_db = a.sigma;
    cfg.carrier_ghz = a.freq;
    let distances = log_uniform_distances(a.count, a.d_min, a.d_max, a.seed)?;
    let channels = generate_ensemble(&cfg, &distances, a.seed)?;

    let mode = match a.mode {
        Mode::Sector => PowerMode::Sector,
        Mode::Weighted => PowerMode::Weighted,
    };
    // the floor is applied when the file is read back, not here
    let opts = SweepOptions::new(a.pt, mode).without_floor();
    let mut records = Vec::with_capacity(plan.pair_count() * channels.len());
    for ch in &channels {
        records.extend(run_sweep(ch, &tx, &rx, &plan, &opts)?);
    }
    let file = MeasurementFile {
        records,
        metadata: MeasurementMetadata {
            campaign: Some(format!("simulated, seed {}, {:?} mode", a.seed, a.mode).to_lowercase()),
            frequency_ghz: Some(a.freq),
            tx_antenna: Some(describe(&tx)),
            rx_antenna: Some(describe(&rx)),
        },
    };
    let path = target(a.output, out_dir, "measurements.csv")?;
    let mut f = std::io::BufWriter::new(fs::File::create(&path)?);
    write_measurements(&file, &mut f)?;
    f.flush()?;

    if a.write_channels {
        let dir = path.parent().unwrap_or(Path::new("."));
        for (i, ch) in channels.iter().enumerate() {
            write_channel(ch, dir.join(format!("channel_{i:03}.csv")))?;
            let pdp = compute_pdp(ch, DEFAULT_BIN_WIDTH_NS)?;
            let mut f = std::io::BufWriter::new(fs::File::create(dir.join(format!("pdp_{i:03}.csv")))?);
            pdp.write_csv(&mut f)?;
            f.flush()?;
        }
    }
    println!(
        "wrote {}: {} channels x {} pointing pairs",
        path.display(),
        channels.len(),
        plan.pair_count()
    );
    Ok(())
}

/// Records grouped by T-R separation, ascending.
fn by_distance(records: Vec<DirectionalMeasurement>) -> Vec<(f64, Vec<DirectionalMeasurement>)> {
    let mut records = records;
    records.sort_by(|a, b| a.tr_separation_m.total_cmp(&b.tr_separation_m));
    let mut groups: Vec<(f64, Vec<DirectionalMeasurement>)> = Vec::new();
    for r in records {
        match groups.last_mut() {
            Some((d, v)) if *d == r.tr_separation_m => v.push(r),
            _ => groups.push((r.tr_separation_m, vec![r])),
        }
    }
    groups
}

fn read_groups(input: &Path) -> anyhow::Result<Vec<(f64, Vec<DirectionalMeasurement>)>> {
    let file = read_measurements(input).with_context(|| format!("reading {}", input.display()))?;
    if file.records.is_empty() {
        anyhow::bail!("{} has no measurements", input.display());
    }
    Ok(by_distance(file.records))
}

fn synthesize(out_dir: &Path, a: SynthesizeArgs) -> Outcome {
    let floor = a.floor.floor();
    let mut groups = Vec::new();
    for (d, recs) in read_groups(&a.input)? {
        groups.push(synthesize_omni(&recs, floor).with_context(|| format!("T-R separation {d} m"))?);
    }
    if let Some(pl_path) = a.path_loss_csv {
        let samples = groups
            .iter()
            .map(|g| omnisynth::PathLossSample::new(g.tr_separation_m, g.omni_path_loss_db))
            .collect::<Result<Vec<_>, _>>()?;
        let pl_path = target(Some(pl_path), out_dir, "")?;
        write_path_loss_samples(&samples, fs::File::create(&pl_path)?)?;
    }
    let path = target(a.output, out_dir, "synthesis.json")?;
    let n = groups.len();
    write_json(&path, &SynthesisReport { groups })?;
    println!("wrote {}: {} T-R separations", path.display(), n);
    Ok(())
}

fn fit(out_dir: &Path, a: FitArgs) -> Outcome {
    let samples = read_path_loss_samples(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let norm = match a.sigma {
        Sigma::Population => SigmaNormalization::Population,
        Sigma::Sample => SigmaNormalization::Sample,
    };
    let report = match a.model {
        Model::Ci => {
            let freq = a
                .freq
                .ok_or_else(|| Failure::Usage("--model ci needs --freq".into()))?;
            FitReport::from(&fit_ci_with(&samples, a.d0, freq, norm)?)
        }
        Model::Fi => FitReport::from(&fit_fi_with(&samples, norm)?),
    };
    let path = target(a.output, out_dir, "fit.json")?;
    write_json(&path, &report)?;
    match &report {
        FitReport::Ci { ple_n, sigma_db, .. } => {
            println!("wrote {}: n = {ple_n:.3}, sigma = {sigma_db:.2} dB", path.display())
        }
        FitReport::Fi { alpha_db, beta, sigma_db, .. } => println!(
            "wrote {}: alpha = {alpha_db:.2} dB, beta = {beta:.3}, sigma = {sigma_db:.2} dB",
            path.display()
        ),
    }
    Ok(())
}

fn planes(out_dir: &Path, a: PlanesArgs) -> Outcome {
    let floor = a.floor.floor();
    let mut reports = Vec::new();
    for (d, recs) in read_groups(&a.input)? {
        let ratio = strongest_plane_ratio(&recs, floor).with_context(|| format!("T-R separation {d} m"))?;
        reports.push(PlaneReport {
            tr_separation_m: d,
            ratio_percent: 100.0 * ratio.ratio,
            ratio,
        });
    }
    let path = target(a.output, out_dir, "planes.json")?;
    write_json(&path, &reports)?;
    for r in &reports {
        println!(
            "{} m: strongest plane {} deg, {:.1} % ({:.2} dB)",
            r.tr_separation_m, r.ratio.strongest_el_deg, r.ratio_percent, r.ratio.ratio_db
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let report = verify::run_checks()?;
    for c in &report.checks {
        println!(
            "{} {}: {} (expected {})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.expected
        );
    }
    for o in &report.observations {
        println!("info {}: {}", o.name, o.value);
    }
    if let Some(p) = a.json {
        let p = target(Some(p), Path::new("."), "")?;
        write_json(&p, &report)?;
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} check(s) failed")));
    }
    println!("all {} checks passed", report.checks.len());
    Ok(())
}
