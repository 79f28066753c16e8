use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn omnisynth(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omnisynth"))
        .current_dir(dir)
        .env_remove("OMNISYNTH_OUT_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn verify_passes_on_clean_build() {
    let tmp = TempDir::new().unwrap();
    let o = omnisynth(tmp.path(), &["verify", "--json", "report.json"]);
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{out}");
    assert!(!out.contains("FAIL"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("report.json")).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn fit_recovers_free_space_exponent() {
    let tmp = TempDir::new().unwrap();
    let fspl1 = 20.0 * (4.0 * std::f64::consts::PI * 28e9 / 299_792_458.0_f64).log10();
    let mut csv = String::from("distance_m,path_loss_db\n");
    for d in [2.0_f64, 5.0, 13.0, 40.0, 110.0, 300.0] {
        csv += &format!("{d},{:.9}\n", fspl1 + 20.0 * d.log10());
    }
    fs::write(tmp.path().join("pl.csv"), csv).unwrap();
    let o = omnisynth(tmp.path(), &["fit", "pl.csv", "--model", "ci", "--d0", "1", "--freq", "28"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("fit.json")).unwrap()).unwrap();
    assert_eq!(v["model"], "ci");
    assert_eq!(format!("{:.2}", v["ple_n"].as_f64().unwrap()), "2.00");
}

#[test]
fn fit_ci_without_frequency_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("pl.csv"), "distance_m,path_loss_db\n10,80\n100,110\n").unwrap();
    assert_eq!(code(&omnisynth(tmp.path(), &["fit", "pl.csv", "--model", "ci"])), 1);
}

#[test]
fn three_pointing_pattern_peak() {
    let tmp = TempDir::new().unwrap();
    let o = omnisynth(
        tmp.path(),
        &["pattern", "--az-hpbw", "10", "--pointings", "-10,0,10", "--step", "0.01", "-o", "g.csv"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(tmp.path().join("g.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("az_deg,el_deg,gain_db"));
    let peak = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((peak - 0.25).abs() <= 0.1, "peak {peak}");
}

#[test]
fn simulate_needs_a_seed_and_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&omnisynth(tmp.path(), &["simulate", "--count", "2"])), 1);

    let args = ["simulate", "--seed", "11", "--count", "3", "--rx", "narrow", "--rx-planes", "-20,0,20"];
    let a = omnisynth(tmp.path(), &[&args[..], &["-o", "a.csv"]].concat());
    let b = omnisynth(tmp.path(), &[&args[..], &["-o", "b.csv"]].concat());
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(code(&b), 0);
    let fa = fs::read(tmp.path().join("a.csv")).unwrap();
    assert_eq!(fa, fs::read(tmp.path().join("b.csv")).unwrap());
    assert!(String::from_utf8_lossy(&fa).contains("# campaign: simulated, seed 11"));
}

#[test]
fn simulate_synthesize_fit_pipeline() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(code(&omnisynth(d, &["simulate", "--seed", "3", "--count", "6", "--sigma", "0"])), 0);
    let o = omnisynth(d, &["synthesize", "measurements.csv", "--no-floor", "--path-loss-csv", "pl.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = omnisynth(d, &["fit", "pl.csv", "--model", "ci", "--freq", "28"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("fit.json")).unwrap()).unwrap();
    // noiseless channels drawn around n = 3.4; distances are rounded to 6 decimals in the CSV
    assert!((v["ple_n"].as_f64().unwrap() - 3.4).abs() < 1e-6, "{v}");

    let o = omnisynth(d, &["planes", "measurements.csv", "--no-floor"]);
    assert_eq!(code(&o), 0);
    let p: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("planes.json")).unwrap()).unwrap();
    assert_eq!(p.as_array().unwrap().len(), 6);
}

#[test]
fn out_dir_comes_from_the_environment() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("pl.csv"), "distance_m,path_loss_db\n10,80\n100,110\n1000,141\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_omnisynth"))
        .current_dir(tmp.path())
        .env("OMNISYNTH_OUT_DIR", "results")
        .args(["fit", "pl.csv", "--model", "fi"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(tmp.path().join("results/fit.json").exists());
}

#[test]
fn malformed_measurements_are_data_errors() {
    let tmp = TempDir::new().unwrap();
    fs::write(
        tmp.path().join("m.csv"),
        "tx_az,tx_el,rx_az,rx_el,pr_dbm,gt_dbi,gr_dbi,pt_dbm,dist_m\n0,0,0,0,,24.5,24.5,30,100\n",
    )
    .unwrap();
    let o = omnisynth(tmp.path(), &["synthesize", "m.csv"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("column 5"), "{err}");
}

#[test]
fn unknown_flags_and_subcommands_are_usage_errors() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&omnisynth(tmp.path(), &["frobnicate"])), 1);
    assert_eq!(code(&omnisynth(tmp.path(), &["verify", "--loud"])), 1);
    assert_eq!(code(&omnisynth(tmp.path(), &["--help"])), 0);
}
