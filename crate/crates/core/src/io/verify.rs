//! Fixture and reference-constant checks behind the `verify` subcommand.

use serde::Serialize;

use super::fixtures::{
    recomputed_delta_pr, table_i_file, table_i_measurements, RxAntenna, NARROWBEAM_28GHZ,
    TABLE_I, TABLE_II, TABLE_I_EIRP_SUM_DB, WIDEBEAM_28GHZ,
};
use crate::antenna::{
    beam_power_ratio_db, combine_patterns, make_pattern, ripple, solve_beamwidth_param,
    integrate_beam, AngularGrid, AngularRegion, CombinedBeam, Pointing, DEFAULT_REL_TOL,
};
use crate::pathloss::fspl;
use crate::sweep::synthesize_omni;
use crate::units::linear_to_db;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub expected: String,
}

/// Reported alongside the checks but not judged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    pub observations: Vec<Observation>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn within(&mut self, name: &str, value: f64, target: f64, tol: f64) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed: (value - target).abs() <= tol,
            value,
            expected: format!("{target} +- {tol}"),
        });
    }

    fn holds(&mut self, name: &str, passed: bool, value: f64, expected: &str) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed,
            value,
            expected: expected.into(),
        });
    }

    fn observe(&mut self, name: &str, value: f64) {
        self.observations.push(Observation {
            name: name.into(),
            value,
        });
    }
}

/// 3 azimuth pointings, 10 deg HPBW, spaced one HPBW: (peak dB over
/// boresight, ripple dB over +-HPBW).
pub fn three_pointing_flatness() -> Result<(f64, f64)> {
    let p = make_pattern(0.0, 10.0, 10.0)?;
    let pts: Vec<_> = [-10.0, 0.0, 10.0].iter().map(|&a| Pointing::new(a, 0.0)).collect();
    let grid = AngularGrid::azimuth_cut(20.0, AngularGrid::<f64>::DEFAULT_STEP_DEG)?;
    let map = combine_patterns(&p, &pts, &grid)?;
    let r = ripple(&map, &AngularRegion::symmetric(10.0, 0.0))?;
    Ok((linear_to_db(map.peak()), r))
}

/// 3x3 pointings of a 10/8 deg pattern on an HPBW lattice: (peak dB over
/// boresight, ripple dB over the central +-12 x +-9 deg).
pub fn nine_pointing_flatness() -> Result<(f64, f64)> {
    let beam = CombinedBeam::hpbw_lattice(make_pattern(0.0, 10.0, 8.0)?, 3, 3)?;
    let grid = AngularGrid::symmetric(12.0, 9.0, AngularGrid::<f64>::DEFAULT_STEP_DEG)?;
    let map = combine_patterns(&beam.pattern, &beam.pointings, &grid)?;
    let r = ripple(&map, &AngularRegion::symmetric(12.0, 9.0))?;
    Ok((linear_to_db(map.peak()), r))
}

/// Widebeam over narrowbeam integrated power at equal boresight gain, each
/// over +-3 HPBW, dB.
pub fn wide_over_narrow_db() -> Result<f64> {
    let (_, naz, nel) = NARROWBEAM_28GHZ;
    let (_, waz, wel) = WIDEBEAM_28GHZ;
    let n = make_pattern(0.0, naz, nel)?;
    let w = make_pattern(0.0, waz, wel)?;
    beam_power_ratio_db(&w, (3.0 * waz, 3.0 * wel), &n, (3.0 * naz, 3.0 * nel))
}

/// Nine narrowbeam pointings combined linearly against one widebeam. Each
/// beam is integrated over its own +-3 HPBW window around its own boresight
/// (all windows stay inside +-90 deg elevation, so every narrowbeam
/// contributes the same power), dB.
pub fn nine_narrow_vs_wide_db() -> Result<f64> {
    let (_, naz, nel) = NARROWBEAM_28GHZ;
    let (_, waz, wel) = WIDEBEAM_28GHZ;
    let lattice = CombinedBeam::hpbw_lattice(make_pattern(0.0, naz, nel)?, 3, 3)?;
    let w = make_pattern(0.0, waz, wel)?;
    let tol = DEFAULT_REL_TOL;
    let single = integrate_beam(&lattice.pattern, 3.0 * naz, 3.0 * nel, tol)?;
    let combined = lattice.pointings.len() as f64 * single;
    let wide = integrate_beam(&w, 3.0 * waz, 3.0 * wel, tol)?;
    Ok(linear_to_db(combined / wide))
}

pub fn run_checks() -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();

    rep.within("beamwidth parameter a(10 deg)", solve_beamwidth_param(10.0)?, 5.06, 0.05);
    let (peak3, ripple3) = three_pointing_flatness()?;
    rep.within("3-pointing combined peak, dB", peak3, 0.25, 0.1);
    rep.observe("3-pointing ripple over +-HPBW, dB", ripple3);
    let (peak9, ripple9) = nine_pointing_flatness()?;
    rep.within("3x3 combined peak, dB", peak9, 0.5, 0.15);
    rep.observe("3x3 ripple over +-12 x +-9 deg, dB", ripple9);
    rep.within("widebeam / narrowbeam integrated power, dB", wide_over_narrow_db()?, 9.4, 0.2);
    let d9 = nine_narrow_vs_wide_db()?;
    rep.holds("|3x3 narrowbeam - widebeam|, dB", d9.abs() <= 0.13, d9, "|x| <= 0.13");
    rep.within("FSPL 1 m, 28 GHz, dB", fspl(1.0, 28.0)?, 61.4, 0.05);
    rep.within("FSPL 1 m, 73 GHz, dB", fspl(1.0, 73.0)?, 69.7, 0.05);

    // Table I
    let worst_eirp = TABLE_I
        .iter()
        .flat_map(|r| [r.pl_wide_db + r.pr_wide_dbm, r.pl_narrow_db + r.pr_narrow_dbm])
        .map(|s| (s - TABLE_I_EIRP_SUM_DB).abs())
        .fold(0.0, f64::max);
    rep.holds("Table I PL + Pr = 79.1 dB (worst deviation)", worst_eirp <= 0.05, worst_eirp, "<= 0.05");

    let wide = table_i_file(RxAntenna::Widebeam)?.records;
    let narrow = table_i_file(RxAntenna::Narrowbeam)?.records;
    let worst_delta = TABLE_I
        .iter()
        .zip(wide.iter().zip(&narrow))
        .map(|(r, (w, n))| (recomputed_delta_pr(w, n) - r.delta_pr_db).abs())
        .fold(0.0, f64::max);
    rep.holds("Table I recomputed dPr vs printed (worst)", worst_delta <= 1e-9, worst_delta, "<= 1e-9");

    let max_all_az = TABLE_I
        .iter()
        .zip(wide.iter().zip(&narrow))
        .filter(|(r, _)| r.aoa_az_deg.is_none())
        .map(|(_, (w, n))| recomputed_delta_pr(w, n).abs())
        .fold(0.0, f64::max);
    rep.within("Table I max whole-azimuth |dPr|, dB", max_all_az, 2.9, 1e-9);

    let mut worst_pl: f64 = 0.0;
    for kind in [RxAntenna::Widebeam, RxAntenna::Narrowbeam] {
        for (r, m) in TABLE_I.iter().zip(table_i_measurements(kind)) {
            let printed = match kind {
                RxAntenna::Widebeam => r.pl_wide_db,
                RxAntenna::Narrowbeam => r.pl_narrow_db,
            };
            let pl = synthesize_omni(&[m], None)?.omni_path_loss_db;
            worst_pl = worst_pl.max((pl - printed).abs());
        }
    }
    rep.holds("Table I synthesized PL vs printed (worst)", worst_pl <= 0.05, worst_pl, "<= 0.05");

    // Table II
    let worst_db = TABLE_II
        .iter()
        .map(|r| (10.0 * (r.ratio_percent / 100.0).log10() - r.ratio_db).abs())
        .fold(0.0, f64::max);
    rep.holds("Table II ratio -> dB consistency (worst)", worst_db <= 0.05, worst_db, "<= 0.05");
    let lo = TABLE_II.iter().map(|r| r.ratio_percent).fold(f64::INFINITY, f64::min);
    let hi = TABLE_II.iter().map(|r| r.ratio_percent).fold(0.0, f64::max);
    rep.holds("Table II lowest ratio, whole percent", lo.round() == 72.0, lo, "72 %");
    rep.holds("Table II highest ratio, percent", hi == 95.0, hi, "95.0 %");

    Ok(rep)
}
