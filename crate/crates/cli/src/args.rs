use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "omnisynth", version, about = "Omnidirectional path loss from directional sweeps")]
pub struct Cli {
    /// Directory for artifacts written without an explicit --output.
    #[arg(long, global = true, env = "OMNISYNTH_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Combined gain map of a horn pattern over a set of pointings (CSV).
    Pattern(PatternArgs),
    /// Random channels swept with emulated horns (measurement CSV).
    Simulate(SimulateArgs),
    /// Omnidirectional power and path loss per T-R separation (JSON).
    Synthesize(SynthesizeArgs),
    /// CI or FI path-loss fit (JSON).
    Fit(FitArgs),
    /// Strongest RX elevation plane ratio per T-R separation (JSON).
    Planes(PlanesArgs),
    /// Built-in table and reference-constant checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    /// Azimuth HPBW, degrees.
    #[arg(long)]
    pub az_hpbw: f64,
    /// Elevation HPBW, degrees [default: azimuth HPBW].
    #[arg(long)]
    pub el_hpbw: Option<f64>,
    /// Boresight gain, dBi.
    #[arg(long, default_value_t = 0.0)]
    pub gain: f64,
    /// Pointings as `az[:el]`, comma separated, degrees.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    pub pointings: Vec<String>,
    /// Half-width of the azimuth grid [default: pointing span + 2 HPBW].
    #[arg(long)]
    pub az_half: Option<f64>,
    /// Half-height of the elevation grid; 0 gives an azimuth cut
    /// [default: 0 if every pointing is at 0 deg, else span + 2 HPBW].
    #[arg(long)]
    pub el_half: Option<f64>,
    /// Grid step, degrees.
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sector,
    Weighted,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// RNG seed (required: every run is reproducible).
    #[arg(long)]
    pub seed: u64,
    /// Number of channels (one per T-R separation).
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 30.0)]
    pub d_min: f64,
    #[arg(long, default_value_t = 200.0)]
    pub d_max: f64,
    #[arg(long, default_value_t = 25)]
    pub mpcs: usize,
    /// Path loss exponent the channel powers are drawn around.
    #[arg(long, default_value_t = 3.4)]
    pub ple: f64,
    /// Shadowing, dB.
    #[arg(long, default_value_t = 9.7)]
    pub sigma: f64,
    #[arg(long, default_value_t = 28.0)]
    pub freq: f64,
    /// TX antenna: narrow, wide, e73, or `gain/az_hpbw/el_hpbw`.
    #[arg(long, default_value = "wide")]
    pub tx: String,
    /// RX antenna: narrow, wide, e73, or `gain/az_hpbw/el_hpbw`.
    #[arg(long, default_value = "wide")]
    pub rx: String,
    /// TX elevation planes, or `full` for a full-sphere sweep.
    #[arg(long, default_value = "full", allow_hyphen_values = true)]
    pub tx_planes: String,
    /// RX elevation planes, or `full` for a full-sphere sweep.
    #[arg(long, default_value = "full", allow_hyphen_values = true)]
    pub rx_planes: String,
    #[arg(long, value_enum, default_value_t = Mode::Sector)]
    pub mode: Mode,
    /// Transmit power, dBm.
    #[arg(long, default_value_t = 30.1, allow_hyphen_values = true)]
    pub pt: f64,
    /// Also write each channel and its power delay profile.
    #[arg(long)]
    pub write_channels: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FloorArgs {
    /// Gain-removed noise floor, dBm.
    #[arg(long, default_value_t = -100.0, allow_hyphen_values = true)]
    pub floor: f64,
    /// Keep every sample regardless of level.
    #[arg(long, conflicts_with = "floor")]
    pub no_floor: bool,
}

impl FloorArgs {
    pub fn floor(&self) -> Option<f64> {
        (!self.no_floor).then_some(self.floor)
    }
}

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    /// Measurement CSV.
    pub input: PathBuf,
    #[command(flatten)]
    pub floor: FloorArgs,
    /// Also write `distance_m,path_loss_db` for `fit`.
    #[arg(long)]
    pub path_loss_csv: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Ci,
    Fi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sigma {
    Population,
    Sample,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Path-loss CSV (`distance_m,path_loss_db`).
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub model: Model,
    /// Close-in reference distance, m.
    #[arg(long, default_value_t = 1.0)]
    pub d0: f64,
    /// Carrier frequency, GHz (CI only).
    #[arg(long)]
    pub freq: Option<f64>,
    #[arg(long, value_enum, default_value_t = Sigma::Population)]
    pub sigma: Sigma,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlanesArgs {
    /// Measurement CSV.
    pub input: PathBuf,
    #[command(flatten)]
    pub floor: FloorArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Also write the full report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}
