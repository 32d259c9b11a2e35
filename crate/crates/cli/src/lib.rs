//! Library side of the `corrdyn` command-line tool: config file parsing, CSV
//! and manifest emission, the oracle-verification driver, and transition
//! queries. `main.rs` only maps these to exit codes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use corrdyn_core::{
    equivalence_deviation, sweep, BellDiagonalParams, BipartitionLabel, ChannelKind,
    Error as CoreError, InitialState, MeasureKind, OptimizerSettings, SweepConfig, Trajectory,
    TransitionKind,
};

/// Failures classified by exit code: config errors exit 1, state-validation
/// errors exit 2.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    State(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::State(_) => 2,
            CliError::Io(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::State(m) | CliError::Io(m) => m,
        }
    }
}

fn classify(error: CoreError) -> CliError {
    match &error {
        CoreError::BadSweepConfig { .. } => CliError::Config(error.to_string()),
        CoreError::SweepRow { .. } => CliError::State(error.to_string()),
        CoreError::NotHermitian { .. }
        | CoreError::TraceNotOne { .. }
        | CoreError::NotPositive { .. }
        | CoreError::BellParamsNotPositive { .. }
        | CoreError::BadNormalizationCoefficient { .. }
        | CoreError::ParameterOutOfRange { .. } => CliError::State(error.to_string()),
        _ => CliError::Config(error.to_string()),
    }
}

fn default_p_points() -> usize {
    101
}

/// On-disk sweep configuration (JSON).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFileConfig {
    pub channel: ChannelKind,
    pub initial: InitialState,
    #[serde(default = "default_p_points")]
    pub p_points: usize,
    pub partitions: Vec<BipartitionLabel>,
    /// Omitted means every measure.
    #[serde(default)]
    pub measures: Option<Vec<MeasureKind>>,
    pub out_dir: PathBuf,
    #[serde(default)]
    pub optimizer: Option<OptimizerSettings>,
}

impl SweepFileConfig {
    pub fn to_sweep_config(&self) -> Result<SweepConfig, CliError> {
        if self.p_points == 0 {
            return Err(CliError::Config("p_points must be at least 1".into()));
        }
        let measures = match &self.measures {
            None => MeasureKind::ALL.to_vec(),
            Some(list) if list.is_empty() => {
                return Err(CliError::Config("measures list is empty".into()))
            }
            Some(list) => list.clone(),
        };
        if self.partitions.is_empty() {
            return Err(CliError::Config("partitions list is empty".into()));
        }
        Ok(SweepConfig {
            channel: self.channel,
            initial: self.initial.clone(),
            p_grid: SweepConfig::uniform_grid(self.p_points),
            partitions: self.partitions.clone(),
            measures,
            optimizer: self.optimizer,
        })
    }
}

/// Tolerances echoed into the manifest; values from `corrdyn_core::tol`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceSet {
    pub hermiticity: f64,
    pub trace_one: f64,
    pub psd_clamp: f64,
    pub oracle_match: f64,
    pub correlation_clamp: f64,
    pub csv_identity: f64,
    pub transition_interval: f64,
}

impl Default for ToleranceSet {
    fn default() -> Self {
        use corrdyn_core::tol;
        Self {
            hermiticity: tol::HERMITICITY,
            trace_one: tol::TRACE_ONE,
            psd_clamp: tol::PSD_CLAMP,
            oracle_match: tol::ORACLE_MATCH,
            correlation_clamp: tol::CORRELATION_CLAMP,
            csv_identity: tol::CSV_IDENTITY,
            transition_interval: tol::TRANSITION_INTERVAL,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputFile {
    pub partition: String,
    pub path: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub config: SweepFileConfig,
    pub tolerances: ToleranceSet,
    pub duration_seconds: f64,
    pub outputs: Vec<OutputFile>,
}

/// 12 significant digits, scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

pub const CSV_COLUMNS: [&str; 8] = [
    "p",
    "mutual_info",
    "classical_two_side",
    "quantum_two_side",
    "discord",
    "classical_hv",
    "concurrence",
    "negativity",
];

fn trajectory_csv(trajectory: &Trajectory) -> String {
    let mut out = String::new();
    out.push_str(&CSV_COLUMNS.join(","));
    out.push('\n');
    for (p, report) in &trajectory.rows {
        let mut cells = vec![format_value(*p)];
        for measure in MeasureKind::ALL {
            cells.push(report.value(measure).map(format_value).unwrap_or_default());
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Write via a temp file and rename so partial output never lands.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    let io_err = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut file = fs::File::create(&tmp).map_err(io_err)?;
    file.write_all(contents.as_bytes()).map_err(io_err)?;
    file.sync_all().map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

/// Execute a sweep config file: one CSV per partition plus `manifest.json`.
pub fn run_sweep(config_path: &Path) -> Result<RunManifest, CliError> {
    let started = Instant::now();
    let text = fs::read_to_string(config_path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", config_path.display())))?;
    let file_config: SweepFileConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid config JSON: {e}")))?;
    let sweep_config = file_config.to_sweep_config()?;

    let trajectories = sweep(&sweep_config).map_err(classify)?;

    fs::create_dir_all(&file_config.out_dir)
        .map_err(|e| CliError::Io(format!("cannot create out_dir: {e}")))?;
    let mut outputs = Vec::new();
    for trajectory in &trajectories {
        let path = file_config
            .out_dir
            .join(format!("{}.csv", trajectory.partition.as_str()));
        write_atomic(&path, &trajectory_csv(trajectory))?;
        outputs.push(OutputFile {
            partition: trajectory.partition.as_str().to_string(),
            path: path.display().to_string(),
        });
    }

    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: file_config.clone(),
        tolerances: ToleranceSet::default(),
        duration_seconds: started.elapsed().as_secs_f64(),
        outputs,
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Io(format!("manifest serialization: {e}")))?;
    write_atomic(&file_config.out_dir.join("manifest.json"), &manifest_json)?;
    Ok(manifest)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub channel: Option<ChannelKind>,
    pub tolerance: f64,
    pub seed: u64,
    pub draws: usize,
    pub p_points: usize,
    /// Test mode: negate one entry of the named (channel, partition) closed
    /// form so the mismatch path can be exercised.
    pub inject_fault: Option<(ChannelKind, BipartitionLabel)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            channel: None,
            tolerance: corrdyn_core::tol::ORACLE_MATCH,
            seed: 7,
            draws: 10,
            p_points: 11,
            inject_fault: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRow {
    pub channel: String,
    pub partition: String,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub seed: u64,
    pub draws: usize,
    pub p_points: usize,
    pub checks: Vec<CheckRow>,
    pub all_pass: bool,
}

/// Run the oracle-equivalence suite: numeric dilation + partial trace versus
/// the closed-form reduced matrices, over random Bell-diagonal draws and a
/// uniform p grid.
pub fn run_verify(options: &VerifyOptions) -> VerifyReport {
    let mut rng = corrdyn_core::rng::SplitMix64::new(options.seed);
    let params: Vec<BellDiagonalParams> = (0..options.draws)
        .map(|_| rng.bell_diagonal_params())
        .collect();
    let p_grid = SweepConfig::uniform_grid(options.p_points);

    let kinds: Vec<ChannelKind> = match options.channel {
        Some(kind) => vec![kind],
        None => ChannelKind::ALL.to_vec(),
    };

    let mut checks = Vec::new();
    for &kind in &kinds {
        for part in BipartitionLabel::ALL {
            let mut worst: f64 = 0.0;
            for c in &params {
                for &p in &p_grid {
                    let deviation = if options.inject_fault == Some((kind, part)) {
                        faulted_deviation(kind, part, c, p)
                    } else {
                        equivalence_deviation(kind, part, c, p)
                    }
                    .expect("valid draw and p");
                    worst = worst.max(deviation);
                }
            }
            checks.push(CheckRow {
                channel: kind.as_str().to_string(),
                partition: part.as_str().to_string(),
                max_deviation: worst,
                pass: worst <= options.tolerance,
            });
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        tolerance: options.tolerance,
        seed: options.seed,
        draws: options.draws,
        p_points: options.p_points,
        checks,
        all_pass,
    }
}

fn faulted_deviation(
    kind: ChannelKind,
    part: BipartitionLabel,
    c: &BellDiagonalParams,
    p: f64,
) -> corrdyn_core::Result<f64> {
    let mut closed = corrdyn_core::closed_form_reduced(kind, part, c, p)?
        .matrix()
        .clone();
    let flipped = -closed.get(0, 0);
    closed.set(0, 0, flipped);
    let numeric = corrdyn_core::evolve_and_extract(kind, part, c, p)?;
    Ok(closed.max_abs_diff(numeric.matrix()))
}

#[derive(Debug, Clone)]
pub struct TransitionQuery {
    pub channel: ChannelKind,
    pub alpha: f64,
    pub partition: BipartitionLabel,
    pub event: TransitionKind,
    pub interval: f64,
}

/// Locate the requested sudden death/birth point for a Werner initial state.
pub fn run_transitions(query: &TransitionQuery) -> Result<Option<f64>, CliError> {
    if !(0.0..=1.0).contains(&query.alpha) {
        return Err(CliError::Config(format!(
            "alpha {} outside [0, 1]",
            query.alpha
        )));
    }
    let params =
        BellDiagonalParams::new(-query.alpha, -query.alpha, -query.alpha).map_err(classify)?;
    corrdyn_core::dynamics::find_transition_with(
        query.channel,
        &params,
        query.partition,
        query.event,
        query.interval,
    )
    .map_err(classify)
}
