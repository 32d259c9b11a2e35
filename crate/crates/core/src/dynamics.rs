//! Parameter sweeps over p, bipartition extraction, correlation trajectories,
//! sudden death/birth detection, and the operational (extremization-free)
//! correlation measures.

use serde::{Deserialize, Serialize};

use crate::channels::{apply_local_channels, dilate_and_evolve_global, make_channel, ChannelKind};
use crate::error::{Error, Result};
use crate::measures::{
    classical_correlation_hv_with, concurrence_general, mutual_information, negativity,
    two_side_classical_with, MeasurementBasis, MeasuredSide,
};
use crate::optim::OptimizerSettings;
use crate::oracles::BipartitionLabel;
use crate::states::{
    bell_diagonal_state, general_two_qubit_state, werner_state, BellDiagonalParams,
    GeneralTwoQubitParams,
};
use crate::tensor::{partial_trace, DensityMatrix};
use crate::tol;

/// Initial two-qubit state accepted by sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    Werner(f64),
    BellDiagonal([f64; 3]),
    General(Box<GeneralTwoQubitParams>),
}

impl InitialState {
    pub fn build(&self) -> Result<DensityMatrix> {
        match self {
            InitialState::Werner(alpha) => werner_state(*alpha),
            InitialState::BellDiagonal([c1, c2, c3]) => {
                bell_diagonal_state(&BellDiagonalParams::new(*c1, *c2, *c3)?)
            }
            InitialState::General(params) => general_two_qubit_state(params),
        }
    }
}

/// Names of the per-row correlation outputs; also the CSV column names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    MutualInfo,
    ClassicalTwoSide,
    QuantumTwoSide,
    Discord,
    ClassicalHv,
    Concurrence,
    Negativity,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 7] = [
        MeasureKind::MutualInfo,
        MeasureKind::ClassicalTwoSide,
        MeasureKind::QuantumTwoSide,
        MeasureKind::Discord,
        MeasureKind::ClassicalHv,
        MeasureKind::Concurrence,
        MeasureKind::Negativity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureKind::MutualInfo => "mutual_info",
            MeasureKind::ClassicalTwoSide => "classical_two_side",
            MeasureKind::QuantumTwoSide => "quantum_two_side",
            MeasureKind::Discord => "discord",
            MeasureKind::ClassicalHv => "classical_hv",
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::Negativity => "negativity",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

/// The maximizing bases found by the optimizers, where applicable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct OptimizerArgs {
    pub hv_basis: Option<MeasurementBasis>,
    pub two_side_basis_a: Option<MeasurementBasis>,
    pub two_side_basis_b: Option<MeasurementBasis>,
}

/// Correlation quantifiers of one bipartition at one p. Fields are None when
/// the corresponding measure was not requested.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub mutual_info: Option<f64>,
    pub classical_two_side: Option<f64>,
    pub quantum_two_side: Option<f64>,
    pub discord: Option<f64>,
    pub classical_hv: Option<f64>,
    pub concurrence: Option<f64>,
    pub negativity: Option<f64>,
    pub optimizer_args: OptimizerArgs,
}

impl CorrelationReport {
    pub fn value(&self, measure: MeasureKind) -> Option<f64> {
        match measure {
            MeasureKind::MutualInfo => self.mutual_info,
            MeasureKind::ClassicalTwoSide => self.classical_two_side,
            MeasureKind::QuantumTwoSide => self.quantum_two_side,
            MeasureKind::Discord => self.discord,
            MeasureKind::ClassicalHv => self.classical_hv,
            MeasureKind::Concurrence => self.concurrence,
            MeasureKind::Negativity => self.negativity,
        }
    }

    /// Evaluate the requested measures on a two-qubit state. Dependencies
    /// (mutual information for the difference measures) are computed as
    /// needed even when not requested themselves.
    pub fn evaluate(
        rho: &DensityMatrix,
        measures: &[MeasureKind],
        settings: &OptimizerSettings,
    ) -> Result<Self> {
        let wants = |m: MeasureKind| measures.contains(&m);
        let mut report = CorrelationReport::default();

        let needs_mutual = wants(MeasureKind::MutualInfo)
            || wants(MeasureKind::QuantumTwoSide)
            || wants(MeasureKind::Discord);
        let total = if needs_mutual {
            Some(mutual_information(rho)?)
        } else {
            None
        };
        if wants(MeasureKind::MutualInfo) {
            report.mutual_info = total;
        }

        if wants(MeasureKind::ClassicalTwoSide) || wants(MeasureKind::QuantumTwoSide) {
            let (classical, basis_a, basis_b) = two_side_classical_with(rho, settings)?;
            if wants(MeasureKind::ClassicalTwoSide) {
                report.classical_two_side = Some(classical);
            }
            report.optimizer_args.two_side_basis_a = Some(basis_a);
            report.optimizer_args.two_side_basis_b = Some(basis_b);
            if wants(MeasureKind::QuantumTwoSide) {
                let quantum = total.expect("mutual information computed above") - classical;
                assert!(quantum > -tol::CORRELATION_CLAMP);
                report.quantum_two_side = Some(quantum.max(0.0));
            }
        }

        if wants(MeasureKind::ClassicalHv) || wants(MeasureKind::Discord) {
            let (classical, basis) =
                classical_correlation_hv_with(rho, MeasuredSide::B, settings)?;
            if wants(MeasureKind::ClassicalHv) {
                report.classical_hv = Some(classical);
            }
            report.optimizer_args.hv_basis = Some(basis);
            if wants(MeasureKind::Discord) {
                let discord = total.expect("mutual information computed above") - classical;
                assert!(discord > -tol::CORRELATION_CLAMP);
                report.discord = Some(discord.max(0.0));
            }
        }

        if wants(MeasureKind::Concurrence) {
            report.concurrence = Some(concurrence_general(rho)?);
        }
        if wants(MeasureKind::Negativity) {
            report.negativity = Some(negativity(rho, 0)?);
        }
        Ok(report)
    }
}

/// Sweep specification: one channel kind acting on both qubits at the same p.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub channel: ChannelKind,
    pub initial: InitialState,
    pub p_grid: Vec<f64>,
    pub partitions: Vec<BipartitionLabel>,
    pub measures: Vec<MeasureKind>,
    #[serde(default)]
    pub optimizer: Option<OptimizerSettings>,
}

impl SweepConfig {
    /// The default p grid: `points` uniform values covering [0, 1].
    pub fn uniform_grid(points: usize) -> Vec<f64> {
        if points <= 1 {
            return vec![0.0];
        }
        (0..points)
            .map(|i| i as f64 / (points - 1) as f64)
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.partitions.is_empty() {
            return Err(Error::BadSweepConfig {
                reason: "at least one partition is required".into(),
            });
        }
        if self.measures.is_empty() {
            return Err(Error::BadSweepConfig {
                reason: "at least one measure is required".into(),
            });
        }
        if self.p_grid.is_empty() {
            return Err(Error::BadSweepConfig {
                reason: "p grid is empty".into(),
            });
        }
        if !self.p_grid.iter().all(|p| (0.0..=1.0).contains(p)) {
            return Err(Error::BadSweepConfig {
                reason: "p grid has values outside [0, 1]".into(),
            });
        }
        if !self.p_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadSweepConfig {
                reason: "p grid must be strictly increasing".into(),
            });
        }
        Ok(())
    }
}

/// Correlation rows of one bipartition along the p grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub partition: BipartitionLabel,
    pub rows: Vec<(f64, CorrelationReport)>,
}

/// Reduce a validated four-party state to one named pair.
pub fn extract_bipartition(
    global: &DensityMatrix,
    part: BipartitionLabel,
) -> Result<DensityMatrix> {
    if global.dims() != [2, 2, 2, 2] {
        return Err(Error::WrongDimension {
            expected: 16,
            dim: global.dim(),
        });
    }
    partial_trace(global, &part.keep_indices())
}

/// Evolve the initial state across the p grid and evaluate the requested
/// measures on every requested bipartition.
pub fn sweep(config: &SweepConfig) -> Result<Vec<Trajectory>> {
    config.validate()?;
    let settings = config.optimizer.unwrap_or_default();
    let initial = config.initial.build()?;

    let mut trajectories: Vec<Trajectory> = config
        .partitions
        .iter()
        .map(|&partition| Trajectory {
            partition,
            rows: Vec::with_capacity(config.p_grid.len()),
        })
        .collect();

    for &p in &config.p_grid {
        let attach = |e: Error| Error::SweepRow {
            p,
            source: Box::new(e),
        };
        let channel = make_channel(config.channel, p).map_err(attach)?;
        // Validation of trace and positivity happens inside the dilation.
        let global = dilate_and_evolve_global(&initial, &channel, &channel).map_err(attach)?;
        for trajectory in &mut trajectories {
            let reduced = extract_bipartition(&global, trajectory.partition).map_err(attach)?;
            let report =
                CorrelationReport::evaluate(&reduced, &config.measures, &settings).map_err(attach)?;
            trajectory.rows.push((p, report));
        }
    }
    Ok(trajectories)
}

/// Which entanglement transition to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionKind {
    Death,
    Birth,
}

/// Signed pre-max concurrence quantity: positive iff the state is entangled.
/// X-form states use the closed Lambda expressions; anything else falls back
/// to the Wootters difference.
fn concurrence_sign_function(rho: &DensityMatrix) -> Result<f64> {
    let mut is_x = true;
    'outer: for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 && rho.get(i, j).norm() >= tol::X_FORM {
                is_x = false;
                break 'outer;
            }
        }
    }
    if is_x {
        let lambda_1 =
            rho.get(0, 3).norm() - (rho.get(1, 1).re * rho.get(2, 2).re).max(0.0).sqrt();
        let lambda_2 =
            rho.get(1, 2).norm() - (rho.get(0, 0).re * rho.get(3, 3).re).max(0.0).sqrt();
        Ok(lambda_1.max(lambda_2))
    } else {
        let yy = crate::tensor::kron(&crate::states::pauli(2), &crate::states::pauli(2));
        let flipped = yy.mul(&rho.matrix().conjugate()).mul(&yy);
        let root = crate::eig::psd_sqrt(rho.matrix())?;
        let mut product = root.mul(&flipped).mul(&root);
        product.hermitize_mut();
        let eigen = crate::eig::hermitian_eigen(&product)?;
        let lambdas: Vec<f64> = eigen.values.iter().rev().map(|&x| x.max(0.0).sqrt()).collect();
        Ok(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3])
    }
}

/// Locate the sudden death (last entangled-to-separable crossing) or sudden
/// birth (first separable-to-entangled crossing) of the partition's
/// concurrence. `Ok(None)` means no transition inside [0, 1].
pub fn find_transition(
    kind: ChannelKind,
    initial: &BellDiagonalParams,
    partition: BipartitionLabel,
    direction: TransitionKind,
) -> Result<Option<f64>> {
    find_transition_with(kind, initial, partition, direction, tol::TRANSITION_INTERVAL)
}

/// [`find_transition`] with an explicit bisection interval tolerance.
pub fn find_transition_with(
    kind: ChannelKind,
    initial: &BellDiagonalParams,
    partition: BipartitionLabel,
    direction: TransitionKind,
    interval: f64,
) -> Result<Option<f64>> {
    let state = bell_diagonal_state(initial)?;
    let sign_at = |p: f64| -> Result<f64> {
        let channel = make_channel(kind, p)?;
        let global = dilate_and_evolve_global(&state, &channel, &channel)?;
        concurrence_sign_function(&extract_bipartition(&global, partition)?)
    };

    const SCAN_POINTS: usize = 1001;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| i as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&p| sign_at(p)).collect::<Result<_>>()?;

    let crossing = match direction {
        TransitionKind::Death => {
            let candidate = (0..SCAN_POINTS - 1)
                .rev()
                .find(|&i| values[i] > 0.0 && values[i + 1] <= 0.0);
            // An endpoint that only touches zero is not a death event.
            candidate.filter(|&i| values[i + 1..].iter().any(|&v| v < 0.0))
        }
        TransitionKind::Birth => {
            (0..SCAN_POINTS - 1).find(|&i| values[i] <= 0.0 && values[i + 1] > 0.0)
        }
    };
    let Some(index) = crossing else {
        return Ok(None);
    };

    let (mut lo, mut hi) = (grid[index], grid[index + 1]);
    while hi - lo > interval {
        let mid = 0.5 * (lo + hi);
        let value = sign_at(mid)?;
        let entangled_side = match direction {
            TransitionKind::Death => value > 0.0,
            TransitionKind::Birth => value <= 0.0,
        };
        if entangled_side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Operational pair (Q, C): C is the mutual information of the fully
/// decohered (p = 1) state, Q the drop from the initial mutual information.
pub fn operational_measures(rho_ab: &DensityMatrix, kind: ChannelKind) -> Result<(f64, f64)> {
    let channel = make_channel(kind, 1.0)?;
    let decohered = apply_local_channels(rho_ab, &channel, &channel)?;
    let classical = mutual_information(&decohered)?;
    let quantum = mutual_information(rho_ab)? - classical;
    Ok((quantum.max(0.0), classical))
}
