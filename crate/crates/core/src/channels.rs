//! The five single-qubit noise channels: Kraus sets, operator-sum application
//! on both qubits, and the isometric dilation onto one environment qubit per
//! system qubit.
//!
//! Conventions: q = 1 - p everywhere; q' = 1 - p/2 in the flip channels. The
//! flip channels use Kraus weights {sqrt(q') 1, sqrt(p/2) sigma_i}, the
//! normalization that satisfies completeness and reproduces the closed-form
//! reduced matrices.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::pauli;
use crate::tensor::{kron, validate_density, ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    BitFlip,
    BitPhaseFlip,
    PhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 5] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::PhaseFlip,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::PhaseDamping => "phase-damping",
            ChannelKind::BitFlip => "bit-flip",
            ChannelKind::BitPhaseFlip => "bit-phase-flip",
            ChannelKind::PhaseFlip => "phase-flip",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Bloch axis (1 = x, 2 = y, 3 = z) left invariant by a flip channel.
    pub fn protected_axis(&self) -> Option<usize> {
        match self {
            ChannelKind::BitFlip => Some(1),
            ChannelKind::BitPhaseFlip => Some(2),
            ChannelKind::PhaseFlip => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single-qubit noise process at parametrized time p.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    pub kind: ChannelKind,
    pub p: f64,
    pub operators: Vec<ComplexMatrix>,
}

/// Build the Kraus pair of a channel at parametrized time p in [0, 1].
pub fn make_channel(kind: ChannelKind, p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { p });
    }
    let q = 1.0 - p;
    let operators = match kind {
        ChannelKind::AmplitudeDamping => vec![
            ComplexMatrix::from_rows_real(&[&[1.0, 0.0], &[0.0, q.sqrt()]]),
            ComplexMatrix::from_rows_real(&[&[0.0, p.sqrt()], &[0.0, 0.0]]),
        ],
        ChannelKind::PhaseDamping => vec![
            ComplexMatrix::from_rows_real(&[&[1.0, 0.0], &[0.0, q.sqrt()]]),
            ComplexMatrix::diagonal(&[0.0, p.sqrt()]),
        ],
        ChannelKind::BitFlip | ChannelKind::BitPhaseFlip | ChannelKind::PhaseFlip => {
            let q_prime = 1.0 - p / 2.0;
            let axis = kind.protected_axis().expect("flip channel has an axis");
            vec![
                ComplexMatrix::identity(2).scale(q_prime.sqrt()),
                pauli(axis).scale((p / 2.0).sqrt()),
            ]
        }
    };
    Ok(KrausChannel { kind, p, operators })
}

/// Max entry of |sum Gamma_k^dag Gamma_k - 1|.
pub fn completeness_check(channel: &KrausChannel) -> f64 {
    let dim = channel.operators[0].dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for gamma in &channel.operators {
        sum = sum.add(&gamma.adjoint().mul(gamma));
    }
    sum.max_abs_diff(&ComplexMatrix::identity(dim))
}

/// Operator-sum action of independent local channels on both qubits:
/// eps(rho) = sum_kl (Gk (x) Gl) rho (Gk (x) Gl)^dag.
pub fn apply_local_channels(
    rho_ab: &DensityMatrix,
    channel_a: &KrausChannel,
    channel_b: &KrausChannel,
) -> Result<DensityMatrix> {
    let mut out = ComplexMatrix::zeros(4);
    for ga in &channel_a.operators {
        for gb in &channel_b.operators {
            let op = kron(ga, gb);
            let term = rho_ab.matrix().conjugate_by(&op);
            out = out.add(&term);
        }
    }
    out.hermitize_mut();
    validate_density(out, vec![2, 2])
}

/// Global isometry V = sum_k Gamma_k (x) |k><0| on a (system, environment)
/// pair embedded at the given factor positions of the 4-factor space.
fn dilation_isometry(channel: &KrausChannel, system_slot: usize, env_slot: usize) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(16);
    for (k, gamma) in channel.operators.iter().enumerate() {
        // |k><0| on the environment qubit.
        let mut transfer = ComplexMatrix::zeros(2);
        transfer.set(k, 0, Complex64::ONE);
        let mut factors = [
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(2),
        ];
        factors[system_slot] = gamma.clone();
        factors[env_slot] = transfer;
        let term = kron(&kron(&kron(&factors[0], &factors[1]), &factors[2]), &factors[3]);
        v = v.add(&term);
    }
    v
}

/// Dilate both channels onto vacuum environment qubits and evolve:
/// rho_AB (x) |00><00| -> V_A V_B (.) V_B^dag V_A^dag, dims (A, B, E_A, E_B).
pub fn dilate_and_evolve_global(
    rho_ab: &DensityMatrix,
    channel_a: &KrausChannel,
    channel_b: &KrausChannel,
) -> Result<DensityMatrix> {
    for channel in [channel_a, channel_b] {
        if channel.operators.len() > 2 {
            return Err(Error::TooManyKrausOperators {
                count: channel.operators.len(),
            });
        }
    }
    let global = crate::states::attach_vacuum_environments(rho_ab);
    let va = dilation_isometry(channel_a, 0, 2);
    let vb = dilation_isometry(channel_b, 1, 3);
    let mut evolved = global.matrix().conjugate_by(&vb).conjugate_by(&va);
    evolved.hermitize_mut();
    validate_density(evolved, vec![2, 2, 2, 2])
}
