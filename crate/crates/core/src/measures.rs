//! Correlation quantifiers: Shannon and von Neumann entropies, mutual
//! information, measured conditional entropy, Henderson-Vedral classical
//! correlation and quantum discord (one side), the symmetric two-side pair,
//! concurrence, and negativity.
//!
//! All logarithms are base 2.

use serde::{Deserialize, Serialize};

use crate::eig::{hermitian_eigen, hermitian_eigenvalues, psd_sqrt};
use crate::error::{Error, Result};
use crate::optim::{self, xlog2, OptimizerSettings, TwoQubitBloch};
use crate::states::pauli;
use crate::tensor::{kron, partial_trace, partial_transpose, ComplexMatrix, DensityMatrix};
use crate::tol;

/// Projective single-qubit measurement along the Bloch direction
/// (sin t cos f, sin t sin f, cos t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn direction(&self) -> [f64; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }

    /// The projector pair (Pi_plus, Pi_minus) = (1 +- n.sigma)/2.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let n = self.direction();
        let mut dotted = ComplexMatrix::zeros(2);
        for (axis, weight) in n.iter().enumerate() {
            let sigma = pauli(axis + 1);
            for i in 0..2 {
                for j in 0..2 {
                    dotted.add_assign_at(i, j, sigma.get(i, j) * *weight);
                }
            }
        }
        let identity = ComplexMatrix::identity(2);
        let plus = identity.add(&dotted).scale(0.5);
        let minus = identity.sub(&dotted).scale(0.5);
        (plus, minus)
    }
}

/// Which qubit the one-side measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasuredSide {
    A,
    B,
}

/// H(p) = -sum p log2 p with 0 log 0 = 0.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in dist {
        if p < -1e-12 || !p.is_finite() {
            return Err(Error::InvalidDistribution {
                reason: format!("entry {p} is negative or not finite"),
            });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution {
            reason: format!("sum {sum} differs from 1 beyond 1e-9"),
        });
    }
    Ok(-dist.iter().map(|&p| xlog2(p)).sum::<f64>())
}

/// S(rho) = -sum lambda log2 lambda over clamped eigenvalues.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let eigenvalues =
        hermitian_eigenvalues(rho.matrix()).expect("validated state is Hermitian");
    -eigenvalues.iter().map(|&x| xlog2(x)).sum::<f64>()
}

fn require_bipartite(rho: &DensityMatrix) -> Result<()> {
    if rho.subsystem_count() != 2 {
        return Err(Error::BipartitionRequired {
            count: rho.subsystem_count(),
        });
    }
    Ok(())
}

/// Total correlation I = S(rho_A) + S(rho_B) - S(rho_AB).
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_bipartite(rho)?;
    let s_a = von_neumann_entropy(&partial_trace(rho, &[0])?);
    let s_b = von_neumann_entropy(&partial_trace(rho, &[1])?);
    let value = s_a + s_b - von_neumann_entropy(rho);
    debug_assert!(value > -tol::MUTUAL_INFO_CLAMP);
    Ok(value.max(0.0))
}

/// Outcome distribution p_jk of local projective measurements on a two-qubit
/// state, row-major over (j, k) in {+, -} x {+, -}.
pub fn outcome_distribution(
    rho: &DensityMatrix,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<[f64; 4]> {
    require_bipartite(rho)?;
    let (ap, am) = basis_a.projectors();
    let (bp, bm) = basis_b.projectors();
    let mut out = [0.0; 4];
    for (slot, (pa, pb)) in [(&ap, &bp), (&ap, &bm), (&am, &bp), (&am, &bm)]
        .into_iter()
        .enumerate()
    {
        let p = rho.matrix().mul(&kron(pa, pb)).trace().re;
        out[slot] = p.max(0.0);
    }
    Ok(out)
}

/// Classical mutual information H(A) + H(B) - H(A,B) of the measurement
/// outcome distribution.
pub fn classical_mutual_information(
    rho: &DensityMatrix,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<f64> {
    let joint = outcome_distribution(rho, basis_a, basis_b)?;
    let marginal_a = [joint[0] + joint[1], joint[2] + joint[3]];
    let marginal_b = [joint[0] + joint[2], joint[1] + joint[3]];
    Ok(shannon_entropy(&marginal_a)? + shannon_entropy(&marginal_b)? - shannon_entropy(&joint)?)
}

/// sum_j q_j S(rho_A^j) for a projective measurement on qubit B.
pub fn measured_conditional_entropy(
    rho: &DensityMatrix,
    basis_b: &MeasurementBasis,
) -> Result<f64> {
    require_bipartite(rho)?;
    let (bp, bm) = basis_b.projectors();
    let mut total = 0.0;
    for projector in [&bp, &bm] {
        let lifted = kron(&ComplexMatrix::identity(2), projector);
        let unnormalized = rho.matrix().conjugate_by(&lifted);
        let weight = unnormalized.trace().re;
        if weight < tol::NEGLIGIBLE_PROBABILITY {
            continue;
        }
        let conditional = partial_trace(
            &DensityMatrix::new_unchecked(unnormalized.scale(1.0 / weight), vec![2, 2]),
            &[0],
        )?;
        total += weight * von_neumann_entropy(&conditional);
    }
    Ok(total)
}

fn one_side_maximum(
    rho: &DensityMatrix,
    measured_side: MeasuredSide,
    settings: &OptimizerSettings,
) -> Result<(f64, MeasurementBasis)> {
    require_bipartite(rho)?;
    let bloch = TwoQubitBloch::from_state(rho);
    let bloch = match measured_side {
        MeasuredSide::B => bloch,
        MeasuredSide::A => bloch.swapped(),
    };
    Ok(optim::maximize_one_side(&bloch, settings))
}

/// Henderson-Vedral classical correlation and the maximizing basis.
pub fn classical_correlation_hv(
    rho: &DensityMatrix,
    measured_side: MeasuredSide,
) -> Result<(f64, MeasurementBasis)> {
    classical_correlation_hv_with(rho, measured_side, &OptimizerSettings::default())
}

pub fn classical_correlation_hv_with(
    rho: &DensityMatrix,
    measured_side: MeasuredSide,
    settings: &OptimizerSettings,
) -> Result<(f64, MeasurementBasis)> {
    one_side_maximum(rho, measured_side, settings)
}

/// Quantum discord: mutual information minus the Henderson-Vedral maximum.
pub fn quantum_discord(rho: &DensityMatrix, measured_side: MeasuredSide) -> Result<f64> {
    quantum_discord_with(rho, measured_side, &OptimizerSettings::default())
}

pub fn quantum_discord_with(
    rho: &DensityMatrix,
    measured_side: MeasuredSide,
    settings: &OptimizerSettings,
) -> Result<f64> {
    let total = mutual_information(rho)?;
    let (classical, _) = classical_correlation_hv_with(rho, measured_side, settings)?;
    let value = total - classical;
    assert!(
        value > -tol::CORRELATION_CLAMP,
        "discord through optimizer came out {value}; the maximization overshot mutual information"
    );
    Ok(value.max(0.0))
}

/// Maximal classical mutual information over local bases on both qubits.
pub fn two_side_classical(
    rho: &DensityMatrix,
) -> Result<(f64, MeasurementBasis, MeasurementBasis)> {
    two_side_classical_with(rho, &OptimizerSettings::default())
}

pub fn two_side_classical_with(
    rho: &DensityMatrix,
    settings: &OptimizerSettings,
) -> Result<(f64, MeasurementBasis, MeasurementBasis)> {
    require_bipartite(rho)?;
    let bloch = TwoQubitBloch::from_state(rho);
    Ok(optim::maximize_two_side(&bloch, settings))
}

/// Two-side quantum correlation Q = I - K.
pub fn two_side_quantum(rho: &DensityMatrix) -> Result<f64> {
    two_side_quantum_with(rho, &OptimizerSettings::default())
}

pub fn two_side_quantum_with(rho: &DensityMatrix, settings: &OptimizerSettings) -> Result<f64> {
    let total = mutual_information(rho)?;
    let (classical, _, _) = two_side_classical_with(rho, settings)?;
    let value = total - classical;
    assert!(
        value > -tol::CORRELATION_CLAMP,
        "two-side quantum correlation came out {value}; the maximization overshot mutual information"
    );
    Ok(value.max(0.0))
}

/// Closed-form concurrence for X states:
/// 2 max{0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)}.
pub fn xstate_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            dim: rho.dim(),
        });
    }
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            let magnitude = rho.get(i, j).norm();
            if magnitude >= tol::X_FORM {
                return Err(Error::NotXForm {
                    row: i,
                    col: j,
                    magnitude,
                });
            }
        }
    }
    let lambda_1 = rho.get(0, 3).norm() - (rho.get(1, 1).re * rho.get(2, 2).re).max(0.0).sqrt();
    let lambda_2 = rho.get(1, 2).norm() - (rho.get(0, 0).re * rho.get(3, 3).re).max(0.0).sqrt();
    Ok(2.0 * lambda_1.max(lambda_2).max(0.0))
}

/// Wootters concurrence via the Hermitian form sqrt(rho) rho~ sqrt(rho).
pub fn concurrence_general(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            dim: rho.dim(),
        });
    }
    let yy = kron(&pauli(2), &pauli(2));
    let spin_flipped = yy.mul(&rho.matrix().conjugate()).mul(&yy);
    let root = psd_sqrt(rho.matrix())?;
    let mut product = root.mul(&spin_flipped).mul(&root);
    product.hermitize_mut();
    let eigen = hermitian_eigen(&product)?;
    let mut lambdas: Vec<f64> = eigen
        .values
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    lambdas.reverse();
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Sum of |negative eigenvalues| of the partial transpose; zero iff PPT.
pub fn negativity(rho: &DensityMatrix, subsystem: usize) -> Result<f64> {
    let pt = partial_transpose(rho, subsystem)?;
    let eigenvalues = hermitian_eigenvalues(&pt)?;
    Ok(eigenvalues
        .iter()
        .filter(|&&x| x < -tol::NEGATIVITY_CLAMP)
        .map(|&x| -x)
        .sum())
}

/// Entropy of the probability pair (p, 1 - p).
pub fn binary_entropy(p: f64) -> f64 {
    optim::binary_entropy(p)
}
