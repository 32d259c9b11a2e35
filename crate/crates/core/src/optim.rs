//! Deterministic extremization over projective measurement bases.
//!
//! Coarse grid over Bloch angles, then Nelder-Mead refinement. Grid ties
//! break toward the smallest (theta, phi), scanned in that order, so results
//! are reproducible bit for bit.

use serde::{Deserialize, Serialize};

use crate::measures::MeasurementBasis;
use crate::states::pauli_coefficients;
use crate::tensor::DensityMatrix;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// One-side grid: (phi points, theta points).
    pub one_side_grid: (usize, usize),
    /// Two-side grid per side: (phi points, theta points).
    pub two_side_grid: (usize, usize),
    pub max_iterations: usize,
    pub function_tolerance: f64,
    pub step_tolerance: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            one_side_grid: (64, 32),
            two_side_grid: (32, 16),
            max_iterations: 200,
            function_tolerance: 1e-8,
            step_tolerance: 1e-6,
        }
    }
}

/// Bloch-picture data of a two-qubit state: local vectors and the 3x3
/// correlation block of the Pauli expansion.
#[derive(Debug, Clone)]
pub(crate) struct TwoQubitBloch {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub corr: [[f64; 3]; 3],
}

impl TwoQubitBloch {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let c = pauli_coefficients(rho);
        let mut corr = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                corr[i][j] = c[i + 1][j + 1];
            }
        }
        Self {
            a: [c[1][0], c[2][0], c[3][0]],
            b: [c[0][1], c[0][2], c[0][3]],
            corr,
        }
    }

    /// Exchange the roles of the two qubits.
    pub fn swapped(&self) -> Self {
        let mut corr = [[0.0; 3]; 3];
        for (i, row) in corr.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.corr[j][i];
            }
        }
        Self {
            a: self.b,
            b: self.a,
            corr,
        }
    }

    fn corr_dot(&self, n: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (value, row) in out.iter_mut().zip(&self.corr) {
            *value = row[0] * n[0] + row[1] * n[1] + row[2] * n[2];
        }
        out
    }

    /// Entropy of the unmeasured qubit.
    pub fn unmeasured_entropy(&self) -> f64 {
        binary_entropy((1.0 + norm3(self.a)) / 2.0)
    }

    /// sum_j q_j S(rho_A^j) for a projective measurement of qubit B along n.
    pub fn conditional_entropy(&self, n: [f64; 3]) -> f64 {
        let bn = dot3(self.b, n);
        let cn = self.corr_dot(n);
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            let prob = (1.0 + sign * bn) / 2.0;
            if prob < tol::NEGLIGIBLE_PROBABILITY {
                continue;
            }
            let r = [
                (self.a[0] + sign * cn[0]) / (2.0 * prob),
                (self.a[1] + sign * cn[1]) / (2.0 * prob),
                (self.a[2] + sign * cn[2]) / (2.0 * prob),
            ];
            total += prob * binary_entropy((1.0 + norm3(r)) / 2.0);
        }
        total
    }

    /// Classical mutual information of the 2x2 outcome distribution for local
    /// measurements along m (qubit A) and n (qubit B).
    pub fn outcome_mutual_information(&self, m: [f64; 3], n: [f64; 3]) -> f64 {
        let am = dot3(self.a, m);
        let bn = dot3(self.b, n);
        let w = dot3(m, self.corr_dot(n));
        let h_a = binary_entropy((1.0 + am) / 2.0);
        let h_b = binary_entropy((1.0 + bn) / 2.0);
        let mut h_ab = 0.0;
        for j in [1.0, -1.0] {
            for k in [1.0, -1.0] {
                h_ab -= xlog2((1.0 + j * am + k * bn + j * k * w) / 4.0);
            }
        }
        h_a + h_b - h_ab
    }
}

#[inline]
pub(crate) fn xlog2(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn binary_entropy(p: f64) -> f64 {
    -xlog2(p) - xlog2(1.0 - p)
}

#[inline]
fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// Canonical Bloch angles for a (possibly wrapped) angle pair.
fn canonical_basis(theta: f64, phi: f64) -> MeasurementBasis {
    let n = direction(theta, phi);
    // The +-n degeneracy of a basis: represent with the upper hemisphere.
    let n = if n[2] < 0.0 { [-n[0], -n[1], -n[2]] } else { n };
    let theta = n[2].clamp(-1.0, 1.0).acos();
    let mut phi = n[1].atan2(n[0]);
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    if theta.sin().abs() < 1e-12 {
        phi = 0.0;
    }
    MeasurementBasis { theta, phi }
}

/// Grid nodes: theta inclusive over [0, pi], phi half-open over [0, 2 pi).
fn grid_angles(n_phi: usize, n_theta: usize) -> (Vec<f64>, Vec<f64>) {
    let n_theta = n_theta.max(2);
    let n_phi = n_phi.max(1);
    let pi = std::f64::consts::PI;
    let thetas: Vec<f64> = (0..n_theta)
        .map(|i| i as f64 * pi / (n_theta - 1) as f64)
        .collect();
    let phis: Vec<f64> = (0..n_phi).map(|j| j as f64 * 2.0 * pi / n_phi as f64).collect();
    (thetas, phis)
}

/// Deterministic Nelder-Mead minimization.
fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    start: &[f64],
    step: &[f64],
    settings: &OptimizerSettings,
) -> (Vec<f64>, f64) {
    let dim = start.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(start.to_vec());
    for i in 0..dim {
        let mut vertex = start.to_vec();
        vertex[i] += step[i];
        simplex.push(vertex);
    }
    let mut scores: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..settings.max_iterations {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&i, &j| scores[i].total_cmp(&scores[j]));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if (scores[worst] - scores[best]).abs() < settings.function_tolerance {
            break;
        }
        let diameter = simplex
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[best])
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < settings.step_tolerance {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for &i in order.iter().take(dim) {
            for (sum, &coordinate) in centroid.iter_mut().zip(&simplex[i]) {
                *sum += coordinate;
            }
        }
        for value in &mut centroid {
            *value /= dim as f64;
        }

        let reflected: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + alpha * (centroid[d] - simplex[worst][d]))
            .collect();
        let reflected_score = f(&reflected);

        if reflected_score < scores[best] {
            let expanded: Vec<f64> = (0..dim)
                .map(|d| centroid[d] + gamma * (reflected[d] - centroid[d]))
                .collect();
            let expanded_score = f(&expanded);
            if expanded_score < reflected_score {
                simplex[worst] = expanded;
                scores[worst] = expanded_score;
            } else {
                simplex[worst] = reflected;
                scores[worst] = reflected_score;
            }
            continue;
        }
        if reflected_score < scores[second_worst] {
            simplex[worst] = reflected;
            scores[worst] = reflected_score;
            continue;
        }

        let contracted: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + rho * (simplex[worst][d] - centroid[d]))
            .collect();
        let contracted_score = f(&contracted);
        if contracted_score < scores[worst] {
            simplex[worst] = contracted;
            scores[worst] = contracted_score;
            continue;
        }

        let anchor = simplex[best].clone();
        for &i in order.iter().skip(1) {
            for (coordinate, &pivot) in simplex[i].iter_mut().zip(&anchor) {
                *coordinate = pivot + sigma * (*coordinate - pivot);
            }
            scores[i] = f(&simplex[i]);
        }
    }

    let best = (0..scores.len())
        .min_by(|&i, &j| scores[i].total_cmp(&scores[j]))
        .expect("simplex is nonempty");
    (simplex[best].clone(), scores[best])
}

/// Henderson-Vedral maximization for a measurement on qubit B of `bloch`:
/// returns (classical correlation, maximizing basis).
pub(crate) fn maximize_one_side(
    bloch: &TwoQubitBloch,
    settings: &OptimizerSettings,
) -> (f64, MeasurementBasis) {
    let (n_phi, n_theta) = settings.one_side_grid;
    let (thetas, phis) = grid_angles(n_phi, n_theta);
    let (n_phi, n_theta) = (phis.len(), thetas.len());

    let mut best_angles = (0.0, 0.0);
    let mut best_cond = f64::INFINITY;
    for &theta in &thetas {
        for &phi in &phis {
            let value = bloch.conditional_entropy(direction(theta, phi));
            if value < best_cond {
                best_cond = value;
                best_angles = (theta, phi);
            }
        }
    }

    let pi = std::f64::consts::PI;
    let step = [pi / (2.0 * (n_theta - 1) as f64), pi / n_phi as f64];
    let mut objective = |x: &[f64]| bloch.conditional_entropy(direction(x[0], x[1]));
    let (refined, refined_cond) = nelder_mead(
        &mut objective,
        &[best_angles.0, best_angles.1],
        &step,
        settings,
    );

    let (angles, cond) = if refined_cond < best_cond {
        ((refined[0], refined[1]), refined_cond)
    } else {
        (best_angles, best_cond)
    };
    let classical = (bloch.unmeasured_entropy() - cond).max(0.0);
    (classical, canonical_basis(angles.0, angles.1))
}

/// Maximal classical mutual information under local projective measurements
/// on both qubits: returns (value, basis on A, basis on B).
pub(crate) fn maximize_two_side(
    bloch: &TwoQubitBloch,
    settings: &OptimizerSettings,
) -> (f64, MeasurementBasis, MeasurementBasis) {
    let (n_phi, n_theta) = settings.two_side_grid;
    let (thetas, phis) = grid_angles(n_phi, n_theta);
    let (n_phi, n_theta) = (phis.len(), thetas.len());

    // Per-direction data so the pair scan is a dot product plus entropies.
    struct Node {
        theta: f64,
        phi: f64,
        n: [f64; 3],
    }
    let mut nodes = Vec::with_capacity(thetas.len() * phis.len());
    for &theta in &thetas {
        for &phi in &phis {
            nodes.push(Node {
                theta,
                phi,
                n: direction(theta, phi),
            });
        }
    }

    let mut best = f64::NEG_INFINITY;
    let mut best_pair = ((0.0, 0.0), (0.0, 0.0));
    for na in &nodes {
        let am = dot3(bloch.a, na.n);
        let t = {
            // m^T C as a vector over the B direction.
            let mut t = [0.0; 3];
            for (j, entry) in t.iter_mut().enumerate() {
                *entry = bloch.corr[0][j] * na.n[0]
                    + bloch.corr[1][j] * na.n[1]
                    + bloch.corr[2][j] * na.n[2];
            }
            t
        };
        let h_a = binary_entropy((1.0 + am) / 2.0);
        for nb in &nodes {
            let bn = dot3(bloch.b, nb.n);
            let w = dot3(t, nb.n);
            let h_b = binary_entropy((1.0 + bn) / 2.0);
            let mut h_ab = 0.0;
            for j in [1.0, -1.0] {
                for k in [1.0, -1.0] {
                    h_ab -= xlog2((1.0 + j * am + k * bn + j * k * w) / 4.0);
                }
            }
            let value = h_a + h_b - h_ab;
            if value > best {
                best = value;
                best_pair = ((na.theta, na.phi), (nb.theta, nb.phi));
            }
        }
    }

    let pi = std::f64::consts::PI;
    let dtheta = pi / (2.0 * (n_theta - 1) as f64);
    let dphi = pi / n_phi as f64;
    let mut objective = |x: &[f64]| {
        -bloch.outcome_mutual_information(direction(x[0], x[1]), direction(x[2], x[3]))
    };
    let start = [
        best_pair.0 .0,
        best_pair.0 .1,
        best_pair.1 .0,
        best_pair.1 .1,
    ];
    let (refined, refined_neg) = nelder_mead(
        &mut objective,
        &start,
        &[dtheta, dphi, dtheta, dphi],
        settings,
    );

    if -refined_neg > best {
        (
            (-refined_neg).max(0.0),
            canonical_basis(refined[0], refined[1]),
            canonical_basis(refined[2], refined[3]),
        )
    } else {
        (
            best.max(0.0),
            canonical_basis(best_pair.0 .0, best_pair.0 .1),
            canonical_basis(best_pair.1 .0, best_pair.1 .1),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_diagonal_state, BellDiagonalParams};

    #[test]
    fn bloch_extraction_of_bell_state() {
        let rho = bell_diagonal_state(&BellDiagonalParams::new(1.0, -1.0, 1.0).unwrap()).unwrap();
        let bloch = TwoQubitBloch::from_state(&rho);
        assert!(norm3(bloch.a) < 1e-14);
        assert!(norm3(bloch.b) < 1e-14);
        assert!((bloch.corr[0][0] - 1.0).abs() < 1e-14);
        assert!((bloch.corr[1][1] + 1.0).abs() < 1e-14);
        assert!((bloch.corr[2][2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nelder_mead_minimizes_quadratic() {
        let mut f = |x: &[f64]| (x[0] - 1.5).powi(2) + (x[1] + 0.5).powi(2) + 2.0;
        let (x, value) = nelder_mead(&mut f, &[0.0, 0.0], &[0.5, 0.5], &OptimizerSettings::default());
        assert!((x[0] - 1.5).abs() < 1e-3);
        assert!((x[1] + 0.5).abs() < 1e-3);
        assert!((value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn grid_contains_coordinate_axes() {
        let (thetas, phis) = grid_angles(64, 32);
        assert_eq!(thetas[0], 0.0);
        assert!((phis[16] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn canonical_basis_wraps_angles() {
        let basis = canonical_basis(-0.3, 1.0);
        assert!((0.0..=std::f64::consts::PI).contains(&basis.theta));
        assert!((0.0..2.0 * std::f64::consts::PI).contains(&basis.phi));
    }
}
