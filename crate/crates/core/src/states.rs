//! Initial-state constructors: Pauli basis, general two-qubit states,
//! Bell-diagonal and Werner families, and the system (x) vacuum-environment
//! product.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{kron, partial_trace, validate_density, ComplexMatrix, DensityMatrix};

/// Pauli matrix sigma_i with sigma_0 = identity.
pub fn pauli(i: usize) -> ComplexMatrix {
    let (a, b, c, d) = match i {
        0 => (
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ONE,
        ),
        1 => (
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ONE,
            Complex64::ZERO,
        ),
        2 => (
            Complex64::ZERO,
            -Complex64::I,
            Complex64::I,
            Complex64::ZERO,
        ),
        3 => (
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            -Complex64::ONE,
        ),
        _ => panic!("Pauli index {i} out of range"),
    };
    ComplexMatrix::from_rows(&[&[a, b], &[c, d]])
}

/// Bell-diagonal coefficients (c1, c2, c3), each in [-1, 1], constrained so
/// the four Bell-basis eigenvalues are nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let params = Self { c1, c2, c3 };
        let min = params
            .bell_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(Error::BellParamsNotPositive {
                c1,
                c2,
                c3,
                min_eigenvalue: min,
            });
        }
        Ok(params)
    }

    /// Eigenvalues of the corresponding state, one per Bell vector.
    pub fn bell_eigenvalues(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
        ]
    }
}

/// Real coefficients c[i][j] of (1/4) sum c_ij sigma_i (x) sigma_j, c[0][0] = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralTwoQubitParams {
    pub c: [[f64; 4]; 4],
}

/// rho = (1/4) sum_ij c_ij sigma_i (x) sigma_j, validated.
pub fn general_two_qubit_state(params: &GeneralTwoQubitParams) -> Result<DensityMatrix> {
    if (params.c[0][0] - 1.0).abs() > 1e-12 {
        return Err(Error::BadNormalizationCoefficient {
            value: params.c[0][0],
        });
    }
    let mut m = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let coefficient = params.c[i][j];
            if coefficient == 0.0 {
                continue;
            }
            let term = kron(&pauli(i), &pauli(j));
            for row in 0..4 {
                for col in 0..4 {
                    m.add_assign_at(row, col, term.get(row, col) * (coefficient / 4.0));
                }
            }
        }
    }
    m.hermitize_mut();
    validate_density(m, vec![2, 2])
}

/// Pauli coefficients c_ij = tr[rho (sigma_i (x) sigma_j)] of a two-qubit state.
pub fn pauli_coefficients(rho: &DensityMatrix) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let op = kron(&pauli(i), &pauli(j));
            *entry = rho.matrix().mul(&op).trace().re;
        }
    }
    c
}

/// X-form Bell-diagonal state; entries written directly from (c1, c2, c3).
pub fn bell_diagonal_state(params: &BellDiagonalParams) -> Result<DensityMatrix> {
    // Reject invalid parameters even if the value was built literally.
    let params = BellDiagonalParams::new(params.c1, params.c2, params.c3)?;
    Ok(bell_diagonal_matrix(&params))
}

pub(crate) fn bell_diagonal_matrix(params: &BellDiagonalParams) -> DensityMatrix {
    let BellDiagonalParams { c1, c2, c3 } = *params;
    let diag_outer = (1.0 + c3) / 4.0;
    let diag_inner = (1.0 - c3) / 4.0;
    let anti_outer = (c1 - c2) / 4.0;
    let anti_inner = (c1 + c2) / 4.0;
    let m = ComplexMatrix::from_rows_real(&[
        &[diag_outer, 0.0, 0.0, anti_outer],
        &[0.0, diag_inner, anti_inner, 0.0],
        &[0.0, anti_inner, diag_inner, 0.0],
        &[anti_outer, 0.0, 0.0, diag_outer],
    ]);
    DensityMatrix::new_unchecked(m, vec![2, 2])
}

/// Werner state: c1 = c2 = c3 = -alpha.
pub fn werner_state(alpha: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::ParameterOutOfRange { p: alpha });
    }
    bell_diagonal_state(&BellDiagonalParams::new(-alpha, -alpha, -alpha)?)
}

/// rho_AB (x) |0><0|_EA (x) |0><0|_EB with dims (2, 2, 2, 2) ordered
/// A, B, E_A, E_B.
pub fn attach_vacuum_environments(rho_ab: &DensityMatrix) -> DensityMatrix {
    let vacuum = ComplexMatrix::diagonal(&[1.0, 0.0]);
    let global = kron(&kron(rho_ab.matrix(), &vacuum), &vacuum);
    DensityMatrix::new_unchecked(global, vec![2, 2, 2, 2])
}

/// Convenience: the marginal of `rho` on one side of a bipartition.
pub fn marginal(rho: &DensityMatrix, side: usize) -> Result<DensityMatrix> {
    partial_trace(rho, &[side])
}
