//! Dense complex linear algebra for multi-qubit operators.
//!
//! Everything in this artifact lives in dimension 2, 4, 8, or 16, so matrices
//! are flat row-major `Vec<Complex64>` with no attempt at sparsity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from nested real rows (imaginary parts zero).
    pub fn from_rows_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    /// Diagonal matrix from real entries.
    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, Complex64::new(x, 0.0));
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    #[inline]
    pub fn add_assign_at(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] += value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in mul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        Self::from_fn(self.dim, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in sub");
        Self::from_fn(self.dim, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j) * factor)
    }

    pub fn scale_mut(&mut self, factor: f64) {
        for entry in &mut self.data {
            *entry *= factor;
        }
    }

    /// Conjugation m -> u m u^dag.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    /// Averages m with m^dag in place.
    pub fn hermitize_mut(&mut self) {
        for i in 0..self.dim {
            for j in i..self.dim {
                let avg = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                self.set(i, j, avg);
                self.set(j, i, avg.conj());
            }
        }
    }

    /// Max entrywise |m - m^dag|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Max entrywise |a - b|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Kronecker product; `a` is the leftmost (most significant) factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out.set(i * db + k, j * db + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Validated quantum state over an ordered list of subsystems.
///
/// Subsystem 0 is the leftmost tensor factor; for the four-party global state
/// the ordering is A, B, E_A, E_B.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Construct without re-checking the invariants. For internal use on
    /// outputs that are valid by construction (partial traces of valid
    /// states, exact constructors, ...).
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.dim());
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn subsystem_count(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    /// tr(rho^2); equals sum |rho_ij|^2 for Hermitian rho.
    pub fn purity(&self) -> f64 {
        self.matrix.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Check Hermiticity, unit trace, and positivity; promote to a state.
pub fn validate_density(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.iter().product::<usize>() != matrix.dim() {
        return Err(Error::DimsMismatch {
            dims,
            dim: matrix.dim(),
        });
    }
    if !matrix.all_finite() {
        return Err(Error::NotHermitian {
            deviation: f64::INFINITY,
        });
    }
    let herm = matrix.hermiticity_deviation();
    if herm > tol::HERMITICITY {
        return Err(Error::NotHermitian { deviation: herm });
    }
    let trace = matrix.trace();
    let trace_dev = (trace - Complex64::ONE).norm();
    if trace_dev > tol::TRACE_ONE {
        return Err(Error::TraceNotOne {
            deviation: trace_dev,
        });
    }
    let eigenvalues = crate::eig::hermitian_eigenvalues(&matrix)?;
    let min_eigenvalue = eigenvalues[0];
    if min_eigenvalue < -tol::PSD_CLAMP {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(DensityMatrix::new_unchecked(matrix, dims))
}

fn check_keep(keep: &[usize], count: usize) -> Result<()> {
    let ok = !keep.is_empty()
        && keep.iter().all(|&k| k < count)
        && keep.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::BadSubsystem {
            indices: keep.to_vec(),
            count,
        })
    }
}

/// Trace out every subsystem not listed in `keep` (ascending indices).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    check_keep(keep, dims.len())?;

    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let out_dim: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim);

    // Strides of each subsystem index in the flat basis label.
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut kept_strides = vec![1usize; keep.len()];
    for k in (0..keep.len().saturating_sub(1)).rev() {
        kept_strides[k] = kept_strides[k + 1] * kept_dims[k + 1];
    }

    let full_dim = rho.dim();
    for row in 0..full_dim {
        for col in 0..full_dim {
            // Traced subsystem indices must match between row and col.
            let mut diagonal_in_traced = true;
            for &t in &traced {
                if (row / strides[t]) % dims[t] != (col / strides[t]) % dims[t] {
                    diagonal_in_traced = false;
                    break;
                }
            }
            if !diagonal_in_traced {
                continue;
            }
            let mut out_row = 0;
            let mut out_col = 0;
            for (slot, &k) in keep.iter().enumerate() {
                out_row += ((row / strides[k]) % dims[k]) * kept_strides[slot];
                out_col += ((col / strides[k]) % dims[k]) * kept_strides[slot];
            }
            out.add_assign_at(out_row, out_col, rho.get(row, col));
        }
    }
    Ok(DensityMatrix::new_unchecked(out, kept_dims))
}

/// Transpose one factor of a bipartite matrix. Pure index shuffle, so exact.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dims: (usize, usize),
    subsystem: usize,
) -> ComplexMatrix {
    let (d0, d1) = dims;
    assert_eq!(d0 * d1, m.dim(), "dims mismatch in partial_transpose");
    assert!(subsystem < 2, "bipartite transpose takes subsystem 0 or 1");
    ComplexMatrix::from_fn(m.dim(), |row, col| {
        let (i, a) = (row / d1, row % d1);
        let (j, b) = (col / d1, col % d1);
        if subsystem == 0 {
            m.get(j * d1 + a, i * d1 + b)
        } else {
            m.get(i * d1 + b, j * d1 + a)
        }
    })
}

/// Partial transpose of a two-subsystem state with respect to one factor.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    if rho.subsystem_count() != 2 {
        return Err(Error::BipartitionRequired {
            count: rho.subsystem_count(),
        });
    }
    if subsystem >= 2 {
        return Err(Error::BadSubsystem {
            indices: vec![subsystem],
            count: 2,
        });
    }
    Ok(partial_transpose_matrix(
        rho.matrix(),
        (rho.dims()[0], rho.dims()[1]),
        subsystem,
    ))
}

/// Trace distance (1/2) sum |eigenvalues of a - b| between Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let diff = a.sub(b);
    let eigenvalues = crate::eig::hermitian_eigenvalues(&diff)?;
    Ok(0.5 * eigenvalues.iter().map(|x| x.abs()).sum::<f64>())
}
