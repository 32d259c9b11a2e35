//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! Dependency-free and plenty accurate for the fixed dims (<= 16) used here.
//! Diagonal input converges in zero sweeps and returns the diagonal exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::ComplexMatrix;
use crate::tol;

/// Eigenvalues (ascending) and matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing entry (p, q), p < q.
///
/// The pivot a_pq = r e^{i phi} is phased to a real 2x2 problem and rotated
/// with the standard real Jacobi angle.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U on the (p, q) block: [[c, s], [-s conj(phase)... ]] composed with the
    // phase so that U^dag A U has a real rotated block.
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -s * phase.conj();
    let uqq = c * phase.conj();

    let n = a.dim();
    // Column update: A <- A U.
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * upp + akq * uqp);
        a.set(k, q, akp * upq + akq * uqq);
    }
    // Row update: A <- U^dag A.
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, upp.conj() * apk + uqp.conj() * aqk);
        a.set(q, k, upq.conj() * apk + uqq.conj() * aqk);
    }
    // Pin the rotated pair exactly.
    a.set(p, q, Complex64::ZERO);
    a.set(q, p, Complex64::ZERO);
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, Complex64::new(app.re, 0.0));
    a.set(q, q, Complex64::new(aqq.re, 0.0));

    // Accumulate eigenvectors: V <- V U.
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * upp + vkq * uqp);
        v.set(k, q, vkp * upq + vkq * uqq);
    }
}

const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Eigen> {
    let deviation = m.hermiticity_deviation();
    if deviation > tol::EIG_HERMITICITY {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    let mut a = m.clone();
    a.hermitize_mut();
    let mut v = ComplexMatrix::identity(n);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) >= tol::JACOBI_OFF_DIAGONAL && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(n, |row, col| v.get(row, order[col]));
    Ok(Eigen { values, vectors })
}

/// Ascending real eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}

/// Rebuild V f(Lambda) V^dag.
fn rebuild(eigen: &Eigen, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let n = eigen.vectors.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lambda) in eigen.values.iter().enumerate() {
        let flambda = f(lambda);
        if flambda == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = eigen.vectors.get(i, k);
            if vik == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                out.add_assign_at(i, j, vik * eigen.vectors.get(j, k).conj() * flambda);
            }
        }
    }
    out.hermitize_mut();
    out
}

/// Principal square root of a positive semidefinite matrix.
///
/// Eigenvalues in [-PSD_CLAMP, 0) are treated as roundoff zeros; anything
/// more negative is rejected.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eigen = hermitian_eigen(m)?;
    if eigen.values[0] < -tol::PSD_CLAMP {
        return Err(Error::NotPositive {
            min_eigenvalue: eigen.values[0],
        });
    }
    Ok(rebuild(&eigen, |x| if x > 0.0 { x.sqrt() } else { 0.0 }))
}
