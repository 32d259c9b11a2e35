//! Small deterministic RNG (SplitMix64) plus samplers for test states.
//!
//! The oracle-verification command draws random Bell-diagonal parameters; a
//! hand-rolled generator keeps its output byte-identical regardless of
//! toolchain or dependency versions.

use num_complex::Complex64;

use crate::states::BellDiagonalParams;
use crate::tensor::{ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u = (1.0 - self.uniform()).max(f64::MIN_POSITIVE);
        let v = self.uniform();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }

    /// Uniform draw from the Bell-diagonal tetrahedron (rejection on the cube).
    pub fn bell_diagonal_params(&mut self) -> BellDiagonalParams {
        loop {
            let c1 = self.uniform_in(-1.0, 1.0);
            let c2 = self.uniform_in(-1.0, 1.0);
            let c3 = self.uniform_in(-1.0, 1.0);
            if let Ok(params) = BellDiagonalParams::new(c1, c2, c3) {
                return params;
            }
        }
    }

    /// Hilbert-Schmidt random density matrix: G G† / tr(G G†) with Ginibre G.
    pub fn density_matrix(&mut self, dim: usize, dims: &[usize]) -> DensityMatrix {
        let g = ComplexMatrix::from_fn(dim, |_, _| Complex64::new(self.normal(), self.normal()));
        let mut rho = g.mul(&g.adjoint());
        let trace = rho.trace().re;
        rho.scale_mut(1.0 / trace);
        // Manifestly Hermitian by construction; symmetrize away roundoff.
        rho.hermitize_mut();
        DensityMatrix::new_unchecked(rho, dims.to_vec())
    }

    /// Random pure state of the given dimension.
    pub fn pure_state(&mut self, dim: usize, dims: &[usize]) -> DensityMatrix {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(self.normal(), self.normal()))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let mut rho = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                rho.set(i, j, amps[i] * amps[j].conj() / (norm * norm));
            }
        }
        rho.hermitize_mut();
        DensityMatrix::new_unchecked(rho, dims.to_vec())
    }
}
