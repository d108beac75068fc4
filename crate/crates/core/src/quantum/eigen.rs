//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a
//! diagonal unitary, then applies the real symmetric Jacobi rotation that
//! annihilates the now-real pivot. Rotations are accumulated into the
//! eigenvector matrix. Sweeps run until the off-diagonal Frobenius norm
//! falls below `1e-14·‖A‖_F`.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianOperator};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const CONVERGENCE: f64 = 1e-14;
const NEGLIGIBLE: f64 = 1e-17;

/// Eigenvalues in descending order with matching orthonormal eigenvector
/// columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvectors as matrix columns, in eigenvalue order.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Σᵢ ξᵢ |vᵢ⟩⟨vᵢ|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &xi) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * xi;
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Rotation on the `(p, q)` plane, stored as its 2×2 block.
struct PlaneRotation {
    pp: Complex64,
    pq: Complex64,
    qp: Complex64,
    qq: Complex64,
}

impl PlaneRotation {
    fn annihilating(a: &ComplexMatrix, p: usize, q: usize) -> Self {
        let pivot = a[(p, q)];
        let r = pivot.norm();
        let phase = pivot.conj() / r;
        let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        Self {
            pp: Complex64::new(c, 0.0),
            pq: Complex64::new(s, 0.0),
            qp: -phase * s,
            qq: phase * c,
        }
    }

    fn apply_right(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        for k in 0..m.dim() {
            let mkp = m[(k, p)];
            let mkq = m[(k, q)];
            m[(k, p)] = mkp * self.pp + mkq * self.qp;
            m[(k, q)] = mkp * self.pq + mkq * self.qq;
        }
    }

    fn apply_left_adjoint(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        for k in 0..m.dim() {
            let mpk = m[(p, k)];
            let mqk = m[(q, k)];
            m[(p, k)] = self.pp.conj() * mpk + self.qp.conj() * mqk;
            m[(q, k)] = self.pq.conj() * mpk + self.qq.conj() * mqk;
        }
    }
}

pub fn spectral_decompose(op: &HermitianOperator) -> Result<SpectralDecomposition> {
    let n = op.dim();
    let mut a = op.matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= CONVERGENCE * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[(p, q)].norm() <= NEGLIGIBLE * scale {
                    continue;
                }
                let rot = PlaneRotation::annihilating(&a, p, q);
                rot.apply_right(&mut a, p, q);
                rot.apply_left_adjoint(&mut a, p, q);
                rot.apply_right(&mut v, p, q);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off > CONVERGENCE * scale {
            return Err(Error::EigensolverFailure {
                sweeps: MAX_SWEEPS,
                off_norm: off,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let columns: Vec<Vec<Complex64>> = order.iter().map(|&i| v.column(i)).collect();
    let eigenvectors = ComplexMatrix::from_columns(&columns)?;
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}
