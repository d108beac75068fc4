use num_complex::Complex64;

use super::eigen::spectral_decompose;
use super::matrix::{ComplexMatrix, HermitianOperator};
use crate::error::{Error, Result};
use crate::majorization::{DistVector, EPS_NUM};

/// Tolerance for trace, positivity and normalization of states.
pub const STATE_TOL: f64 = 1e-9;

/// A density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone)]
pub struct QuantumState {
    density: HermitianOperator,
}

impl QuantumState {
    pub fn from_density(matrix: ComplexMatrix) -> Result<Self> {
        let density = HermitianOperator::new(matrix)?;
        let trace = density.matrix().trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {trace}, expected 1")));
        }
        let min_eig = spectral_decompose(&density)?
            .eigenvalues()
            .last()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix is not positive semidefinite (min eigenvalue {min_eig:e})"
            )));
        }
        Ok(Self { density })
    }

    /// `|ψ⟩⟨ψ|` for the normalized `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let norm = psi.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("state vector has zero or non-finite norm".into()));
        }
        let normalized: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self {
            density: HermitianOperator::projector(&normalized),
        })
    }

    /// `Σᵢ λᵢ |bᵢ⟩⟨bᵢ|` for orthonormal columns `bᵢ` of `basis`.
    pub fn from_spectrum(spectrum: &DistVector, basis: &ComplexMatrix) -> Result<Self> {
        check_spectrum(spectrum)?;
        let n = basis.dim();
        if spectrum.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: spectrum.len(),
            });
        }
        let mut rho = ComplexMatrix::zeros(n);
        for (k, &lambda) in spectrum.components().iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            let v = basis.column(k);
            for i in 0..n {
                for j in 0..n {
                    rho[(i, j)] += v[i] * v[j].conj() * lambda;
                }
            }
        }
        Ok(Self {
            density: HermitianOperator::new(rho)?,
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            density: HermitianOperator::new(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
                .expect("identity is Hermitian"),
        }
    }

    pub fn density(&self) -> &HermitianOperator {
        &self.density
    }

    pub fn dim(&self) -> usize {
        self.density.dim()
    }

    /// Eigenvalues of the density matrix, descending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(spectral_decompose(&self.density)?.eigenvalues().to_vec())
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.density.expectation(&self.density)
    }
}

/// A valid spectrum has unit mass.
pub fn check_spectrum(spectrum: &DistVector) -> Result<()> {
    if (spectrum.mass() - 1.0).abs() > EPS_NUM {
        return Err(Error::InvalidSpectrum(format!(
            "eigenvalues sum to {}, expected 1",
            spectrum.mass()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pure_state_normalizes() {
        let s = QuantumState::pure(&[c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(s.density().matrix().trace().re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.purity(), 1.0, epsilon = 1e-15);
        assert!(QuantumState::pure(&[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn density_validation() {
        let ok = ComplexMatrix::from_real_rows(&[&[0.7, 0.1], &[0.1, 0.3]]).unwrap();
        assert!(QuantumState::from_density(ok).is_ok());

        let trace2 = ComplexMatrix::identity(2);
        assert!(matches!(
            QuantumState::from_density(trace2),
            Err(Error::InvalidState(_))
        ));

        let indefinite = ComplexMatrix::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]).unwrap();
        assert!(matches!(
            QuantumState::from_density(indefinite),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn spectrum_round_trip() {
        let lambda = DistVector::new(vec![0.7, 0.3]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let basis = ComplexMatrix::from_rows(vec![
            vec![c(h, 0.0), c(0.0, h)],
            vec![c(0.0, h), c(h, 0.0)],
        ])
        .unwrap();
        let state = QuantumState::from_spectrum(&lambda, &basis).unwrap();
        let spec = state.spectrum().unwrap();
        assert_abs_diff_eq!(spec[0], 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(spec[1], 0.3, epsilon = 1e-12);

        let bad = DistVector::new(vec![0.7, 0.2]).unwrap();
        assert!(matches!(
            QuantumState::from_spectrum(&bad, &basis),
            Err(Error::InvalidSpectrum(_))
        ));
    }
}
