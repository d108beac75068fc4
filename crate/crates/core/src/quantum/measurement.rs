use num_complex::Complex64;

use super::eigen::spectral_decompose;
use super::matrix::{ComplexMatrix, HermitianOperator};
use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::majorization::DistVector;

/// Tolerance for orthonormality, completeness and positivity checks.
pub const MEASUREMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementKind {
    Projective,
    Povm,
}

#[derive(Debug, Clone)]
enum Elements {
    Basis(Vec<Vec<Complex64>>),
    Effects(Vec<HermitianOperator>),
}

/// A projective measurement in an orthonormal basis, or a POVM given by
/// its effects `Eᵢ = Mᵢ†Mᵢ`.
#[derive(Debug, Clone)]
pub struct Measurement {
    dim: usize,
    elements: Elements,
}

impl Measurement {
    /// Projective measurement whose outcomes are the columns of `basis`.
    pub fn projective(basis: &ComplexMatrix) -> Result<Self> {
        let vectors: Vec<Vec<Complex64>> = (0..basis.dim()).map(|j| basis.column(j)).collect();
        Self::projective_from_vectors(vectors)
    }

    pub fn projective_from_vectors(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                let ip: Complex64 = vectors[i]
                    .iter()
                    .zip(&vectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                if (ip - Complex64::new(delta, 0.0)).norm() > MEASUREMENT_TOL {
                    return Err(Error::InvalidMeasurement(format!(
                        "basis is not orthonormal: <x{i}|x{j}> = {ip}"
                    )));
                }
            }
        }
        Ok(Self {
            dim,
            elements: Elements::Basis(vectors),
        })
    }

    /// POVM from its effects; each must be Hermitian and positive
    /// semidefinite, and together they must sum to the identity.
    pub fn povm(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let first = effects.first().ok_or(Error::EmptyInput)?;
        let dim = first.dim();
        let mut total = ComplexMatrix::zeros(dim);
        let mut ops = Vec::with_capacity(effects.len());
        for (i, m) in effects.into_iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            let op = HermitianOperator::new(m)?;
            let min_eig = spectral_decompose(&op)?
                .eigenvalues()
                .last()
                .copied()
                .unwrap_or(0.0);
            if min_eig < -MEASUREMENT_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "effect {i} is not positive semidefinite (min eigenvalue {min_eig:e})"
                )));
            }
            total = &total + op.matrix();
            ops.push(op);
        }
        let deviation = total.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > MEASUREMENT_TOL {
            return Err(Error::InvalidMeasurement(format!(
                "effects sum to identity only within {deviation:e}"
            )));
        }
        Ok(Self {
            dim,
            elements: Elements::Effects(ops),
        })
    }

    pub fn kind(&self) -> MeasurementKind {
        match self.elements {
            Elements::Basis(_) => MeasurementKind::Projective,
            Elements::Effects(_) => MeasurementKind::Povm,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcome_count(&self) -> usize {
        match &self.elements {
            Elements::Basis(b) => b.len(),
            Elements::Effects(e) => e.len(),
        }
    }

    /// Basis vectors of a projective measurement.
    pub fn basis(&self) -> Option<&[Vec<Complex64>]> {
        match &self.elements {
            Elements::Basis(b) => Some(b),
            Elements::Effects(_) => None,
        }
    }

    pub fn effect(&self, i: usize) -> Result<HermitianOperator> {
        let outcomes = self.outcome_count();
        if i >= outcomes {
            return Err(Error::IndexOutOfRange { index: i, outcomes });
        }
        Ok(match &self.elements {
            Elements::Basis(b) => HermitianOperator::projector(&b[i]),
            Elements::Effects(e) => e[i].clone(),
        })
    }

    /// The same measurement expressed through its rank-one effects.
    pub fn to_povm(&self) -> Self {
        let effects = (0..self.outcome_count())
            .map(|i| self.effect(i).expect("index in range"))
            .collect();
        Self {
            dim: self.dim,
            elements: Elements::Effects(effects),
        }
    }

    /// Born-rule probabilities in outcome order.
    pub fn probabilities(&self, state: &QuantumState) -> Result<Vec<f64>> {
        if state.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: state.dim(),
            });
        }
        let rho = state.density();
        Ok(match &self.elements {
            Elements::Basis(b) => b.iter().map(|x| rho.quadratic_form(x)).collect(),
            Elements::Effects(e) => e.iter().map(|eff| eff.expectation(rho)).collect(),
        })
    }

    /// Outcome probabilities sorted descending.
    pub fn outcome_distribution(&self, state: &QuantumState) -> Result<DistVector> {
        DistVector::sort_descending(&self.probabilities(state)?)
    }
}

/// Concatenated outcome probabilities of every measurement, unsorted.
pub fn direct_sum_probabilities(ms: &[Measurement], state: &QuantumState) -> Result<Vec<f64>> {
    if ms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::with_capacity(ms.iter().map(Measurement::outcome_count).sum());
    for m in ms {
        out.extend(m.probabilities(state)?);
    }
    Ok(out)
}

/// The direct-sum vector `χ = p⁽¹⁾ ⊕ … ⊕ p⁽ᴹ⁾`, sorted descending.
pub fn direct_sum_distribution(ms: &[Measurement], state: &QuantumState) -> Result<DistVector> {
    DistVector::sort_descending(&direct_sum_probabilities(ms, state)?)
}
