//! Reproducible random states.
//!
//! All sampling goes through [`ChaCha8Rng`]: `seed` selects the key via
//! `seed_from_u64` and the stream index selects the ChaCha stream, so
//! `(seed, stream)` pairs give independent, platform-stable sequences.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::state::{check_spectrum, QuantumState};
use crate::error::{Error, Result};
use crate::majorization::DistVector;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly (Haar) distributed unit vector.
pub fn haar_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random unitary: Gram–Schmidt QR of a complex Gaussian matrix.
/// Gram–Schmidt leaves `R` with a positive real diagonal, which is the
/// phase convention that makes `Q` Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for q in &columns {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(q).for_each(|(x, qi)| *x -= qi * proj);
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-8 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_columns(&columns).expect("square by construction")
}

pub fn random_pure_state_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<QuantumState> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    QuantumState::pure(&haar_vector(dim, rng))
}

/// Haar-random pure state of dimension `dim ≥ 2`, deterministic in `seed`.
pub fn random_pure_state(dim: usize, seed: u64) -> Result<QuantumState> {
    random_pure_state_with(dim, &mut stream_rng(seed, 0))
}

pub fn random_state_with_spectrum_with<R: Rng + ?Sized>(
    spectrum: &DistVector,
    rng: &mut R,
) -> Result<QuantumState> {
    check_spectrum(spectrum)?;
    if spectrum.len() < 2 {
        return Err(Error::InvalidSpectrum(format!(
            "need at least 2 eigenvalues, got {}",
            spectrum.len()
        )));
    }
    let u = haar_unitary(spectrum.len(), rng);
    QuantumState::from_spectrum(spectrum, &u)
}

/// `U diag(λ) U†` with Haar-random `U`, deterministic in `seed`.
pub fn random_state_with_spectrum(spectrum: &DistVector, seed: u64) -> Result<QuantumState> {
    random_state_with_spectrum_with(spectrum, &mut stream_rng(seed, 0))
}
